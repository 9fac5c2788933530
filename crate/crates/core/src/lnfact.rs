//! Natural logarithms of factorials.

use std::sync::OnceLock;

use statrs::function::gamma::ln_gamma;

/// Largest argument served from the cached table.
pub const TABLE_LIMIT: usize = 1_000_000;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(TABLE_LIMIT + 1);
        out.push(0.0);
        // Kahan summation keeps the running sum accurate to a few ulps.
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for k in 1..=TABLE_LIMIT {
            let y = (k as f64).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            out.push(sum);
        }
        out
    })
}

/// `ln(n!)`.
pub fn ln_factorial(n: usize) -> f64 {
    if n <= 20 {
        return (FACTORIALS[n] as f64).ln();
    }
    if n <= TABLE_LIMIT {
        table()[n]
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

const FACTORIALS: [u64; 21] = {
    let mut out = [1u64; 21];
    let mut k = 1;
    while k <= 20 {
        out[k] = out[k - 1] * k as u64;
        k += 1;
    }
    out
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(4) - 24f64.ln()).abs() < 1e-15);
        assert!((ln_factorial(20) - 2_432_902_008_176_640_000f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn table_matches_log_gamma() {
        for &n in &[21usize, 100, 1000, 54_321, TABLE_LIMIT] {
            let exact = ln_gamma(n as f64 + 1.0);
            let rel = (ln_factorial(n) - exact).abs() / exact;
            assert!(rel < 1e-12, "n = {n}: rel {rel}");
        }
        let n = TABLE_LIMIT + 7;
        assert_eq!(ln_factorial(n), ln_gamma(n as f64 + 1.0));
    }
}
