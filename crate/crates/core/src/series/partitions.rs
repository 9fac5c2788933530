//! The coefficients `c(j,t)`, `c_N(j,t)` and `d(j)`.
//!
//! `c(j,t)/j` is the coefficient of `y^j` in `log(sum_n n!^t y^n)`; expanding
//! the logarithm gives the signed sum over integer partitions of `j`. The
//! production path uses the log-series recursion, which is stable for every
//! `j`; the partition sum is kept as an independent oracle.

use crate::error::{Error, Result};
use crate::lnfact::ln_factorial;
use crate::series::power::log_one_plus;

/// Largest `j` accepted by the partition-sum oracle.
pub const PARTITION_CAP: usize = 60;

/// Which factorial powers `n!^t` are kept in the generating sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cutoff {
    /// All of them.
    Full,
    /// Only `n <= N`; larger `n` contribute `1`.
    AtMost(usize),
    /// Only `n > N`; smaller `n` contribute `1`.
    Above(usize),
}

impl Cutoff {
    /// Whether `ln(n!)` counts towards the functional for multiplicity `n`.
    pub fn keeps(self, n: usize) -> bool {
        match self {
            Cutoff::Full => true,
            Cutoff::AtMost(cap) => n <= cap,
            Cutoff::Above(cap) => n > cap,
        }
    }

    /// The toll contribution `ln(n!)` or zero.
    pub fn toll(self, n: usize) -> f64 {
        if self.keeps(n) {
            ln_factorial(n)
        } else {
            0.0
        }
    }
}

/// `c(j,t)` (or its cutoff variant) for `j = 0..=max_j`; entry 0 is zero.
pub fn c_series(t: f64, max_j: usize, cutoff: Cutoff) -> Vec<f64> {
    let a: Vec<f64> = (0..=max_j).map(|n| (t * cutoff.toll(n)).exp()).collect();
    let b = log_one_plus(&a, max_j);
    b.iter().enumerate().map(|(j, bj)| j as f64 * bj).collect()
}

pub fn c_coeff(j: usize, t: f64) -> f64 {
    assert!(j >= 1);
    c_series(t, j, Cutoff::Full)[j]
}

/// `c_N(j,t)`: `c(j,t)` with `n!^t` replaced by `1` for `n > N`.
pub fn cn_coeff(j: usize, t: f64, n: usize) -> f64 {
    assert!(j >= 1);
    c_series(t, j, Cutoff::AtMost(n))[j]
}

/// `d(j) = (1/j!) sum_{m=1}^{j} (-1)^(j-m) binom(j-1, m-1) ln m`, the
/// `t`-derivative of `c(j,t)/j` at `t = -1`.
pub fn d_coeff(j: usize) -> f64 {
    assert!(j >= 1);
    let mut binom = 1.0f64;
    let mut sum = 0.0f64;
    for m in 1..=j {
        if m > 1 {
            binom = binom * (j - m + 1) as f64 / (m - 1) as f64;
        }
        let sign = if (j - m).is_multiple_of(2) { 1.0 } else { -1.0 };
        sum += sign * binom * (m as f64).ln();
    }
    sum * (-ln_factorial(j)).exp()
}

/// `c(j,t)` evaluated literally as the signed sum over partitions of `j`.
pub fn c_partition_sum(j: usize, t: f64, cutoff: Cutoff) -> Result<f64> {
    if j == 0 {
        return Ok(0.0);
    }
    if j > PARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "partition sum",
            limit: PARTITION_CAP,
            requested: j,
        });
    }
    let mut acc = Neumaier::default();
    let mut mult = vec![0usize; j + 1];
    partitions(j, j, &mut mult, &mut |mult| {
        let parts: usize = mult.iter().sum();
        let mut log_term = ln_factorial(parts);
        for (n, &m) in mult.iter().enumerate().skip(1) {
            if m > 0 {
                log_term += t * m as f64 * cutoff.toll(n) - ln_factorial(m);
            }
        }
        let sign = if parts % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * log_term.exp() / parts as f64);
    });
    Ok(j as f64 * acc.total())
}

/// Visits every partition of `remaining` into parts `<= largest`, as a
/// multiplicity vector.
fn partitions(remaining: usize, largest: usize, mult: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    if remaining == 0 {
        visit(mult);
        return;
    }
    for part in (1..=largest.min(remaining)).rev() {
        mult[part] += 1;
        partitions(remaining - part, part, mult, visit);
        mult[part] -= 1;
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
