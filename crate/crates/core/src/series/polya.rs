//! Pólya tree counts, the weighted Pólya series and its singularity.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::dd::Dd;
use crate::series::family::ClassFamily;
use crate::series::partitions::Cutoff;
use crate::series::power::{ExactSeries, PowerSeries};

/// Default truncation order for locating the Pólya singularity.
pub const DEFAULT_RHO_ORDER: usize = 120;

/// Exact counts `r_n` of rooted and `u_n` of free unlabeled trees, `n <= order`.
pub fn polya_counts(order: usize) -> (ExactSeries, ExactSeries) {
    let r = rooted_counts(order);
    let mut u = vec![BigUint::zero(); order + 1];
    for n in 1..=order {
        // 2 u_n = 2 r_n - sum_{k=1}^{n-1} r_k r_{n-k} + [n even] r_{n/2}
        let mut twice = BigInt::from(r[n].clone()) * 2u32;
        for k in 1..n {
            twice -= BigInt::from(&r[k] * &r[n - k]);
        }
        if n % 2 == 0 {
            twice += BigInt::from(r[n / 2].clone());
        }
        let (_, mag) = (twice / 2u32).into_parts();
        u[n] = mag;
    }
    (ExactSeries::new(r), ExactSeries::new(u))
}

/// `r_0..=r_order` by the standard recurrence
/// `n r_(n+1) = sum_{k=1}^{n} (sum_{d | k} d r_d) r_(n-k+1)`.
pub(crate) fn rooted_counts(order: usize) -> Vec<BigUint> {
    let mut r = vec![BigUint::zero(); order + 1];
    if order == 0 {
        return r;
    }
    r[1] = BigUint::one();
    let mut s = vec![BigUint::zero(); order + 1];
    for n in 1..order {
        s[n] = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| &r[d] * d)
            .sum();
        let total: BigUint = (1..=n).map(|k| &s[k] * &r[n - k + 1]).sum();
        r[n + 1] = total / n;
    }
    r
}

/// `p_n(t) = sum_{|T| = n} |Aut T|^t` over rooted unlabeled trees, through
/// order `order`. With a cutoff `N`, only branch multiplicities `<= N`
/// contribute to the automorphism weight.
pub fn solve_polya_weighted(t: f64, order: usize, cutoff: Option<usize>) -> Result<PowerSeries> {
    let toll = cutoff.map_or(Cutoff::Full, Cutoff::AtMost);
    Ok(ClassFamily::polya(t, toll).solve(order)?.values())
}

/// Location of the dominant singularity of the rooted Pólya series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoEstimate {
    pub rho: f64,
    /// `P(rho)` evaluated through the functional equation.
    pub p_at_rho: f64,
    /// Change of `rho` when the truncation order is halved.
    pub error_estimate: f64,
    pub order: usize,
}

/// Counts as double-doubles, for evaluating `P` away from its singularity.
struct CountTable {
    r: Vec<Dd>,
}

impl CountTable {
    fn new(order: usize) -> Self {
        let r = rooted_counts(order)
            .iter()
            .map(|c| Dd::from_bigint(&BigInt::from(c.clone())))
            .collect();
        Self { r }
    }

    /// `P(y)` by direct summation; only used for `y <= rho^2`, where the
    /// terms decay geometrically.
    fn direct(&self, y: Dd) -> Dd {
        let mut sum = Dd::ZERO;
        let mut p = Dd::ONE;
        for c in &self.r[1..] {
            p = p * y;
            let term = *c * p;
            sum = sum + term;
            if term.hi < 1e-34 * sum.hi {
                break;
            }
        }
        sum
    }

    /// `kappa(x) = e x exp(sum_{j >= 2} P(x^j) / j)`. Writing `P = y`,
    /// the functional equation reads `y e^(1-y) = kappa(x)`.
    fn kappa(&self, x: Dd) -> Dd {
        let mut s = Dd::ZERO;
        let mut xj = x;
        for j in 2.. {
            xj = xj * x;
            if xj.hi < 1e-36 {
                break;
            }
            s = s + self.direct(xj).div_f64(j as f64);
        }
        Dd::ONE.exp() * x * s.exp()
    }
}

/// Smallest `y >= 0` with `y e^(1-y) = kappa`, for `kappa <= 1`.
fn invert_branch(kappa: Dd) -> Dd {
    if kappa.hi >= 1.0 {
        return Dd::ONE;
    }
    let (mut lo, mut hi) = (Dd::ZERO, Dd::ONE);
    for _ in 0..120 {
        let mid = (lo + hi).half();
        let u = mid * (Dd::ONE - mid).exp();
        if u.hi < kappa.hi || (u.hi == kappa.hi && u.lo < kappa.lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi).half()
}

fn rho_at_order(order: usize) -> Result<(Dd, Dd)> {
    let table = CountTable::new(order);
    let h = |x: Dd| table.kappa(x) - Dd::ONE;
    let (mut lo, mut hi) = (Dd::from_f64(0.25), Dd::from_f64(0.40));
    if h(lo).hi >= 0.0 || h(hi).hi <= 0.0 {
        return Err(Error::Bracket("P(x) = 1 not bracketed by [0.25, 0.40]".into()));
    }
    for _ in 0..120 {
        let mid = (lo + hi).half();
        if h(mid).hi < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = lo;
    Ok((rho, invert_branch(table.kappa(rho))))
}

/// The radius `rho_p` of `P(x) = sum r_n x^n`, characterized by `P(rho_p) = 1`.
///
/// `rho_p` is the branch point of `y = x B(x) e^y` with
/// `B(x) = exp(sum_{j>=2} P(x^j)/j)`, i.e. the root of `e x B(x) = 1`. Only
/// `P(x^j)` for `j >= 2` is summed from the counts, and those sums converge
/// geometrically. Computed in double-double arithmetic so that `P(rho_p)`,
/// which reacts to the square root of an error in `rho_p`, stays accurate.
pub fn find_rho_polya(order: usize) -> Result<RhoEstimate> {
    if order < 4 {
        return Err(Error::Config(format!("order {order} too small to locate rho")));
    }
    let (rho, p) = rho_at_order(order)?;
    let (coarse, _) = rho_at_order(order / 2)?;
    Ok(RhoEstimate {
        rho: rho.to_f64(),
        p_at_rho: p.to_f64(),
        error_estimate: (rho - coarse).to_f64().abs(),
        order,
    })
}

/// `P(x)` for `0 <= x <= rho_p` through the functional equation.
pub fn polya_eval(x: f64, order: usize) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Config(format!("P(x) requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let table = CountTable::new(order);
    let kappa = table.kappa(Dd::from_f64(x));
    if kappa.hi > 1.0 + 1e-12 {
        return Err(Error::Config(format!("x = {x} lies beyond the radius of convergence")));
    }
    Ok(invert_branch(kappa).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_u64(s: &ExactSeries) -> Vec<u64> {
        s.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn counts() {
        let (r, u) = polya_counts(10);
        assert_eq!(as_u64(&r), vec![0, 1, 1, 2, 4, 9, 20, 48, 115, 286, 719]);
        assert_eq!(as_u64(&u), vec![0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn weighted_examples() {
        let p = solve_polya_weighted(0.0, 7, None).unwrap();
        assert_eq!(p.coeffs(), &[0.0, 1.0, 1.0, 2.0, 4.0, 9.0, 20.0, 48.0]);
        for &t in &[-2.0, -0.5, 0.7] {
            let p = solve_polya_weighted(t, 3, None).unwrap();
            assert!((p.coeff(3) - (1.0 + 2f64.powf(t))).abs() < 1e-14);
        }
        assert!((solve_polya_weighted(-2.0, 3, None).unwrap().coeff(3) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn rho_and_p_at_rho() {
        let est = find_rho_polya(DEFAULT_RHO_ORDER).unwrap();
        assert!((est.rho - 0.33832).abs() < 5e-5);
        assert!((est.p_at_rho - 1.0).abs() < 1e-8);
        assert!(est.error_estimate < 1e-20);
    }

    #[test]
    fn eval_is_monotone_and_matches_series() {
        let (r, _) = polya_counts(80);
        let direct = r.to_f64().eval(0.2);
        assert!((polya_eval(0.2, 80).unwrap() - direct).abs() < 1e-14);
        let mut prev = 0.0;
        for k in 1..=30 {
            let x = 0.3383 * k as f64 / 30.0;
            let v = polya_eval(x, 80).unwrap();
            assert!(v > prev);
            prev = v;
        }
        assert!(polya_eval(0.35, 80).is_err());
    }
}
