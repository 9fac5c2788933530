//! Weight generating functions of simply generated trees: `T = x Phi(T)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::power::PowerSeries;

/// `Phi(z) = w_0 + w_1 z + ... + w_k z^k` with nonnegative weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightPolynomial {
    weights: Vec<f64>,
}

impl WeightPolynomial {
    /// Requires `w_0 > 0` and finite nonnegative weights. Trailing zeros
    /// are dropped.
    pub fn new(mut weights: Vec<f64>) -> Result<Self> {
        while weights.len() > 1 && weights.last() == Some(&0.0) {
            weights.pop();
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidWeights(format!("weights must be finite and >= 0: {weights:?}")));
        }
        if weights.first().is_none_or(|&w| w <= 0.0) {
            return Err(Error::InvalidWeights("w_0 must be positive".into()));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    /// Child counts with positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&k| self.weights[k] > 0.0).collect()
    }

    /// True when no vertex can have two or more children.
    pub fn is_degenerate(&self) -> bool {
        self.degree() <= 1
    }
}

/// `Phi` as a polynomial or one of the entire/meromorphic presets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum WeightFunction {
    Polynomial(WeightPolynomial),
    /// `e^z`: labeled trees.
    Exponential,
    /// `1/(1 - z)`: plane trees.
    Geometric,
}

impl WeightFunction {
    /// Radius of convergence of `Phi`.
    pub fn radius(&self) -> f64 {
        match self {
            WeightFunction::Geometric => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// `(Phi(z), Phi'(z), Phi''(z))`.
    pub fn eval(&self, z: f64) -> (f64, f64, f64) {
        match self {
            WeightFunction::Polynomial(p) => {
                let (mut f, mut f1, mut f2) = (0.0, 0.0, 0.0);
                for &w in p.weights.iter().rev() {
                    f2 = f2 * z + 2.0 * f1;
                    f1 = f1 * z + f;
                    f = f * z + w;
                }
                (f, f1, f2)
            }
            WeightFunction::Exponential => {
                let e = z.exp();
                (e, e, e)
            }
            WeightFunction::Geometric => {
                let g = 1.0 / (1.0 - z);
                (g, g * g, 2.0 * g * g * g)
            }
        }
    }

    /// Weight `w_k`.
    pub fn weight(&self, k: usize) -> f64 {
        match self {
            WeightFunction::Polynomial(p) => p.weights.get(k).copied().unwrap_or(0.0),
            WeightFunction::Exponential => (-crate::lnfact::ln_factorial(k)).exp(),
            WeightFunction::Geometric => 1.0,
        }
    }
}

/// Solves `T(x) = x Phi(T(x))` through order `order` by coefficient
/// recursion: `t_n = [x^(n-1)] Phi(T)` only involves `t_1..t_(n-1)`.
pub fn solve_simply_generated(phi: &WeightFunction, order: usize) -> PowerSeries {
    let mut t = vec![0.0; order + 1];
    if order == 0 {
        return PowerSeries::new(t);
    }
    match phi {
        WeightFunction::Exponential => {
            let mut f = vec![0.0; order + 1];
            f[0] = 1.0;
            for n in 1..=order {
                t[n] = f[n - 1];
                let s: f64 = (1..=n).map(|k| k as f64 * t[k] * f[n - k]).sum();
                f[n] = s / n as f64;
            }
        }
        WeightFunction::Geometric => {
            let mut g = vec![0.0; order + 1];
            g[0] = 1.0;
            for n in 1..=order {
                t[n] = g[n - 1];
                g[n] = (1..=n).map(|i| t[i] * g[n - i]).sum();
            }
        }
        WeightFunction::Polynomial(p) => {
            let w = p.weights();
            let d = p.degree();
            // pw[k][m] = [x^m] T^k
            let mut pw = vec![vec![0.0; order + 1]; d + 1];
            pw[0][0] = 1.0;
            for n in 1..=order {
                t[n] = (0..=d).map(|k| w[k] * pw[k][n - 1]).sum();
                for k in 1..=d {
                    pw[k][n] = (1..=n).map(|i| t[i] * pw[k - 1][n - i]).sum();
                }
            }
        }
    }
    PowerSeries::new(t)
}

/// `(tau, rho)` with `Phi(tau) = tau Phi'(tau)` and `rho = tau / Phi(tau)`.
pub fn critical_point(phi: &WeightFunction) -> Result<(f64, f64)> {
    let h = |z: f64| {
        let (f, f1, _) = phi.eval(z);
        f - z * f1
    };
    let radius = phi.radius();
    let mut lo = 0.0;
    let mut hi = if radius.is_finite() { radius / 2.0 } else { 1.0 };
    let mut found = false;
    for _ in 0..200 {
        if h(hi) < 0.0 {
            found = true;
            break;
        }
        lo = hi;
        hi = if radius.is_finite() {
            (hi + radius) / 2.0
        } else {
            hi * 2.0
        };
        if !hi.is_finite() || (radius.is_finite() && hi >= radius) {
            break;
        }
    }
    if !found {
        return Err(Error::Bracket(format!(
            "Phi(z) - z Phi'(z) keeps its sign up to z = {lo}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let tau = if h(hi).abs() < h(lo).abs() { hi } else { lo };
    let rho = tau / phi.eval(tau).0;
    Ok((tau, rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(w: &[f64]) -> WeightFunction {
        WeightFunction::Polynomial(WeightPolynomial::new(w.to_vec()).unwrap())
    }

    #[test]
    fn cayley_coefficients() {
        let t = solve_simply_generated(&WeightFunction::Exponential, 4);
        let expected = [0.0, 1.0, 1.0, 1.5, 8.0 / 3.0];
        for (a, b) in t.coeffs().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn full_binary_and_paths() {
        let t = solve_simply_generated(&poly(&[1.0, 0.0, 1.0]), 7);
        assert_eq!(t.coeffs(), &[0.0, 1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0]);
        let t = solve_simply_generated(&poly(&[1.0, 1.0]), 6);
        assert_eq!(&t.coeffs()[1..], &[1.0; 6]);
        let t = solve_simply_generated(&WeightFunction::Geometric, 6);
        assert_eq!(&t.coeffs()[1..], &[1.0, 1.0, 2.0, 5.0, 14.0, 42.0]);
    }

    #[test]
    fn critical_points() {
        let (tau, rho) = critical_point(&poly(&[1.0, 0.0, 1.0])).unwrap();
        assert!((tau - 1.0).abs() < 1e-12 && (rho - 0.5).abs() < 1e-12);
        let (tau, rho) = critical_point(&poly(&[1.0, 2.0, 1.0])).unwrap();
        assert!((tau - 1.0).abs() < 1e-12 && (rho - 0.25).abs() < 1e-12);
        let (tau, rho) = critical_point(&WeightFunction::Exponential).unwrap();
        assert!((tau - 1.0).abs() < 1e-12 && (rho - (-1f64).exp()).abs() < 1e-12);
        let (tau, rho) = critical_point(&WeightFunction::Geometric).unwrap();
        assert!((tau - 0.5).abs() < 1e-12 && (rho - 0.25).abs() < 1e-12);
        assert!(matches!(critical_point(&poly(&[1.0, 1.0])), Err(Error::Bracket(_))));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightPolynomial::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(WeightPolynomial::new(vec![1.0, -1.0, 1.0]).is_err());
        assert_eq!(WeightPolynomial::new(vec![1.0, 0.0, 1.0, 0.0]).unwrap().degree(), 2);
    }
}
