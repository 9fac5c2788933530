use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Truncated power series `a_0 + a_1 x + ... + a_N x^N` with float
/// coefficients. Binary operations truncate to the smaller order.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least a constant term");
        Self { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Self::new(vec![0.0; order + 1])
    }

    /// The series `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `x^n`; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, 0.0);
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::new((0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![0.0; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::NonZeroConstant(self.coeffs[0]));
        }
        let n = self.order();
        let a = &self.coeffs;
        let mut f = vec![0.0; n + 1];
        f[0] = 1.0;
        // f' = a' f, coefficientwise.
        for m in 1..=n {
            let s: f64 = (1..=m).map(|k| k as f64 * a[k] * f[m - k]).sum();
            f[m] = s / m as f64;
        }
        Ok(Self::new(f))
    }

    /// `log` of a series with positive constant term.
    pub fn log(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0 <= 0.0 || !a0.is_finite() {
            return Err(Error::InvalidWeights(format!("log needs a positive constant term, got {a0}")));
        }
        let a: Vec<f64> = self.coeffs.iter().map(|c| c / a0).collect();
        Ok(Self::new(log_one_plus(&a, self.order())).with_constant(a0.ln()))
    }

    fn with_constant(mut self, c: f64) -> Self {
        self.coeffs[0] = c;
        self
    }

    /// Maps `a_k x^k` to `a_k x^(jk)`, keeping the truncation order.
    pub fn substitute_power(&self, j: usize) -> Self {
        assert!(j >= 1);
        let n = self.order();
        let mut out = vec![0.0; n + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if j * k > n {
                break;
            }
            out[j * k] = a;
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zeros(0);
        }
        Self::new((1..=self.order()).map(|k| k as f64 * self.coeffs[k]).collect())
    }

    /// Value at `x` with compensated (Neumaier) summation of the terms.
    pub fn eval(&self, x: f64) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut p = 1.0f64;
        for &a in &self.coeffs {
            let term = a * p;
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            p *= x;
            if p == 0.0 {
                break;
            }
        }
        sum + comp
    }

    /// CSV with header `n,coefficient`, full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, a) in self.coeffs.iter().enumerate() {
            writeln!(out, "{n},{a:e}").expect("writing to a String cannot fail");
        }
        out
    }
}

/// Coefficients of `log(a)` where `a_0 = 1`, through `order`.
pub(crate) fn log_one_plus(a: &[f64], order: usize) -> Vec<f64> {
    let at = |k: usize| a.get(k).copied().unwrap_or(0.0);
    let mut b = vec![0.0; order + 1];
    for n in 1..=order {
        let s: f64 = (1..n).map(|k| k as f64 * b[k] * at(n - k)).sum();
        b[n] = at(n) - s / n as f64;
    }
    b
}

/// Truncated power series with exact nonnegative integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigUint>,
}

impl ExactSeries {
    pub fn new(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigUint {
        &self.coeffs[n]
    }

    pub fn to_f64(&self) -> PowerSeries {
        PowerSeries::new(
            self.coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, a) in self.coeffs.iter().enumerate() {
            writeln!(out, "{n},{a}").expect("writing to a String cannot fail");
        }
        out
    }
}
