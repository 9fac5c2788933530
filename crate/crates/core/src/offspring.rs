//! Offspring distributions of Galton–Watson trees and their weight
//! generating functions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lnfact::ln_factorial;
use crate::series::weights::{critical_point, WeightFunction, WeightPolynomial};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OffspringDistribution {
    /// Poisson(1): uniformly random labeled rooted trees.
    Poisson,
    /// Geometric(1/2): uniformly random plane trees.
    Geometric,
    /// `p_0 = p_2 = 1/2`: full binary trees.
    FullBinary,
    /// `p_0, p_1, p_2 = 1/4, 1/2, 1/4`: binary trees where each child is a
    /// left or right child.
    PrunedBinary,
    /// Arbitrary finite weights `w_k`; tilted to criticality when sampled.
    Custom(WeightPolynomial),
}

impl OffspringDistribution {
    pub fn custom(weights: Vec<f64>) -> Result<Self> {
        Ok(Self::Custom(WeightPolynomial::new(weights)?))
    }

    pub fn weight_function(&self) -> WeightFunction {
        match self {
            Self::Poisson => WeightFunction::Exponential,
            Self::Geometric => WeightFunction::Geometric,
            _ => WeightFunction::Polynomial(self.weight_polynomial().expect("finite support")),
        }
    }

    /// Weights for finite supports, `None` for the unbounded presets.
    pub fn weight_polynomial(&self) -> Option<WeightPolynomial> {
        let w = match self {
            Self::Poisson | Self::Geometric => return None,
            Self::FullBinary => vec![1.0, 0.0, 1.0],
            Self::PrunedBinary => vec![1.0, 2.0, 1.0],
            Self::Custom(p) => return Some(p.clone()),
        };
        Some(WeightPolynomial::new(w).expect("preset weights are valid"))
    }

    /// Child counts with positive probability, if finite.
    pub fn finite_support(&self) -> Option<Vec<usize>> {
        self.weight_polynomial().map(|p| p.support())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.weight_polynomial().map(|p| p.degree())
    }

    /// Critical tilt `tau` with `Phi(tau) = tau Phi'(tau)`.
    pub fn tau(&self) -> Result<f64> {
        Ok(critical_point(&self.weight_function())?.0)
    }

    /// `p_k = w_k tau^k / Phi(tau)` for `k <= max_k` (the law has mean 1).
    pub fn probabilities(&self, max_k: usize) -> Result<Vec<f64>> {
        Ok(match self {
            Self::Poisson => (0..=max_k).map(|k| (-1.0 - ln_factorial(k)).exp()).collect(),
            Self::Geometric => (0..=max_k).map(|k| 0.5f64.powi(k as i32 + 1)).collect(),
            _ => {
                let phi = self.weight_function();
                let tau = self.tau()?;
                let total = phi.eval(tau).0;
                (0..=max_k)
                    .map(|k| phi.weight(k) * tau.powi(k as i32) / total)
                    .collect()
            }
        })
    }

    /// `p_0` of the critical law.
    pub fn p0(&self) -> Result<f64> {
        Ok(self.probabilities(0)?[0])
    }

    /// Rejects distributions without a vertex of two or more children.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.weight_polynomial() {
            if p.is_degenerate() {
                return Err(Error::InvalidWeights(
                    "support within {0, 1}: every tree is a path".into(),
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for OffspringDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Poisson => f.write_str("poisson"),
            Self::Geometric => f.write_str("geometric"),
            Self::FullBinary => f.write_str("full-binary"),
            Self::PrunedBinary => f.write_str("pruned-binary"),
            Self::Custom(p) => write!(f, "custom{:?}", p.weights()),
        }
    }
}
