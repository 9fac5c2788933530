//! Mean and variance constants of `log |Aut|` for each tree model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aut::{aut_rooted, aut_unrooted};
use crate::enumerate::{enumerate_rooted_trees_with, enumerate_unrooted_trees_with, EnumerationCaps};
use crate::error::{Error, Result};
use crate::lnfact::ln_factorial;
use crate::model::Family;
use crate::offspring::OffspringDistribution;
use crate::series::family::ClassFamily;
use crate::series::partitions::{d_coeff, Cutoff};
use crate::series::polya::{find_rho_polya, solve_polya_weighted, DEFAULT_RHO_ORDER};
use crate::series::singularity::{locate_singularity, Singularity};
use crate::series::weights::critical_point;
use crate::series::WeightFunction;

pub const DEFAULT_LABELED_J_MAX: usize = 12;
pub const DEFAULT_SERIES_ORDER: usize = 80;
/// Reports whose error estimates exceed this are flagged.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimates {
    pub mu: f64,
    pub sigma2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub family: String,
    pub mu: f64,
    pub sigma2: f64,
    pub params: BTreeMap<String, f64>,
    pub error_estimates: ErrorEstimates,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

impl ConstantsReport {
    fn new(family: &str, mu: f64, sigma2: f64, errors: ErrorEstimates, params: BTreeMap<String, f64>) -> Self {
        let tolerance = DEFAULT_TOLERANCE;
        Self {
            family: family.to_string(),
            mu,
            sigma2: sigma2.max(0.0),
            params,
            error_estimates: errors,
            tolerance,
            within_tolerance: errors.mu.is_finite()
                && errors.sigma2.is_finite()
                && errors.mu <= tolerance
                && errors.sigma2 <= tolerance,
        }
    }

    /// Re-evaluates the tolerance flag against `tolerance`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.within_tolerance = self.error_estimates.mu <= tolerance && self.error_estimates.sigma2 <= tolerance;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn errors_between(fine: &Singularity, coarse: &Singularity) -> ErrorEstimates {
    ErrorEstimates {
        mu: (fine.mu - coarse.mu).abs(),
        sigma2: (fine.sigma2 - coarse.sigma2).abs(),
    }
}

fn singularity_params(s: &Singularity, params: &mut BTreeMap<String, f64>) {
    params.insert("rho".into(), s.rho);
    params.insert("tau".into(), s.tau);
}

/// `mu = sum_{j=2}^{J} d(j) R(e^-j, 1-j)` with `R(y, 1-j) = P(y, -j)`.
fn labeled_mu_sum(j_max: usize, order: usize) -> Result<f64> {
    let mut mu = 0.0;
    for j in 2..=j_max {
        let r = solve_polya_weighted(-(j as f64), order, None)?;
        mu += d_coeff(j) * r.eval((-(j as f64)).exp());
    }
    Ok(mu)
}

fn labeled_singularity(j_max: usize, order: usize) -> Result<Singularity> {
    let family = ClassFamily::labeled();
    let sol = family.solve(order)?;
    locate_singularity(&family, &sol, j_max, ((-1f64).exp(), 1.0))
}

/// Labeled trees (Poisson offspring). `mu` is the `d(j)` series; `sigma^2`
/// comes from the characteristic system of the `|Aut|`-tilted class series.
pub fn mu_sigma_labeled(j_max: usize, order: usize) -> Result<ConstantsReport> {
    if j_max < 2 || order < 2 {
        return Err(Error::Config("labeled constants need j_max >= 2 and order >= 2".into()));
    }
    let mu = labeled_mu_sum(j_max, order)?;
    // the terms decay geometrically in j, so two fewer terms bound the tail
    let j_coarse = (j_max - 2).max(2);
    let mu_coarse = labeled_mu_sum(j_coarse, order / 2)?;
    let fine = labeled_singularity(j_max, order)?;
    let coarse = labeled_singularity(j_coarse, order / 2)?;
    let mut errors = errors_between(&fine, &coarse);
    errors.mu = (mu - mu_coarse).abs();
    let mut params = BTreeMap::new();
    params.insert("j_max".into(), j_max as f64);
    params.insert("order".into(), order as f64);
    params.insert("mu_characteristic".into(), fine.mu);
    singularity_params(&fine, &mut params);
    Ok(ConstantsReport::new("labeled", mu, fine.sigma2, errors, params))
}

fn bounded_singularity(dist: &OffspringDistribution, order: usize) -> Result<Singularity> {
    let phi = dist.weight_polynomial().expect("checked by caller");
    let (tau, rho) = critical_point(&WeightFunction::Polynomial(phi.clone()))?;
    let family = ClassFamily::simply_generated(&phi);
    let sol = family.solve(order)?;
    locate_singularity(&family, &sol, phi.degree(), (rho, tau))
}

/// Conditioned Galton–Watson trees with bounded degrees. `b_max` is the
/// largest shape order entering the substituted class series.
pub fn mu_sigma_bounded_degree(dist: &OffspringDistribution, b_max: usize) -> Result<ConstantsReport> {
    let phi = dist
        .weight_polynomial()
        .ok_or_else(|| Error::Config(format!("{dist} has unbounded degrees")))?;
    if b_max < 1 {
        return Err(Error::Config("b_max must be at least 1".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("b_max".into(), b_max as f64);
    if phi.is_degenerate() {
        // Only paths: every automorphism group is trivial.
        let zero = ErrorEstimates { mu: 0.0, sigma2: 0.0 };
        return Ok(ConstantsReport::new(&dist.to_string(), 0.0, 0.0, zero, params));
    }
    let fine = bounded_singularity(dist, b_max)?;
    let coarse = bounded_singularity(dist, (b_max / 2).max(1))?;
    singularity_params(&fine, &mut params);
    Ok(ConstantsReport::new(
        &dist.to_string(),
        fine.mu,
        fine.sigma2,
        errors_between(&fine, &coarse),
        params,
    ))
}

fn polya_singularity(order: usize, rho: f64) -> Result<Singularity> {
    let family = ClassFamily::polya(0.0, Cutoff::Full);
    let sol = family.solve(order)?;
    locate_singularity(&family, &sol, order, (rho, 1.0))
}

/// Pólya trees, from the characteristic system of `P(x, t)` at `t = 0`.
pub fn mu_sigma_polya(order: usize) -> Result<ConstantsReport> {
    if order < 4 {
        return Err(Error::Config("Pólya constants need order >= 4".into()));
    }
    let rho = find_rho_polya(DEFAULT_RHO_ORDER)?.rho;
    let fine = polya_singularity(order, rho)?;
    let coarse = polya_singularity(order / 2, rho)?;
    let mut params = BTreeMap::new();
    params.insert("order".into(), order as f64);
    singularity_params(&fine, &mut params);
    Ok(ConstantsReport::new(
        "polya",
        fine.mu,
        fine.sigma2,
        errors_between(&fine, &coarse),
        params,
    ))
}

/// Constants for any named family at the given truncation order.
pub fn constants_for(family: &Family, order: usize) -> Result<ConstantsReport> {
    match family {
        Family::LabeledRooted | Family::LabeledUnrooted => mu_sigma_labeled(DEFAULT_LABELED_J_MAX, order),
        Family::PolyaRooted | Family::PolyaUnrooted => mu_sigma_polya(order),
        Family::FullBinary => mu_sigma_bounded_degree(&OffspringDistribution::FullBinary, order),
        Family::PrunedBinary => mu_sigma_bounded_degree(&OffspringDistribution::PrunedBinary, order),
        Family::Custom(d) => mu_sigma_bounded_degree(d, order),
        Family::Plane => Err(Error::Config("plane trees have unbounded degrees".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnrootedCheckRow {
    pub t: f64,
    pub max_abs: f64,
    pub max_rel: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnrootedCheck {
    pub n_max: usize,
    pub rows: Vec<UnrootedCheckRow>,
}

impl UnrootedCheck {
    pub fn max_discrepancy(&self) -> f64 {
        self.rows.iter().map(|r| r.max_abs).fold(0.0, f64::max)
    }
}

/// Coefficients of `P(x,t) - P(x,t)^2/2 + (2^t - 1/2) P(x^2, 2t)`.
pub fn unrooted_series(t: f64, n_max: usize) -> Result<Vec<f64>> {
    let p = solve_polya_weighted(t, n_max, None)?;
    let p2 = solve_polya_weighted(2.0 * t, n_max, None)?.substitute_power(2);
    let sq = p.mul(&p);
    let c = 2f64.powf(t) - 0.5;
    Ok((0..=n_max)
        .map(|n| p.coeff(n) - 0.5 * sq.coeff(n) + c * p2.coeff(n))
        .collect())
}

/// Compares the unrooted identity with `sum |Aut U|^t` over enumerated free
/// trees, for each `t` and each `1 <= n <= n_max`.
pub fn unrooted_gf_check(t_values: &[f64], n_max: usize) -> Result<UnrootedCheck> {
    let caps = EnumerationCaps::default();
    let logs: Vec<Vec<f64>> = (1..=n_max)
        .map(|n| {
            Ok(enumerate_unrooted_trees_with(n, &caps)?
                .iter()
                .map(|u| aut_unrooted(u).log_value)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for &t in t_values {
        let rhs = unrooted_series(t, n_max)?;
        let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
        for n in 1..=n_max {
            let lhs: f64 = logs[n - 1].iter().map(|l| (t * l).exp()).sum();
            let diff = (lhs - rhs[n]).abs();
            max_abs = max_abs.max(diff);
            max_rel = max_rel.max(diff / lhs.abs());
        }
        rows.push(UnrootedCheckRow { t, max_abs, max_rel });
    }
    Ok(UnrootedCheck { n_max, rows })
}

pub const ENUMERATION_CAP_POLYA: usize = 14;
pub const ENUMERATION_CAP_LABELED: usize = 12;
pub const ENUMERATION_CAP_BOUNDED: usize = 16;

/// Exact mean and variance of `log |Aut|` at order `n` by enumerating all
/// shapes with their exact probabilities.
pub fn mean_variance_by_enumeration(family: &Family, n: usize) -> Result<(f64, f64)> {
    let cap = match family {
        Family::PolyaRooted | Family::PolyaUnrooted => ENUMERATION_CAP_POLYA,
        Family::LabeledRooted | Family::LabeledUnrooted => ENUMERATION_CAP_LABELED,
        _ => ENUMERATION_CAP_BOUNDED,
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "enumeration moments",
            limit: cap,
            requested: n,
        });
    }
    let caps = EnumerationCaps {
        rooted: cap.max(16),
        unrooted: cap.max(14),
        ..EnumerationCaps::default()
    };
    // (log weight, log |Aut|) per shape
    let shapes: Vec<(f64, f64)> = match family {
        Family::PolyaRooted => enumerate_rooted_trees_with(n, None, &caps)?
            .iter()
            .map(|t| (0.0, aut_rooted(t).log_value))
            .collect(),
        Family::PolyaUnrooted => enumerate_unrooted_trees_with(n, &caps)?
            .iter()
            .map(|t| (0.0, aut_unrooted(t).log_value))
            .collect(),
        Family::LabeledRooted => enumerate_rooted_trees_with(n, None, &caps)?
            .iter()
            .map(|t| {
                let a = aut_rooted(t).log_value;
                (ln_factorial(n) - a, a)
            })
            .collect(),
        Family::LabeledUnrooted => enumerate_unrooted_trees_with(n, &caps)?
            .iter()
            .map(|t| {
                let a = aut_unrooted(t).log_value;
                (ln_factorial(n) - a, a)
            })
            .collect(),
        _ => {
            let dist = family.offspring().expect("Galton–Watson family");
            let weight_fn = dist.weight_function();
            let allowed: Option<Vec<usize>> = dist.finite_support();
            enumerate_rooted_trees_with(n, allowed.as_deref(), &caps)?
                .iter()
                .map(|t| {
                    let a = aut_rooted(t).log_value;
                    let mut lw = -a;
                    for v in 0..t.order() {
                        let d = t.out_degree(v);
                        lw += ln_factorial(d) + weight_fn.weight(d).ln();
                    }
                    (lw, a)
                })
                .collect()
        }
    };
    if shapes.is_empty() {
        return Err(Error::Unattainable {
            n,
            support: family
                .offspring()
                .and_then(|d| d.finite_support())
                .unwrap_or_default(),
        });
    }
    let top = shapes.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
    let (mut z, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for &(lw, a) in &shapes {
        let w = (lw - top).exp();
        z += w;
        m1 += w * a;
        m2 += w * a * a;
    }
    let mean = m1 / z;
    Ok((mean, (m2 / z - mean * mean).max(0.0)))
}
