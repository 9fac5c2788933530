//! Summary statistics and the goodness-of-fit tests used by the experiments.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Sample moments with standard errors of the mean and of the variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub mean_se: f64,
    /// Large-sample standard error `sqrt((m4 - s^4) / N)`.
    pub variance_se: f64,
}

pub fn moments(xs: &[f64]) -> Moments {
    let n = xs.len();
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let (mut m2, mut m4) = (0.0, 0.0);
    for &x in xs {
        let d2 = (x - mean) * (x - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    let variance = if n > 1 { m2 / (nf - 1.0) } else { 0.0 };
    let m4 = m4 / nf;
    let pop_var = m2 / nf;
    Moments {
        count: n,
        mean,
        variance,
        mean_se: (variance / nf).sqrt(),
        variance_se: ((m4 - pop_var * pop_var).max(0.0) / nf).sqrt(),
    }
}

/// Straight-line fit `y = intercept + slope x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
}

/// Weighted least squares with known standard errors on `y`. The slope error
/// propagates those errors; with fewer than three points it is the only
/// meaningful estimate.
pub fn weighted_line_fit(x: &[f64], y: &[f64], y_se: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() || x.len() != y_se.len() || x.len() < 2 {
        return Err(Error::Config("line fit needs at least two points".into()));
    }
    let w: Vec<f64> = y_se.iter().map(|s| 1.0 / (s * s).max(f64::MIN_POSITIVE)).collect();
    let sw: f64 = w.iter().sum();
    let xm = x.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let ym = y.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..x.len() {
        sxx += w[i] * (x[i] - xm) * (x[i] - xm);
        sxy += w[i] * (x[i] - xm) * (y[i] - ym);
    }
    if sxx <= 0.0 {
        return Err(Error::Config("line fit needs two distinct x values".into()));
    }
    let slope = sxy / sxx;
    Ok(LineFit { slope, intercept: ym - slope * xm, slope_se: (1.0 / sxx).sqrt() })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AndersonDarling {
    pub statistic: f64,
    /// `A^2 (1 + 0.75/n + 2.25/n^2)`, the small-sample correction for
    /// estimated mean and variance.
    pub adjusted: f64,
    pub p_value: f64,
}

/// Anderson–Darling test of normality with mean and variance estimated from
/// the sample. The p-value uses the D'Agostino–Stephens approximation.
pub fn anderson_darling_normal(xs: &[f64]) -> Result<AndersonDarling> {
    let n = xs.len();
    if n < 8 {
        return Err(Error::Config("Anderson–Darling needs at least 8 values".into()));
    }
    let m = moments(xs);
    if m.variance <= 0.0 {
        return Err(Error::Config("Anderson–Darling needs a non-constant sample".into()));
    }
    let sd = m.variance.sqrt();
    let mut z: Vec<f64> = xs.iter().map(|x| (x - m.mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let normal = Normal::standard();
    let nf = n as f64;
    let mut s = 0.0;
    for i in 0..n {
        let lo = normal.cdf(z[i]).max(1e-300).ln();
        let hi = normal.sf(z[n - 1 - i]).max(1e-300).ln();
        s += (2 * i + 1) as f64 * (lo + hi);
    }
    let statistic = -nf - s / nf;
    let a = statistic * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let p = if a >= 0.6 {
        (1.2937 - 5.709 * a + 0.0186 * a * a).exp()
    } else if a >= 0.34 {
        (0.9177 - 4.279 * a - 1.38 * a * a).exp()
    } else if a >= 0.2 {
        1.0 - (-8.318 + 42.796 * a - 59.938 * a * a).exp()
    } else {
        1.0 - (-13.436 + 101.14 * a - 223.73 * a * a).exp()
    };
    Ok(AndersonDarling { statistic, adjusted: a, p_value: p.clamp(0.0, 1.0) })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson's test of observed counts against cell probabilities.
pub fn chi_square_test(observed: &[u64], probabilities: &[f64]) -> Result<ChiSquareTest> {
    if observed.len() != probabilities.len() || observed.len() < 2 {
        return Err(Error::Config("chi-square needs matching cells, at least two".into()));
    }
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    for (&o, &p) in observed.iter().zip(probabilities) {
        let e = p * total as f64;
        if e <= 0.0 {
            if o > 0 {
                return Ok(ChiSquareTest { statistic: f64::INFINITY, dof: observed.len() - 1, p_value: 0.0 });
            }
            continue;
        }
        statistic += (o as f64 - e).powi(2) / e;
    }
    let dof = observed.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Config(e.to_string()))?;
    Ok(ChiSquareTest { statistic, dof, p_value: dist.sf(statistic) })
}
