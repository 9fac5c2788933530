//! Monte Carlo check of the central limit behaviour of `log |Aut|`.
//!
//! Sampling and aggregation are separate passes: [`collect_samples`] draws
//! raw values (optionally streamed to CSV) and [`summarize`] fits them.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::aut::{log_aut_rooted, log_aut_unrooted};
use crate::constants::constants_for;
use crate::error::{Error, Result};
use crate::model::Family;
use crate::par::{try_map_indexed, Execution};
use crate::rng::RandomStream;
use crate::sample::{sample_labeled_rooted, sample_labeled_tree, GwSampler, PolyaTable};
use crate::stats::{anderson_darling_normal, moments, weighted_line_fit, AndersonDarling, LineFit, Moments};

/// One in this many labeled unrooted samples is audited.
pub const AUDIT_STRIDE: usize = 100;
pub const NORMALITY_ALPHA: f64 = 0.01;
pub const MEAN_SLOPE_SIGMAS: f64 = 3.0;
pub const VARIANCE_SLOPE_REL_TOL: f64 = 0.10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Rayon worker count; `None` uses every core.
    pub workers: Option<usize>,
    pub execution: Execution,
    /// CSV destination for the raw values.
    pub output: Option<PathBuf>,
    /// Truncation order for reference constants not in the published table.
    pub series_order: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(family: Family, sizes: Vec<usize>, samples: usize, seed: u64) -> Self {
        Self {
            family,
            sizes,
            samples,
            seed,
            workers: None,
            execution: Execution::default(),
            output: None,
            series_order: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(Error::Config("sizes must be a nonempty list of positive orders".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.family.validate()?;
        if let Some(support) = self.family.offspring().and_then(|d| d.finite_support()) {
            if let Some(&n) = self.sizes.iter().find(|&&n| !self.family.attainable(n)) {
                return Err(Error::Unattainable { n, support });
            }
        }
        Ok(())
    }
}

/// Stream index of sample `i` at order `n`, independent of scheduling.
pub fn substream_index(n: usize, i: usize) -> u64 {
    ((n as u64) << 32) | i as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub n: usize,
    pub sample_index: usize,
    pub log_aut: f64,
    /// `log |Aut U| - log |Aut U_v|` for an audited unrooted labeled sample.
    pub audit_gap: Option<f64>,
}

enum Sampler {
    Labeled { rooted: bool },
    Gw(BTreeMap<usize, GwSampler>),
    Polya { table: PolyaTable, rooted: bool },
}

impl Sampler {
    fn new(family: &Family, sizes: &[usize]) -> Result<Self> {
        Ok(match family {
            Family::LabeledRooted => Sampler::Labeled { rooted: true },
            Family::LabeledUnrooted => Sampler::Labeled { rooted: false },
            Family::PolyaRooted | Family::PolyaUnrooted => Sampler::Polya {
                table: PolyaTable::new(sizes.iter().copied().max().unwrap_or(1)),
                rooted: *family == Family::PolyaRooted,
            },
            _ => {
                let dist = family.offspring().expect("Galton–Watson family");
                let mut samplers = BTreeMap::new();
                for &n in sizes {
                    samplers.insert(n, GwSampler::new(&dist, n)?);
                }
                Sampler::Gw(samplers)
            }
        })
    }

    fn draw(&self, n: usize, i: usize, rng: &mut RandomStream) -> Result<SampleRecord> {
        let mut audit_gap = None;
        let log_aut = match self {
            Sampler::Labeled { rooted: true } => log_aut_rooted(&sample_labeled_rooted(n, rng)),
            Sampler::Labeled { rooted: false } => {
                let tree = sample_labeled_tree(n, rng);
                let value = log_aut_unrooted(&tree);
                if i.is_multiple_of(AUDIT_STRIDE) {
                    let v = rng.gen_range(0..n);
                    audit_gap = Some(value - log_aut_rooted(&tree.rooted_at(v)));
                }
                value
            }
            Sampler::Gw(samplers) => log_aut_rooted(&samplers[&n].sample(rng)?),
            Sampler::Polya { table, rooted: true } => log_aut_rooted(&table.sample_rooted(n, rng)?),
            Sampler::Polya { table, rooted: false } => log_aut_unrooted(&table.sample_unrooted(n, rng)?),
        };
        Ok(SampleRecord { n, sample_index: i, log_aut, audit_gap })
    }
}

/// Draws every `(size, sample)` pair, ordered by size as configured and then
/// by sample index.
pub fn collect_samples(config: &ExperimentConfig) -> Result<Vec<SampleRecord>> {
    config.validate()?;
    let sampler = Sampler::new(&config.family, &config.sizes)?;
    let base = RandomStream::new(config.seed);
    let per = config.samples;
    try_map_indexed(config.execution, config.workers, config.sizes.len() * per, |task| {
        let n = config.sizes[task / per];
        let i = task % per;
        let mut rng = base.substream(substream_index(n, i));
        sampler.draw(n, i, &mut rng)
    })
}

pub const CSV_HEADER: &str = "family,n,sample_index,log_aut";

pub fn write_csv<W: Write>(family: &Family, records: &[SampleRecord], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{family},{},{},{}", r.n, r.sample_index, r.log_aut)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub moments: Moments,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub checked: usize,
    /// Gaps outside `[0, ln n]`.
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    pub family: String,
    pub sizes: Vec<SizeSummary>,
    /// Present with at least two distinct sizes.
    pub mean_slope: Option<LineFit>,
    pub variance_slope: Option<LineFit>,
    /// Test of the raw values at the largest size.
    pub normality: Option<AndersonDarling>,
    pub audit: AuditSummary,
    /// `(mu, sigma^2)` the slopes are compared against.
    pub reference: Option<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CltReport {
    /// Mean slope within three standard errors and variance slope within 10%
    /// of the reference, normality at the largest size, clean audit.
    pub fn checks(&self) -> Vec<CheckOutcome> {
        let mut out = Vec::new();
        if let (Some((mu, sigma2)), Some(m), Some(v)) = (self.reference, self.mean_slope, self.variance_slope) {
            let z = (m.slope - mu) / m.slope_se;
            out.push(CheckOutcome {
                name: "mean slope".into(),
                passed: z.abs() <= MEAN_SLOPE_SIGMAS,
                detail: format!("{:.7} +- {:.7} vs {mu} ({z:+.2} se)", m.slope, m.slope_se),
            });
            let rel = (v.slope - sigma2) / sigma2;
            out.push(CheckOutcome {
                name: "variance slope".into(),
                passed: rel.abs() <= VARIANCE_SLOPE_REL_TOL,
                detail: format!("{:.7} +- {:.7} vs {sigma2} ({:+.1}%)", v.slope, v.slope_se, 100.0 * rel),
            });
        }
        if let Some(ad) = self.normality {
            out.push(CheckOutcome {
                name: "normality".into(),
                passed: ad.p_value > NORMALITY_ALPHA,
                detail: format!("A*^2 = {:.4}, p = {:.4}", ad.adjusted, ad.p_value),
            });
        }
        if self.audit.checked > 0 {
            out.push(CheckOutcome {
                name: "orbit audit".into(),
                passed: self.audit.violations == 0,
                detail: format!("{} of {} outside [0, ln n]", self.audit.violations, self.audit.checked),
            });
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }
}

/// Aggregates raw records: per-size moments, slope fits, normality at the
/// largest size and the audit tally.
pub fn summarize(family: &Family, records: &[SampleRecord], series_order: Option<usize>) -> Result<CltReport> {
    let mut by_size: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    let mut audit = AuditSummary::default();
    for r in records {
        by_size.entry(r.n).or_default().push(r.log_aut);
        if let Some(gap) = r.audit_gap {
            audit.checked += 1;
            if !(-1e-9..=(r.n as f64).ln() + 1e-9).contains(&gap) {
                audit.violations += 1;
            }
        }
    }
    let sizes: Vec<SizeSummary> = by_size.iter().map(|(&n, xs)| SizeSummary { n, moments: moments(xs) }).collect();
    let (mean_slope, variance_slope) = if sizes.len() >= 2 {
        let x: Vec<f64> = sizes.iter().map(|s| s.n as f64).collect();
        let pick = |f: fn(&Moments) -> (f64, f64)| -> (Vec<f64>, Vec<f64>) {
            sizes.iter().map(|s| f(&s.moments)).unzip()
        };
        let (m, m_se) = pick(|m| (m.mean, m.mean_se));
        let (v, v_se) = pick(|m| (m.variance, m.variance_se));
        (weighted_line_fit(&x, &m, &m_se).ok(), weighted_line_fit(&x, &v, &v_se).ok())
    } else {
        (None, None)
    };
    let normality = by_size.values().last().and_then(|xs| anderson_darling_normal(xs).ok());
    let reference = family.reference_constants().or_else(|| {
        constants_for(family, series_order.unwrap_or(crate::constants::DEFAULT_SERIES_ORDER))
            .ok()
            .map(|r| (r.mu, r.sigma2))
    });
    Ok(CltReport { family: family.to_string(), sizes, mean_slope, variance_slope, normality, audit, reference })
}

/// Samples, writes the CSV if an output path is set, and summarizes.
pub fn run_clt_experiment(config: &ExperimentConfig) -> Result<CltReport> {
    let records = collect_samples(config)?;
    if let Some(path) = &config.output {
        let file = std::fs::File::create(path)?;
        write_csv(&config.family, &records, std::io::BufWriter::new(file))?;
    }
    summarize(&config.family, &records, config.series_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        let ok = ExperimentConfig::new(Family::Plane, vec![10], 5, 1);
        assert!(ok.validate().is_ok());
        let mut c = ok.clone();
        c.samples = 0;
        assert!(c.validate().is_err());
        c = ok.clone();
        c.family = Family::FullBinary;
        c.sizes = vec![9, 10];
        assert!(matches!(c.validate(), Err(Error::Unattainable { n: 10, .. })));
        assert!("custom:1,1".parse::<Family>().is_err());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut c = ExperimentConfig::new(Family::PolyaUnrooted, vec![8, 20], 30, 9);
        c.execution = Execution::Sequential;
        let a = collect_samples(&c).unwrap();
        c.execution = Execution::Parallel;
        c.workers = Some(3);
        assert_eq!(a, collect_samples(&c).unwrap());
        assert_eq!(a.len(), 60);
    }
}
