//! Monte Carlo probe of the probability that two independent Galton–Watson
//! trees agree up to isomorphism on their first `M` levels.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::SubtreeInterner;
use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;
use crate::rng::RandomStream;
use crate::tree::RootedTree;

/// Offspring counts beyond this are lumped into the last CDF entry; the
/// unbounded presets have negligible mass there.
const MAX_TABULATED_DEGREE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelIsoEstimate {
    pub estimate: f64,
    /// Binomial standard error of `estimate`.
    pub std_error: f64,
    pub trials: u64,
    /// `max(p_0, 1 - p_0)^M`.
    pub bound: f64,
}

fn offspring_cdf(dist: &OffspringDistribution) -> Result<Vec<f64>> {
    let max = dist.max_degree().unwrap_or(MAX_TABULATED_DEGREE);
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = dist
        .probabilities(max)?
        .into_iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    *cdf.last_mut().expect("nonempty") = f64::INFINITY;
    Ok(cdf)
}

/// Unconditioned tree cut at depth `depth`; `None` unless some vertex
/// reaches that depth.
fn truncated_tree(cdf: &[f64], depth: usize, rng: &mut RandomStream) -> Option<RootedTree> {
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut level = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &v in &level {
            let u: f64 = rng.gen();
            let k = cdf.partition_point(|&c| c <= u);
            for _ in 0..k {
                let c = children.len();
                children.push(Vec::new());
                children[v].push(c);
                next.push(c);
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
    }
    Some(RootedTree::from_child_lists(&children, 0).expect("grown as a tree"))
}

/// Estimates `P(T_1^(M) ~ T_2^(M), both of height >= M)` for two independent
/// unconditioned trees with the critical offspring law of `dist`.
pub fn estimate_level_iso_probability(
    dist: &OffspringDistribution,
    depth: usize,
    trials: u64,
    rng: &mut RandomStream,
) -> Result<LevelIsoEstimate> {
    if depth == 0 || trials == 0 {
        return Err(Error::Config("depth and trials must be at least 1".into()));
    }
    let cdf = offspring_cdf(dist)?;
    let p0 = dist.p0()?;
    let mut hits = 0u64;
    for _ in 0..trials {
        let first = truncated_tree(&cdf, depth, rng);
        let second = truncated_tree(&cdf, depth, rng);
        if let (Some(a), Some(b)) = (first, second) {
            let mut interner = SubtreeInterner::new();
            let ca = interner.classify(&a)[a.root()];
            let cb = interner.classify(&b)[b.root()];
            if ca == cb {
                hits += 1;
            }
        }
    }
    let estimate = hits as f64 / trials as f64;
    Ok(LevelIsoEstimate {
        estimate,
        std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        trials,
        bound: p0.max(1.0 - p0).powi(depth as i32),
    })
}
