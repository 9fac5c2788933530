//! Uniform unlabeled (Pólya) trees by recursive unranking over exact counts.
//!
//! A rooted tree of order `m >= 2` decomposes as a tree of order `m - k d`
//! with `k` identical branches of order `d` attached to its root; the pair
//! `(d, k)` has weight `d r_d r_{m-kd}` out of `(m - 1) r_m`.

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::aut::orbit_count;
use crate::error::{Error, Result};
use crate::rng::RandomStream;
use crate::series::polya::rooted_counts;
use crate::tree::{RootedTree, UnrootedTree};

/// Float decisions closer than this to a boundary are redone exactly.
const MARGIN: f64 = 1e-9;

/// Exact counts `r_m` with lazily built float selection tables.
#[derive(Debug)]
pub struct PolyaTable {
    counts: Vec<BigUint>,
    ln_counts: Vec<f64>,
    /// Per order `m`: `cdf[d - 1]` is the probability that the branch order
    /// is at most `d`.
    rows: Vec<OnceLock<Vec<f64>>>,
}

/// `ln x` for arbitrarily large `x > 0`.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 62 {
        return x.to_f64().expect("small").ln();
    }
    let shift = bits - 62;
    (x >> shift).to_f64().expect("62 bits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `a / b` in floating point for `a <= b` of any size.
fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = b.bits().saturating_sub(62);
    (a >> shift).to_f64().expect("62 bits") / (b >> shift).to_f64().expect("62 bits")
}

enum Task {
    /// Grow `node` into a uniform tree of order `m`.
    Gen { m: usize, node: usize },
    /// Attach `times` copies of the finished subtree at `src` to `parent`.
    Copy { src: usize, parent: usize, times: usize },
}

impl PolyaTable {
    /// Counts through order `capacity`.
    pub fn new(capacity: usize) -> Self {
        let counts = rooted_counts(capacity.max(1));
        let ln_counts = counts
            .iter()
            .map(|r| if r.is_zero() { f64::NEG_INFINITY } else { ln_big(r) })
            .collect();
        let rows = (0..counts.len()).map(|_| OnceLock::new()).collect();
        Self { counts, ln_counts, rows }
    }

    pub fn capacity(&self) -> usize {
        self.counts.len() - 1
    }

    /// `r_m`, the number of rooted unlabeled trees of order `m`.
    pub fn count(&self, m: usize) -> &BigUint {
        &self.counts[m]
    }

    fn weight(&self, m: usize, d: usize, k: usize) -> BigUint {
        &self.counts[d] * &self.counts[m - k * d] * d
    }

    fn ln_weight(&self, m: usize, d: usize, k: usize, ln_total: f64) -> f64 {
        (d as f64).ln() + self.ln_counts[d] + self.ln_counts[m - k * d] - ln_total
    }

    fn ln_total(&self, m: usize) -> f64 {
        ((m - 1) as f64).ln() + self.ln_counts[m]
    }

    fn row(&self, m: usize) -> &[f64] {
        self.rows[m].get_or_init(|| {
            let ln_total = self.ln_total(m);
            let mut acc = 0.0;
            (1..m)
                .map(|d| {
                    for k in 1..=(m - 1) / d {
                        acc += self.ln_weight(m, d, k, ln_total).exp();
                    }
                    acc
                })
                .collect()
        })
    }

    /// Picks `(d, k)` for order `m >= 2` with exact probabilities.
    fn choose(&self, m: usize, rng: &mut RandomStream) -> (usize, usize) {
        let total = &self.counts[m] * (m - 1);
        let u_exact = rng.gen_biguint_below(&total);
        let u = ratio(&u_exact, &total);
        if let Some(choice) = self.choose_float(m, u) {
            return choice;
        }
        let mut rest = u_exact;
        for d in 1..m {
            for k in 1..=(m - 1) / d {
                let w = self.weight(m, d, k);
                if rest < w {
                    return (d, k);
                }
                rest -= w;
            }
        }
        unreachable!("weights sum to (m - 1) r_m")
    }

    fn choose_float(&self, m: usize, u: f64) -> Option<(usize, usize)> {
        let row = self.row(m);
        let d = 1 + row.partition_point(|&c| c <= u);
        if d >= m {
            return None;
        }
        let mut lo = if d == 1 { 0.0 } else { row[d - 2] };
        if u - lo < MARGIN || row[d - 1] - u < MARGIN {
            return None;
        }
        let ln_total = self.ln_total(m);
        for k in 1..=(m - 1) / d {
            let hi = lo + self.ln_weight(m, d, k, ln_total).exp();
            if u < hi {
                return (u - lo >= MARGIN && hi - u >= MARGIN).then_some((d, k));
            }
            lo = hi;
        }
        None
    }

    /// Uniform rooted unlabeled tree of order `n`.
    pub fn sample_rooted(&self, n: usize, rng: &mut RandomStream) -> Result<RootedTree> {
        if n == 0 {
            return Err(Error::Config("tree order must be at least 1".into()));
        }
        if n > self.capacity() {
            return Err(Error::TableTooSmall { capacity: self.capacity(), required: n });
        }
        let mut children: Vec<Vec<usize>> = Vec::with_capacity(n);
        children.push(Vec::new());
        let mut stack = vec![Task::Gen { m: n, node: 0 }];
        while let Some(task) = stack.pop() {
            match task {
                Task::Gen { m, node } => {
                    if m == 1 {
                        continue;
                    }
                    let (d, k) = self.choose(m, rng);
                    let child = children.len();
                    children.push(Vec::new());
                    children[node].push(child);
                    stack.push(Task::Gen { m: m - k * d, node });
                    if k > 1 {
                        stack.push(Task::Copy { src: child, parent: node, times: k - 1 });
                    }
                    stack.push(Task::Gen { m: d, node: child });
                }
                Task::Copy { src, parent, times } => {
                    for _ in 0..times {
                        let copy = copy_subtree(&mut children, src);
                        children[parent].push(copy);
                    }
                }
            }
        }
        debug_assert_eq!(children.len(), n);
        RootedTree::from_child_lists(&children, 0)
    }

    /// Uniform free unlabeled tree of order `n`: a uniform rooted class is
    /// kept with probability one over the number of vertex orbits of its
    /// underlying free tree.
    pub fn sample_unrooted(&self, n: usize, rng: &mut RandomStream) -> Result<UnrootedTree> {
        let budget = 50 * n as u64 + 1000;
        for _ in 0..budget {
            let tree = self.sample_rooted(n, rng)?.to_unrooted();
            let orbits = orbit_count(&tree);
            if rng.gen_range(0..orbits) == 0 {
                return Ok(tree);
            }
        }
        Err(Error::RejectionBudget { attempts: budget })
    }
}

fn copy_subtree(children: &mut Vec<Vec<usize>>, src: usize) -> usize {
    let top = children.len();
    children.push(Vec::new());
    let mut stack = vec![(src, top)];
    while let Some((from, to)) = stack.pop() {
        for i in 0..children[from].len() {
            let c = children[from][i];
            let id = children.len();
            children.push(Vec::new());
            children[to].push(id);
            stack.push((c, id));
        }
    }
    top
}

/// Uniform rooted unlabeled tree of order `n`, with a fresh count table.
/// Reuse a [`PolyaTable`] when drawing many trees.
pub fn sample_rooted_polya(n: usize, rng: &mut RandomStream) -> Result<RootedTree> {
    PolyaTable::new(n).sample_rooted(n, rng)
}

/// Uniform free unlabeled tree of order `n`, with a fresh count table.
pub fn sample_unrooted_polya(n: usize, rng: &mut RandomStream) -> Result<UnrootedTree> {
    PolyaTable::new(n).sample_unrooted(n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_ends_at_one() {
        let table = PolyaTable::new(300);
        for m in [2, 3, 10, 300] {
            let last = *table.row(m).last().unwrap();
            assert!((last - 1.0).abs() < 1e-12, "m = {m}: {last}");
        }
    }

    #[test]
    fn exact_and_float_choices_agree() {
        let table = PolyaTable::new(60);
        let mut rng = RandomStream::new(11);
        for _ in 0..2000 {
            let m = rng.gen_range(2..=60);
            let total = table.count(m) * (m - 1);
            let u_exact = rng.gen_biguint_below(&total);
            let Some(fast) = table.choose_float(m, ratio(&u_exact, &total)) else { continue };
            let mut rest = u_exact;
            let mut slow = None;
            'walk: for d in 1..m {
                for k in 1..=(m - 1) / d {
                    let w = table.weight(m, d, k);
                    if rest < w {
                        slow = Some((d, k));
                        break 'walk;
                    }
                    rest -= w;
                }
            }
            assert_eq!(Some(fast), slow);
        }
    }

    #[test]
    fn sizes_and_table_limit() {
        let table = PolyaTable::new(50);
        let mut rng = RandomStream::new(2);
        for n in [1, 2, 7, 50] {
            assert_eq!(table.sample_rooted(n, &mut rng).unwrap().order(), n);
        }
        assert!(matches!(
            table.sample_rooted(51, &mut rng),
            Err(Error::TableTooSmall { capacity: 50, required: 51 })
        ));
        assert_eq!(table.sample_unrooted(1, &mut rng).unwrap().order(), 1);
    }
}
