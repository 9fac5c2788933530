//! Galton–Watson trees conditioned on their order, via the cycle lemma.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::offspring::OffspringDistribution;
use crate::rng::RandomStream;
use crate::tree::RootedTree;

pub const DEFAULT_REJECTION_BUDGET: u64 = 1_000_000;

/// Whether some tree of order `n` has all child counts in `support`, i.e.
/// `n` values from `support` can sum to `n - 1`.
pub fn attainable(n: usize, support: &[usize]) -> bool {
    if n == 0 {
        return false;
    }
    let target = n - 1;
    // reach[s]: `s` is a sum of exactly `i` values from the support
    let mut reach = vec![false; target + 1];
    reach[0] = true;
    for _ in 0..n {
        let mut next = vec![false; target + 1];
        for s in 0..=target {
            if reach[s] {
                for &k in support {
                    if s + k <= target {
                        next[s + k] = true;
                    }
                }
            }
        }
        reach = next;
    }
    reach[target]
}

/// Rotates a child-count sequence with `sum(xi - 1) = -1` to the unique
/// cyclic shift whose proper prefix sums of `xi - 1` are all `>= 0`: start
/// right after the first position where the prefix sum is minimal.
pub fn cycle_lemma_rotation(degrees: &[usize]) -> Vec<usize> {
    let n = degrees.len();
    let mut sum = 0i64;
    let mut min = i64::MAX;
    let mut arg = 0;
    for (i, &d) in degrees.iter().enumerate() {
        sum += d as i64 - 1;
        if sum < min {
            min = sum;
            arg = i + 1;
        }
    }
    debug_assert_eq!(sum, -1, "child counts must sum to n - 1");
    let start = arg % n;
    degrees[start..].iter().chain(&degrees[..start]).copied().collect()
}

/// Reusable sampler for one distribution and order.
#[derive(Clone, Debug)]
pub struct GwSampler {
    n: usize,
    method: Method,
}

#[derive(Clone, Debug)]
enum Method {
    Poisson,
    Geometric,
    FullBinary,
    /// Counts of each child count drawn exactly from big-integer weights.
    Multinomial {
        /// `(counts per child count, weight)`; weights are exact.
        classes: Vec<(Vec<usize>, BigUint)>,
        total: BigUint,
    },
    Rejection {
        cdf: Vec<f64>,
        budget: u64,
    },
}

impl GwSampler {
    pub fn new(dist: &OffspringDistribution, n: usize) -> Result<Self> {
        Self::with_budget(dist, n, DEFAULT_REJECTION_BUDGET)
    }

    pub fn with_budget(dist: &OffspringDistribution, n: usize, budget: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("tree order must be at least 1".into()));
        }
        if let Some(support) = dist.finite_support() {
            if !attainable(n, &support) {
                return Err(Error::Unattainable { n, support });
            }
        }
        let method = match dist {
            OffspringDistribution::Poisson => Method::Poisson,
            OffspringDistribution::Geometric => Method::Geometric,
            OffspringDistribution::FullBinary => Method::FullBinary,
            OffspringDistribution::PrunedBinary => pruned_binary_classes(n),
            OffspringDistribution::Custom(_) => {
                dist.validate()?;
                let max = dist.max_degree().expect("custom weights are finite");
                let p = dist.probabilities(max)?;
                let mut cdf = Vec::with_capacity(p.len());
                let mut acc = 0.0;
                for q in p {
                    acc += q;
                    cdf.push(acc);
                }
                Method::Rejection { cdf, budget }
            }
        };
        Ok(Self { n, method })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Child counts in the conditioned i.i.d. law, before rotation.
    pub fn sample_degrees(&self, rng: &mut RandomStream) -> Result<Vec<usize>> {
        let n = self.n;
        Ok(match &self.method {
            Method::Poisson => {
                // n - 1 balls thrown uniformly into n boxes
                let mut xi = vec![0usize; n];
                for _ in 0..n - 1 {
                    xi[rng.gen_range(0..n)] += 1;
                }
                xi
            }
            Method::Geometric => {
                // uniform weak composition of n - 1 into n parts
                let mut marks = vec![false; 2 * n - 2];
                for m in marks.iter_mut().take(n - 1) {
                    *m = true;
                }
                marks.shuffle(rng);
                let mut xi = Vec::with_capacity(n);
                let mut run = 0;
                for is_ball in marks {
                    if is_ball {
                        run += 1;
                    } else {
                        xi.push(run);
                        run = 0;
                    }
                }
                xi.push(run);
                xi
            }
            Method::FullBinary => {
                let mut xi = vec![0usize; n];
                for x in xi.iter_mut().take((n - 1) / 2) {
                    *x = 2;
                }
                xi.shuffle(rng);
                xi
            }
            Method::Multinomial { classes, total } => {
                let mut u = rng.gen_biguint_below(total);
                let mut chosen = &classes[0].0;
                for (counts, w) in classes {
                    if &u < w {
                        chosen = counts;
                        break;
                    }
                    u -= w;
                }
                let mut xi = Vec::with_capacity(n);
                for (k, &c) in chosen.iter().enumerate() {
                    xi.extend(std::iter::repeat_n(k, c));
                }
                xi.shuffle(rng);
                xi
            }
            Method::Rejection { cdf, budget } => {
                let mut xi = vec![0usize; n];
                for _ in 0..*budget {
                    let mut sum = 0usize;
                    for x in xi.iter_mut() {
                        let u: f64 = rng.gen();
                        *x = cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1);
                        sum += *x;
                    }
                    if sum == n - 1 {
                        return Ok(xi);
                    }
                }
                return Err(Error::RejectionBudget { attempts: *budget });
            }
        })
    }

    pub fn sample(&self, rng: &mut RandomStream) -> Result<RootedTree> {
        let xi = self.sample_degrees(rng)?;
        RootedTree::from_bfs_degrees(&cycle_lemma_rotation(&xi))
    }
}

/// Exact joint law of `(n_0, n_1, n_2)` for the pruned binary law: with
/// `n_0 = n_2 + 1` and `n_1 = n - 1 - 2 n_2`, the weight is the multinomial
/// `n! / (n_0! n_1! n_2!)` times `2^(n_1)` (from `w = (1, 2, 1)`).
fn pruned_binary_classes(n: usize) -> Method {
    let mut classes = Vec::new();
    let mut total = BigUint::zero();
    // start from n_2 = 0: weight = n * 2^(n-1)
    let mut w = (BigUint::one() << (n - 1)) * n;
    for n2 in 0..=(n - 1) / 2 {
        let n0 = n2 + 1;
        let n1 = n - 1 - 2 * n2;
        total += &w;
        classes.push((vec![n0, n1, n2], w.clone()));
        if n1 >= 2 {
            // n_2 -> n_2 + 1 moves two ones into a zero and a two
            w = w * (n1 * (n1 - 1)) / (4 * (n0 + 1) * (n2 + 1));
        }
    }
    Method::Multinomial { classes, total }
}

/// Conditioned Galton–Watson tree of order `n`.
pub fn sample_conditioned_gw(dist: &OffspringDistribution, n: usize, rng: &mut RandomStream) -> Result<RootedTree> {
    GwSampler::new(dist, n)?.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_example() {
        assert_eq!(cycle_lemma_rotation(&[0, 2, 0]), vec![2, 0, 0]);
        assert_eq!(cycle_lemma_rotation(&[2, 0, 0]), vec![2, 0, 0]);
        assert_eq!(cycle_lemma_rotation(&[0]), vec![0]);
        let t = RootedTree::from_bfs_degrees(&cycle_lemma_rotation(&[0, 2, 0])).unwrap();
        assert_eq!(t.to_paren_string(), "(()())");
    }

    #[test]
    fn attainability() {
        assert!(!attainable(4, &[0, 2]));
        assert!(attainable(5, &[0, 2]));
        assert!(attainable(7, &[0, 3]));
        assert!(!attainable(6, &[0, 3]));
        let mut rng = RandomStream::new(1);
        let err = sample_conditioned_gw(&OffspringDistribution::FullBinary, 4, &mut rng).unwrap_err();
        assert!(matches!(err, Error::Unattainable { n: 4, .. }));
    }

    #[test]
    fn pruned_weights_sum_to_central_binomial() {
        // total weight over all sequences is [z^(n-1)] (1+z)^(2n) = binom(2n, n-1)
        if let Method::Multinomial { total, .. } = pruned_binary_classes(6) {
            assert_eq!(total, BigUint::from(792u32));
        } else {
            unreachable!();
        }
    }

    #[test]
    fn samples_have_requested_order() {
        let mut rng = RandomStream::new(5);
        for dist in [
            OffspringDistribution::Poisson,
            OffspringDistribution::Geometric,
            OffspringDistribution::FullBinary,
            OffspringDistribution::PrunedBinary,
            OffspringDistribution::custom(vec![1.0, 0.0, 0.0, 1.0]).unwrap(),
        ] {
            let n = if matches!(dist, OffspringDistribution::Custom(_)) { 10 } else { 51 };
            let t = sample_conditioned_gw(&dist, n, &mut rng).unwrap();
            assert_eq!(t.order(), n);
        }
    }
}
