//! Automorphism group orders of rooted and free trees.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::canon::{find_centroid, CentroidKind, SubtreeInterner};
use crate::error::{Error, Result};
use crate::lnfact::ln_factorial;
use crate::tree::{RootedTree, UnrootedTree};

/// Order of an automorphism group, exactly and as a natural logarithm.
#[derive(Clone, Debug)]
pub struct AutSize {
    pub exact: BigUint,
    pub log_value: f64,
}

impl AutSize {
    pub fn one() -> Self {
        Self {
            exact: BigUint::one(),
            log_value: 0.0,
        }
    }

    /// Builds `prod m!^count` from a histogram of branch multiplicities.
    fn from_histogram(hist: &BTreeMap<usize, u32>) -> Self {
        let mut exact = BigUint::one();
        let mut log_value = 0.0;
        let mut fact = BigUint::one();
        let mut k = 1usize;
        for (&m, &count) in hist {
            while k < m {
                k += 1;
                fact *= k;
            }
            exact *= fact.pow(count);
            log_value += count as f64 * ln_factorial(m);
        }
        Self { exact, log_value }
    }

    pub fn doubled(mut self) -> Self {
        self.exact *= 2u32;
        self.log_value += std::f64::consts::LN_2;
        self
    }

    /// Exact value as `u64` when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.exact.to_u64()
    }
}

impl PartialEq for AutSize {
    fn eq(&self, other: &Self) -> bool {
        self.exact == other.exact
    }
}

impl Eq for AutSize {}

impl From<u64> for AutSize {
    fn from(v: u64) -> Self {
        assert!(v >= 1, "automorphism group orders are positive");
        Self {
            exact: BigUint::from(v),
            log_value: (v as f64).ln(),
        }
    }
}

impl fmt::Display for AutSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact)
    }
}

/// Calls `visit(v, m)` for every vertex `v` and every isomorphism class of
/// children of `v`, where `m` is the number of children in that class.
fn for_each_multiplicity(tree: &RootedTree, mut visit: impl FnMut(usize, usize)) {
    let mut interner = SubtreeInterner::new();
    let mut class = vec![0u32; tree.order()];
    let mut buf: Vec<u32> = Vec::new();
    for &v in tree.bfs_order().iter().rev() {
        buf.clear();
        buf.extend(tree.children(v).iter().map(|&c| class[c]));
        buf.sort_unstable();
        let mut i = 0;
        while i < buf.len() {
            let mut j = i + 1;
            while j < buf.len() && buf[j] == buf[i] {
                j += 1;
            }
            visit(v, j - i);
            i = j;
        }
        class[v] = interner.intern(buf.clone());
    }
}

/// `|Aut T|` for a rooted tree: the product over all vertices of `m!` for
/// each isomorphism class of children occurring `m` times.
pub fn aut_rooted(tree: &RootedTree) -> AutSize {
    let mut hist = BTreeMap::new();
    for_each_multiplicity(tree, |_, m| {
        if m >= 2 {
            *hist.entry(m).or_insert(0u32) += 1;
        }
    });
    AutSize::from_histogram(&hist)
}

/// `ln |Aut T|` without building the exact integer.
pub fn log_aut_rooted(tree: &RootedTree) -> f64 {
    let mut total = 0.0;
    for_each_multiplicity(tree, |_, m| total += ln_factorial(m));
    total
}

/// Root of a rooting whose automorphism group relates to the free tree's,
/// and whether a symmetry line doubles it.
fn centroid_rooting(tree: &UnrootedTree) -> (usize, bool) {
    let info = find_centroid(tree);
    (info.centroids[0], info.kind == CentroidKind::SymmetryLine)
}

/// `|Aut T|` for a free tree via its centroid: rooted at a unique centroid,
/// or at either end of a central edge, doubled for a symmetry line.
pub fn aut_unrooted(tree: &UnrootedTree) -> AutSize {
    match tree.order() {
        1 => return AutSize::one(),
        2 => return AutSize::from(2),
        _ => {}
    }
    let (root, doubled) = centroid_rooting(tree);
    let a = aut_rooted(&tree.rooted_at(root));
    if doubled {
        a.doubled()
    } else {
        a
    }
}

pub fn log_aut_unrooted(tree: &UnrootedTree) -> f64 {
    match tree.order() {
        1 => return 0.0,
        2 => return std::f64::consts::LN_2,
        _ => {}
    }
    let (root, doubled) = centroid_rooting(tree);
    let a = log_aut_rooted(&tree.rooted_at(root));
    if doubled {
        a + std::f64::consts::LN_2
    } else {
        a
    }
}

/// Toll of the automorphism functional: `sum ln(m_i!)` over the root's
/// branch classes.
pub fn toll(tree: &RootedTree) -> f64 {
    let root = tree.root();
    let mut total = 0.0;
    for_each_multiplicity(tree, |v, m| {
        if v == root {
            total += ln_factorial(m);
        }
    });
    total
}

/// Splits `ln |Aut T|` into the parts coming from multiplicities `<= cutoff`
/// and `> cutoff`.
pub fn cutoff_functionals(tree: &RootedTree, cutoff: usize) -> (f64, f64) {
    let (mut le, mut gt) = (0.0, 0.0);
    for_each_multiplicity(tree, |_, m| {
        if m <= cutoff {
            le += ln_factorial(m);
        } else {
            gt += ln_factorial(m);
        }
    });
    (le, gt)
}

pub const BRUTE_FORCE_ROOTED_CAP: usize = 10;
pub const BRUTE_FORCE_UNROOTED_CAP: usize = 9;
pub const EXACT_ORBIT_CAP: usize = 12;

/// Either kind of tree, for the brute-force oracle.
#[derive(Clone, Copy, Debug)]
pub enum AnyTree<'a> {
    Rooted(&'a RootedTree),
    Unrooted(&'a UnrootedTree),
}

impl<'a> From<&'a RootedTree> for AnyTree<'a> {
    fn from(t: &'a RootedTree) -> Self {
        AnyTree::Rooted(t)
    }
}

impl<'a> From<&'a UnrootedTree> for AnyTree<'a> {
    fn from(t: &'a UnrootedTree) -> Self {
        AnyTree::Unrooted(t)
    }
}

/// Backtracking search over vertex permutations that preserve adjacency.
struct PermutationSearch {
    adj: Vec<Vec<bool>>,
    degree: Vec<usize>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl PermutationSearch {
    fn new(tree: &UnrootedTree, start: usize) -> Self {
        let n = tree.order();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in tree.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let degree = (0..n).map(|v| tree.degree(v)).collect();
        let (_, order) = tree.bfs_from(start);
        Self {
            adj,
            degree,
            order,
            image: vec![usize::MAX; n],
            used: vec![false; n],
        }
    }

    fn compatible(&self, depth: usize, w: usize) -> bool {
        let v = self.order[depth];
        if self.used[w] || self.degree[v] != self.degree[w] {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&x| self.adj[v][x] == self.adj[w][self.image[x]])
    }

    /// Number of completions of the current partial assignment; stops early
    /// once `limit` is reached.
    fn count(&mut self, depth: usize, limit: u64) -> u64 {
        if depth == self.order.len() {
            return 1;
        }
        let v = self.order[depth];
        let mut total = 0;
        for w in 0..self.adj.len() {
            if !self.compatible(depth, w) {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            total += self.count(depth + 1, limit - total);
            self.used[w] = false;
            self.image[v] = usize::MAX;
            if total >= limit {
                break;
            }
        }
        total
    }

    /// Counts adjacency-preserving permutations sending `order[0]` to `target`.
    fn count_from(&mut self, target: usize, limit: u64) -> u64 {
        if !self.compatible(0, target) {
            return 0;
        }
        let v = self.order[0];
        self.image[v] = target;
        self.used[target] = true;
        let total = self.count(1, limit);
        self.used[target] = false;
        self.image[v] = usize::MAX;
        total
    }
}

/// Counts automorphisms by exhaustive search over vertex permutations.
/// Independent of the branch-decomposition formula; used as a test oracle.
pub fn brute_force_aut<'a>(tree: impl Into<AnyTree<'a>>) -> Result<AutSize> {
    let count = match tree.into() {
        AnyTree::Rooted(t) => {
            check_cap("brute-force rooted automorphism count", BRUTE_FORCE_ROOTED_CAP, t.order())?;
            let root = t.root();
            PermutationSearch::new(&t.to_unrooted(), root).count_from(root, u64::MAX)
        }
        AnyTree::Unrooted(t) => {
            check_cap("brute-force unrooted automorphism count", BRUTE_FORCE_UNROOTED_CAP, t.order())?;
            PermutationSearch::new(t, 0).count(0, u64::MAX)
        }
    };
    Ok(AutSize::from(count))
}

fn check_cap(what: &'static str, limit: usize, requested: usize) -> Result<()> {
    if requested > limit {
        Err(Error::CapExceeded {
            what,
            limit,
            requested,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitMode {
    /// Group vertices by the isomorphism class of the tree rooted at them.
    CodeBased,
    /// Decide each pair by searching for an automorphism (small trees only).
    Exact,
}

/// Partition of the vertices into automorphism orbits. Blocks are sorted by
/// their smallest vertex and each block is sorted.
pub fn vertex_orbits(tree: &UnrootedTree, mode: OrbitMode) -> Result<Vec<Vec<usize>>> {
    let n = tree.order();
    let label: Vec<usize> = match mode {
        OrbitMode::CodeBased => {
            let mut interner = SubtreeInterner::new();
            interner
                .classify_all_rootings(tree)
                .into_iter()
                .map(|c| c as usize)
                .collect()
        }
        OrbitMode::Exact => {
            check_cap("exact vertex orbits", EXACT_ORBIT_CAP, n)?;
            let mut label: Vec<usize> = (0..n).collect();
            for v in 0..n {
                if label[v] != v {
                    continue;
                }
                let mut search = PermutationSearch::new(tree, v);
                for u in v + 1..n {
                    if label[u] == u && search.count_from(u, 1) > 0 {
                        label[u] = v;
                    }
                }
            }
            label
        }
    };
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut first_of_label: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, &l) in label.iter().enumerate() {
        let first = *first_of_label.entry(l).or_insert(v);
        blocks.entry(first).or_default().push(v);
    }
    Ok(blocks.into_values().collect())
}

/// Number of automorphism orbits on the vertices, by the code-based rule.
pub fn orbit_count(tree: &UnrootedTree) -> usize {
    let mut interner = SubtreeInterner::new();
    let mut classes = interner.classify_all_rootings(tree);
    classes.sort_unstable();
    classes.dedup();
    classes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(n: usize, e: &[(usize, usize)]) -> UnrootedTree {
        UnrootedTree::from_edges(n, e).unwrap()
    }

    #[test]
    fn rooted_examples() {
        assert_eq!(aut_rooted(&RootedTree::star(4)).to_u64(), Some(24));
        assert_eq!(aut_rooted(&RootedTree::complete_binary(2)).to_u64(), Some(8));
        assert_eq!(aut_rooted(&RootedTree::path(6)).to_u64(), Some(1));
        let a = aut_rooted(&RootedTree::star(30));
        assert!((a.log_value - ln_factorial(30)).abs() < 1e-12);
        assert_eq!(a.exact.to_string(), "265252859812191058636308480000000");
    }

    #[test]
    fn unrooted_examples() {
        assert_eq!(aut_unrooted(&UnrootedTree::path(4)).to_u64(), Some(2));
        assert_eq!(aut_unrooted(&UnrootedTree::star(4)).to_u64(), Some(24));
        let double_star = edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]);
        assert_eq!(aut_unrooted(&double_star).to_u64(), Some(8));
        assert_eq!(aut_unrooted(&UnrootedTree::single_vertex()).to_u64(), Some(1));
        assert_eq!(aut_unrooted(&UnrootedTree::path(2)).to_u64(), Some(2));
        assert!((log_aut_unrooted(&double_star) - 8f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn toll_examples() {
        assert!((toll(&RootedTree::star(4)) - 24f64.ln()).abs() < 1e-12);
        let t = RootedTree::parse_paren("(()(())())").unwrap();
        assert!((toll(&t) - 2f64.ln()).abs() < 1e-12);
        assert_eq!(toll(&RootedTree::single_vertex()), 0.0);
    }

    #[test]
    fn cutoff_examples() {
        let star = RootedTree::star(4);
        let (le, gt) = cutoff_functionals(&star, 3);
        assert_eq!(le, 0.0);
        assert!((gt - 24f64.ln()).abs() < 1e-12);
        let (le, gt) = cutoff_functionals(&star, 4);
        assert!((le - 24f64.ln()).abs() < 1e-12);
        assert_eq!(gt, 0.0);
    }

    #[test]
    fn brute_force_examples() {
        let cherry = RootedTree::star(2);
        assert_eq!(brute_force_aut(&cherry).unwrap().to_u64(), Some(2));
        assert_eq!(brute_force_aut(&UnrootedTree::path(4)).unwrap().to_u64(), Some(2));
        assert_eq!(brute_force_aut(&RootedTree::complete_binary(2)).unwrap().to_u64(), Some(8));
        let big = RootedTree::path(11);
        assert!(matches!(brute_force_aut(&big), Err(Error::CapExceeded { limit: 10, .. })));
        let big = UnrootedTree::path(10);
        assert!(matches!(brute_force_aut(&big), Err(Error::CapExceeded { limit: 9, .. })));
    }

    #[test]
    fn orbit_examples() {
        for mode in [OrbitMode::CodeBased, OrbitMode::Exact] {
            let p3 = UnrootedTree::path(3);
            assert_eq!(vertex_orbits(&p3, mode).unwrap(), vec![vec![0, 2], vec![1]]);
            let star = UnrootedTree::star(4);
            assert_eq!(vertex_orbits(&star, mode).unwrap(), vec![vec![0], vec![1, 2, 3, 4]]);
        }
        let star = UnrootedTree::star(4);
        let whole = aut_unrooted(&star);
        let at_leaf = aut_rooted(&star.rooted_at(1));
        assert_eq!(at_leaf.to_u64(), Some(6));
        assert_eq!(whole.exact / at_leaf.exact, BigUint::from(4u32));
        assert_eq!(orbit_count(&star), 2);
    }
}
