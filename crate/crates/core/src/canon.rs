//! Canonical forms, isomorphism classes of subtrees, branch decompositions
//! and centroids.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tree::{RootedTree, UnrootedTree};

/// Balanced-parenthesis code of a rooted tree with children sorted
/// lexicographically. Two rooted trees have equal codes iff they are
/// isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of vertices of the encoded tree.
    pub fn order(&self) -> usize {
        self.0.len() / 2
    }

    pub fn to_tree(&self) -> RootedTree {
        RootedTree::parse_paren(&self.0).expect("canonical codes are balanced")
    }

    /// Parses and canonicalizes an arbitrary parenthesis string.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(canonical_code(&RootedTree::parse_paren(s)?))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

/// AHU canonical codes of subtrees, built bottom-up. Codes of inner
/// vertices are moved into their parent's code; only the root's code and
/// those of its children survive.
fn subtree_codes(tree: &RootedTree) -> Vec<String> {
    let mut codes = vec![String::new(); tree.order()];
    let root = tree.root();
    for &v in tree.bfs_order().iter().rev() {
        let mut kids: Vec<String> = tree
            .children(v)
            .iter()
            .map(|&c| {
                if v == root {
                    codes[c].clone()
                } else {
                    std::mem::take(&mut codes[c])
                }
            })
            .collect();
        kids.sort_unstable();
        let len = 2 + kids.iter().map(String::len).sum::<usize>();
        let mut code = String::with_capacity(len);
        code.push('(');
        for k in &kids {
            code.push_str(k);
        }
        code.push(')');
        codes[v] = code;
    }
    codes
}

pub fn canonical_code(tree: &RootedTree) -> CanonicalCode {
    let mut codes = subtree_codes(tree);
    CanonicalCode(std::mem::take(&mut codes[tree.root()]))
}

/// Canonical code of a free tree: the smallest code among rootings at its
/// centroid vertices. Equal for two free trees iff they are isomorphic.
pub fn unrooted_canonical_code(tree: &UnrootedTree) -> CanonicalCode {
    let info = find_centroid(tree);
    info.centroids
        .iter()
        .map(|&c| canonical_code(&tree.rooted_at(c)))
        .min()
        .expect("every tree has a centroid")
}

/// Interns multisets of child classes into dense integer class ids.
///
/// Ids from the same interner are comparable across trees: two rooted
/// (sub)trees get the same id iff they are isomorphic.
#[derive(Default, Debug, Clone)]
pub struct SubtreeInterner {
    ids: HashMap<Vec<u32>, u32>,
}

impl SubtreeInterner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Id for a node whose children have the given classes (any order).
    pub fn intern(&mut self, mut child_classes: Vec<u32>) -> u32 {
        child_classes.sort_unstable();
        self.intern_sorted(child_classes)
    }

    fn intern_sorted(&mut self, key: Vec<u32>) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(key).or_insert(next)
    }

    /// Class id of every subtree of `tree`, indexed by vertex.
    pub fn classify(&mut self, tree: &RootedTree) -> Vec<u32> {
        let mut class = vec![0u32; tree.order()];
        let mut buf = Vec::new();
        for &v in tree.bfs_order().iter().rev() {
            buf.clear();
            buf.extend(tree.children(v).iter().map(|&c| class[c]));
            class[v] = self.intern(buf.clone());
        }
        class
    }

    /// Class id of the tree obtained by rooting `tree` at each vertex.
    ///
    /// Uses the usual two-pass rerooting: classes of the downward subtrees
    /// first, then the class of the complementary component seen from each
    /// child.
    pub fn classify_all_rootings(&mut self, tree: &UnrootedTree) -> Vec<u32> {
        let n = tree.order();
        let (parent, order) = tree.bfs_from(0);
        let mut down = vec![0u32; n];
        for &v in order.iter().rev() {
            let kids: Vec<u32> = tree
                .neighbors(v)
                .iter()
                .filter(|&&w| parent[w] == Some(v))
                .map(|&w| down[w])
                .collect();
            down[v] = self.intern(kids);
        }
        // up[v]: class of the component containing parent(v) after removing
        // the edge to v, rooted at parent(v).
        let mut up: Vec<Option<u32>> = vec![None; n];
        let mut full = vec![0u32; n];
        for &v in &order {
            let mut branches: Vec<(u32, usize)> = Vec::with_capacity(tree.degree(v));
            for &w in tree.neighbors(v) {
                if parent[w] == Some(v) {
                    branches.push((down[w], w));
                } else {
                    branches.push((up[v].expect("parent processed first"), usize::MAX));
                }
            }
            branches.sort_unstable();
            let all: Vec<u32> = branches.iter().map(|b| b.0).collect();
            full[v] = self.intern_sorted(all.clone());
            for (i, &(_, w)) in branches.iter().enumerate() {
                if w == usize::MAX {
                    continue;
                }
                let mut rest = Vec::with_capacity(all.len() - 1);
                rest.extend_from_slice(&all[..i]);
                rest.extend_from_slice(&all[i + 1..]);
                up[w] = Some(self.intern_sorted(rest));
            }
        }
        full
    }
}

/// Root branches of a tree up to isomorphism, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub entries: Vec<BranchClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchClass {
    pub code: CanonicalCode,
    pub multiplicity: usize,
}

impl BranchDecomposition {
    /// Multiplicities of the branch classes, in code order.
    pub fn multiplicities(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|e| e.multiplicity)
    }

    /// Sum of multiplicity times branch order; equals `n - 1`.
    pub fn covered_vertices(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.multiplicity * e.code.order())
            .sum()
    }
}

pub fn branch_decomposition(tree: &RootedTree) -> BranchDecomposition {
    let codes = subtree_codes(tree);
    let mut kids: Vec<&String> = tree.children(tree.root()).iter().map(|&c| &codes[c]).collect();
    kids.sort_unstable();
    let mut entries: Vec<BranchClass> = Vec::new();
    for code in kids {
        match entries.last_mut() {
            Some(last) if last.code.0 == *code => last.multiplicity += 1,
            _ => entries.push(BranchClass {
                code: CanonicalCode(code.clone()),
                multiplicity: 1,
            }),
        }
    }
    BranchDecomposition { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CentroidKind {
    /// A unique centroid vertex.
    CentralVertex,
    /// Two adjacent centroids whose halves are not isomorphic.
    CentralEdge,
    /// Two adjacent centroids whose halves are isomorphic.
    SymmetryLine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidInfo {
    /// One centroid, or two adjacent ones in increasing id order.
    pub centroids: Vec<usize>,
    pub kind: CentroidKind,
}

/// Largest component left after deleting each vertex.
pub(crate) fn max_component_sizes(tree: &UnrootedTree) -> Vec<usize> {
    let n = tree.order();
    let (parent, order) = tree.bfs_from(0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    (0..n)
        .map(|v| {
            let mut worst = n - size[v];
            for &w in tree.neighbors(v) {
                if parent[w] == Some(v) {
                    worst = worst.max(size[w]);
                }
            }
            worst
        })
        .collect()
}

pub fn find_centroid(tree: &UnrootedTree) -> CentroidInfo {
    let n = tree.order();
    let worst = max_component_sizes(tree);
    let centroids: Vec<usize> = (0..n).filter(|&v| 2 * worst[v] <= n).collect();
    debug_assert!(matches!(centroids.len(), 1 | 2));
    if centroids.len() == 1 {
        return CentroidInfo {
            centroids,
            kind: CentroidKind::CentralVertex,
        };
    }
    let (a, b) = (centroids[0], centroids[1]);
    let mut interner = SubtreeInterner::new();
    let half_a = half_class(tree, a, b, &mut interner);
    let half_b = half_class(tree, b, a, &mut interner);
    let kind = if half_a == half_b {
        CentroidKind::SymmetryLine
    } else {
        CentroidKind::CentralEdge
    };
    CentroidInfo { centroids, kind }
}

/// Class of the component containing `root` after deleting edge `root-other`.
fn half_class(tree: &UnrootedTree, root: usize, other: usize, interner: &mut SubtreeInterner) -> u32 {
    let n = tree.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    parent[root] = root;
    parent[other] = other;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in tree.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let mut class = vec![0u32; n];
    for &v in order.iter().rev() {
        let kids: Vec<u32> = tree
            .neighbors(v)
            .iter()
            .filter(|&&w| w != other && w != root && parent[w] == v)
            .map(|&w| class[w])
            .collect();
        class[v] = interner.intern(kids);
    }
    class[root]
}
