//! Uniform labeled trees through the Prüfer bijection.

use rand::Rng;

use crate::rng::RandomStream;
use crate::tree::{RootedTree, UnrootedTree};

/// Edges of the labeled tree with Prüfer sequence `seq` over `0..n`, where
/// `n = seq.len() + 2`. Linear time.
pub fn prufer_decode(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if v < ptr && degree[v] == 1 {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

/// Uniform over the `n^(n-2)` labeled free trees on `0..n`.
pub fn sample_labeled_tree(n: usize, rng: &mut RandomStream) -> UnrootedTree {
    assert!(n >= 1, "tree order must be at least 1");
    if n == 1 {
        return UnrootedTree::single_vertex();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    UnrootedTree::from_edges(n, &prufer_decode(&seq)).expect("Prüfer sequences decode to trees")
}

/// Uniform over the `n^(n-1)` labeled rooted trees: a uniform free tree with
/// an independent uniform root. Vertex ids are kept.
pub fn sample_labeled_rooted(n: usize, rng: &mut RandomStream) -> RootedTree {
    let tree = sample_labeled_tree(n, rng);
    let root = rng.gen_range(0..n);
    tree.rooted_at(root)
}
