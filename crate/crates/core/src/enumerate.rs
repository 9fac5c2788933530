//! Exhaustive enumeration of small trees, used as test oracles.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use crate::aut::aut_rooted;
use crate::canon::{unrooted_canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::tree::{RootedTree, UnrootedTree};

/// Size limits for the exhaustive enumerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub rooted: usize,
    pub unrooted: usize,
    pub plane: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            rooted: 16,
            unrooted: 14,
            plane: 12,
        }
    }
}

fn check(what: &'static str, limit: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Config(format!("{what}: n must be at least 1")));
    }
    if n > limit {
        return Err(Error::CapExceeded {
            what,
            limit,
            requested: n,
        });
    }
    Ok(())
}

/// Canonical codes of all rooted trees of each size up to `n`, sorted within
/// each size. With `allowed`, every vertex's child count must lie in the set.
fn codes_by_size(n: usize, allowed: Option<&BTreeSet<usize>>) -> Vec<Vec<String>> {
    let mut table: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    for size in 1..=n {
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        extend(&table, size - 1, (size - 1, usize::MAX), allowed, &mut chosen, &mut out);
        out.sort_unstable();
        table[size] = out;
    }
    table
}

/// Chooses root branches as a non-increasing sequence of `(size, index)`
/// keys, so each multiset is produced once.
fn extend(
    table: &[Vec<String>],
    remaining: usize,
    max_key: (usize, usize),
    allowed: Option<&BTreeSet<usize>>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<String>,
) {
    if remaining == 0 {
        if allowed.is_none_or(|a| a.contains(&chosen.len())) {
            let mut kids: Vec<&str> = chosen.iter().map(|&(s, i)| table[s][i].as_str()).collect();
            kids.sort_unstable();
            let mut code = String::from("(");
            for k in kids {
                code.push_str(k);
            }
            code.push(')');
            out.push(code);
        }
        return;
    }
    if let Some(a) = allowed {
        if a.range(chosen.len() + 1..).next().is_none() {
            return;
        }
    }
    for size in (1..=remaining.min(max_key.0)).rev() {
        let count = table[size].len();
        let top = if size == max_key.0 {
            count.min(max_key.1.saturating_add(1))
        } else {
            count
        };
        for idx in (0..top).rev() {
            chosen.push((size, idx));
            extend(table, remaining - size, (size, idx), allowed, chosen, out);
            chosen.pop();
        }
    }
}

/// Canonical codes of all rooted trees of order `n`, one per isomorphism
/// class, in code order.
pub fn rooted_canonical_codes(
    n: usize,
    allowed_child_counts: Option<&[usize]>,
    caps: &EnumerationCaps,
) -> Result<Vec<CanonicalCode>> {
    check("rooted tree enumeration", caps.rooted, n)?;
    let allowed: Option<BTreeSet<usize>> = allowed_child_counts.map(|a| a.iter().copied().collect());
    let mut table = codes_by_size(n, allowed.as_ref());
    Ok(std::mem::take(&mut table[n])
        .into_iter()
        .map(|c| CanonicalCode::parse(&c).expect("generated codes are valid"))
        .collect())
}

/// One representative per isomorphism class of rooted trees of order `n`.
pub fn enumerate_rooted_trees(n: usize, allowed_child_counts: Option<&[usize]>) -> Result<Vec<RootedTree>> {
    enumerate_rooted_trees_with(n, allowed_child_counts, &EnumerationCaps::default())
}

pub fn enumerate_rooted_trees_with(
    n: usize,
    allowed_child_counts: Option<&[usize]>,
    caps: &EnumerationCaps,
) -> Result<Vec<RootedTree>> {
    Ok(rooted_canonical_codes(n, allowed_child_counts, caps)?
        .iter()
        .map(CanonicalCode::to_tree)
        .collect())
}

/// One representative per isomorphism class of free trees of order `n`.
pub fn enumerate_unrooted_trees(n: usize) -> Result<Vec<UnrootedTree>> {
    enumerate_unrooted_trees_with(n, &EnumerationCaps::default())
}

pub fn enumerate_unrooted_trees_with(n: usize, caps: &EnumerationCaps) -> Result<Vec<UnrootedTree>> {
    check("unrooted tree enumeration", caps.unrooted, n)?;
    let wide = EnumerationCaps {
        rooted: caps.rooted.max(n),
        ..*caps
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in rooted_canonical_codes(n, None, &wide)? {
        let free = code.to_tree().to_unrooted();
        if seen.insert(unrooted_canonical_code(&free)) {
            out.push(free);
        }
    }
    Ok(out)
}

/// All plane (ordered) trees of order `n` as breadth-first child-count
/// sequences, optionally restricting child counts.
pub fn enumerate_plane_trees(
    n: usize,
    allowed_child_counts: Option<&[usize]>,
    caps: &EnumerationCaps,
) -> Result<Vec<Vec<usize>>> {
    check("plane tree enumeration", caps.plane, n)?;
    let allowed: Vec<usize> = match allowed_child_counts {
        Some(a) => a.iter().copied().filter(|&k| k < n).collect(),
        None => (0..n).collect(),
    };
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(n);
    plane_extend(n, &allowed, 1, &mut seq, &mut out);
    Ok(out)
}

/// `open` counts vertices discovered but not yet given a child count.
fn plane_extend(n: usize, allowed: &[usize], open: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if seq.len() == n {
        if open == 0 {
            out.push(seq.clone());
        }
        return;
    }
    if open == 0 {
        return;
    }
    let discovered = seq.len() + open;
    for &k in allowed {
        if discovered + k > n {
            continue;
        }
        seq.push(k);
        plane_extend(n, allowed, open - 1 + k, seq, out);
        seq.pop();
    }
}

/// Number of distinct plane embeddings of a rooted tree:
/// `prod_v deg(v)! / |Aut T|`.
pub fn plane_embedding_count(tree: &RootedTree) -> BigUint {
    let mut num = BigUint::one();
    for v in 0..tree.order() {
        for k in 2..=tree.out_degree(v) {
            num *= k;
        }
    }
    num / aut_rooted(tree).exact
}
