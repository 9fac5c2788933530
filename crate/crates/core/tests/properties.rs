use proptest::prelude::*;
use treeaut::aut::OrbitMode;
use treeaut::lnfact::ln_factorial;
use treeaut::sample::{attainable, cycle_lemma_rotation};
use treeaut::series::PowerSeries;
use treeaut::{
    aut_rooted, aut_unrooted, canonical_code, enumerate_rooted_trees, unrooted_canonical_code, vertex_orbits,
    RootedTree, UnrootedTree,
};

/// Random recursive tree: vertex `i` attaches to `picks[i - 1] % i`.
fn recursive_parents(picks: &[usize]) -> Vec<Option<usize>> {
    std::iter::once(None)
        .chain(picks.iter().enumerate().map(|(i, &p)| Some(p % (i + 1))))
        .collect()
}

fn tree_and_permutation() -> impl Strategy<Value = (Vec<Option<usize>>, Vec<usize>)> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<usize>(), n - 1).prop_map(|p| recursive_parents(&p)),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn relabel(parents: &[Option<usize>], perm: &[usize]) -> Vec<Option<usize>> {
    let mut out = vec![None; parents.len()];
    for (v, p) in parents.iter().enumerate() {
        out[perm[v]] = p.map(|p| perm[p]);
    }
    out
}

proptest! {
    #[test]
    fn relabeling_preserves_class_and_group((parents, perm) in tree_and_permutation()) {
        let a = RootedTree::from_parents(&parents).unwrap();
        let b = RootedTree::from_parents(&relabel(&parents, &perm)).unwrap();
        prop_assert_eq!(canonical_code(&a), canonical_code(&b));
        prop_assert_eq!(aut_rooted(&a), aut_rooted(&b));
        prop_assert_eq!(unrooted_canonical_code(&a.to_unrooted()), unrooted_canonical_code(&b.to_unrooted()));
        prop_assert_eq!(aut_unrooted(&a.to_unrooted()), aut_unrooted(&b.to_unrooted()));
    }

    #[test]
    fn text_formats_round_trip((parents, _) in tree_and_permutation()) {
        let t = RootedTree::from_parents(&parents).unwrap();
        let back = RootedTree::parse_paren(&t.to_paren_string()).unwrap();
        prop_assert_eq!(canonical_code(&t), canonical_code(&back));
        let u = t.to_unrooted();
        let back = UnrootedTree::parse_edge_list(&u.to_edge_list_string()).unwrap();
        prop_assert_eq!(unrooted_canonical_code(&u), unrooted_canonical_code(&back));
    }

    #[test]
    fn orbit_stabilizer_on_random_trees((parents, _) in tree_and_permutation()) {
        let u = RootedTree::from_parents(&parents).unwrap().to_unrooted();
        let whole = aut_unrooted(&u).exact;
        for block in vertex_orbits(&u, OrbitMode::CodeBased).unwrap() {
            let stab = aut_rooted(&u.rooted_at(block[0])).exact;
            prop_assert_eq!(&whole / &stab, num_bigint::BigUint::from(block.len()));
        }
    }

    #[test]
    fn exactly_one_rotation_is_a_tree(n in 1usize..30, balls in prop::collection::vec(any::<usize>(), 0..29)) {
        let mut xi = vec![0usize; n];
        for b in balls.iter().take(n - 1) {
            xi[b % n] += 1;
        }
        xi[0] += (n - 1).saturating_sub(balls.len());
        let valid = (0..n)
            .filter(|&s| is_tree_word(&(0..n).map(|m| xi[(s + m) % n]).collect::<Vec<_>>()))
            .count();
        prop_assert_eq!(valid, 1);
        prop_assert!(RootedTree::from_bfs_degrees(&cycle_lemma_rotation(&xi)).is_ok());
    }

    #[test]
    fn exp_log_round_trip(c in prop::collection::vec(-1.0f64..1.0, 1..15)) {
        let mut coeffs = vec![0.0];
        coeffs.extend(c);
        let f = PowerSeries::new(coeffs);
        let back = f.exp().unwrap().log().unwrap();
        for n in 0..=f.order() {
            prop_assert!((back.coeff(n) - f.coeff(n)).abs() < 1e-9);
        }
    }

    #[test]
    fn ln_factorial_is_a_log_sum(n in 0usize..3000) {
        let direct: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
        prop_assert!((ln_factorial(n) - direct).abs() <= 1e-12 * direct.max(1.0));
    }
}

/// All proper prefix sums of `x - 1` stay above `-1`.
fn is_tree_word(xs: &[usize]) -> bool {
    let mut sum = 0i64;
    xs[..xs.len() - 1].iter().all(|&x| {
        sum += x as i64 - 1;
        sum > -1
    })
}

#[test]
fn attainability_matches_enumeration() {
    let supports: [&[usize]; 5] = [&[0, 2], &[0, 3], &[0, 1, 3], &[0, 2, 5], &[0, 4]];
    for support in supports {
        for n in 1..=12 {
            let exists = !enumerate_rooted_trees(n, Some(support)).unwrap().is_empty();
            assert_eq!(attainable(n, support), exists, "n={n} support={support:?}");
        }
    }
}
