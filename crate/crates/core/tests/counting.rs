use num_bigint::BigUint;
use treeaut::enumerate::{enumerate_plane_trees, plane_embedding_count, EnumerationCaps};
use treeaut::series::polya_counts;
use treeaut::{aut_rooted, enumerate_rooted_trees, enumerate_unrooted_trees};

// rooted and free unlabeled trees, n = 1..=20
const ROOTED: [u64; 20] = [
    1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486, 32973, 87811, 235381, 634847, 1721159, 4688676, 12826228,
];
const FREE: [u64; 20] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867, 317955, 823065,
];

#[test]
fn counts_match_published_sequences() {
    let (r, u) = polya_counts(20);
    for n in 1..=20 {
        assert_eq!(r.coeff(n), &BigUint::from(ROOTED[n - 1]), "r_{n}");
        assert_eq!(u.coeff(n), &BigUint::from(FREE[n - 1]), "u_{n}");
    }
}

#[test]
fn counts_match_enumeration() {
    let (r, u) = polya_counts(11);
    for n in 1..=11 {
        assert_eq!(r.coeff(n), &BigUint::from(enumerate_rooted_trees(n, None).unwrap().len()));
        assert_eq!(u.coeff(n), &BigUint::from(enumerate_unrooted_trees(n).unwrap().len()));
    }
}

#[test]
fn labelings_sum_to_cayley() {
    for n in 1..=10usize {
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        let total: BigUint = enumerate_rooted_trees(n, None)
            .unwrap()
            .iter()
            .map(|t| &fact / aut_rooted(t).exact)
            .sum();
        assert_eq!(total, BigUint::from(n).pow(n as u32 - 1), "n = {n}");
    }
}

#[test]
fn plane_embeddings_sum_to_catalan() {
    let caps = EnumerationCaps::default();
    for n in 1..=9usize {
        let catalan = (1..n).fold(BigUint::from(1u32), |c, k| c * (4 * k - 2) / (k + 1));
        assert_eq!(BigUint::from(enumerate_plane_trees(n, None, &caps).unwrap().len()), catalan);
        let embeddings: BigUint = enumerate_rooted_trees(n, None).unwrap().iter().map(plane_embedding_count).sum();
        assert_eq!(embeddings, catalan, "n = {n}");
    }
}

#[test]
fn full_binary_classes_and_embeddings() {
    let classes = enumerate_rooted_trees(5, Some(&[0, 2])).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(plane_embedding_count(&classes[0]), BigUint::from(2u32));
    assert!(enumerate_rooted_trees(4, Some(&[0, 2])).unwrap().is_empty());
}
