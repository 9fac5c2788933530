//! Automorphism groups of random trees.
//!
//! Exact automorphism counts for rooted and free trees, uniform samplers for
//! conditioned Galton–Watson, labeled and Pólya trees, generating-function
//! solvers for the mean and variance constants of `log |Aut|`, and a Monte
//! Carlo harness for the central limit behaviour.

pub mod aut;
pub mod canon;
pub mod constants;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod lnfact;
pub mod model;
pub mod offspring;
pub mod par;
pub mod rng;
pub mod sample;
pub mod series;
pub mod stats;
pub mod tree;

pub use aut::{
    aut_rooted, aut_unrooted, brute_force_aut, cutoff_functionals, log_aut_rooted, log_aut_unrooted,
    orbit_count, toll, vertex_orbits, AutSize, OrbitMode,
};
pub use canon::{
    branch_decomposition, canonical_code, find_centroid, unrooted_canonical_code, BranchDecomposition,
    CanonicalCode, CentroidInfo, CentroidKind,
};
pub use enumerate::{enumerate_rooted_trees, enumerate_unrooted_trees, EnumerationCaps};
pub use error::{Error, Result};
pub use experiment::{run_clt_experiment, CltReport, ExperimentConfig};
pub use model::Family;
pub use offspring::OffspringDistribution;
pub use par::Execution;
pub use rng::RandomStream;
pub use tree::{RootedTree, UnrootedTree};
