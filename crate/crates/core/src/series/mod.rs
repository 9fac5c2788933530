//! Truncated power series and the generating-function solvers.

pub(crate) mod ad;
pub(crate) mod dd;
pub mod family;
pub mod jet;
pub mod partitions;
pub mod polya;
pub mod power;
pub mod singularity;
pub mod weights;

pub use family::{ClassFamily, FamilySolution};
pub use jet::Jet;
pub use partitions::{c_coeff, c_partition_sum, c_series, cn_coeff, d_coeff, Cutoff};
pub use polya::{find_rho_polya, polya_counts, polya_eval, solve_polya_weighted, RhoEstimate};
pub use power::{ExactSeries, PowerSeries};
pub use singularity::{locate_singularity, Singularity};
pub use weights::{critical_point, solve_simply_generated, WeightFunction, WeightPolynomial};
