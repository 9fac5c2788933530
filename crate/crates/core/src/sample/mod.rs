//! Exact uniform samplers for the random tree models.

pub mod gw;
pub mod labeled;
pub mod level_iso;
pub mod polya;

pub use gw::{attainable, cycle_lemma_rotation, sample_conditioned_gw, GwSampler};
pub use labeled::{prufer_decode, sample_labeled_rooted, sample_labeled_tree};
pub use level_iso::{estimate_level_iso_probability, LevelIsoEstimate};
pub use polya::{sample_rooted_polya, sample_unrooted_polya, PolyaTable};
