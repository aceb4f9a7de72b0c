//! Canonical labeling and automorphism groups of colored and weighted graphs.

mod canon;
mod colored;
mod graph6;
mod orbit;
pub mod perm;
mod refine;
mod weighted;

pub use canon::{canonical_label, CanonResult};
pub use colored::{ColoredGraph, OrderedPartition};
pub use graph6::{decode_graph6, encode_graph6};
pub use orbit::orbit_average_matrix;
pub use perm::Perm;
pub use refine::{individualize, is_equitable, refine_equitable};
pub use weighted::{
    canonical_label_weighted, quantize, weighted_to_colored, WeightedCanon, WeightedEncoding,
    WeightedGraph,
};
