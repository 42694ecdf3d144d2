//! Threshold graphs: creation sequences, run-length block structures, exact
//! block-wise homomorphism counting, limiting block structures with real
//! proportions, and the standard extremal constructions.

mod blocks;
mod constructions;
mod limit;
mod sequence;

pub use blocks::{blocks_of, chromatic_count, hom_count_blocks, parts, BlockStructure};
pub use constructions::{quasi_clique, quasi_star, three_part, three_part_sizes};
pub use limit::{limit_density, limit_density_with, limit_edge_density, LimitThreshold};
pub use sequence::{
    build_graph, creation_sequence_of, is_threshold, strip_order, CreationSequence,
};
