//! Local moves that nest one neighbourhood inside another, for graphs and
//! k-uniform hypergraphs, and the procedures that use them to reach a
//! threshold graph (or hypergraph) while bounding the homomorphisms lost.

mod domset;
mod graph;
mod hyper;

pub use domset::{dominating_set, Incidence};
pub use graph::{
    bad_hom_bound, forbidden_paths, local_move, moved_set, protected_hom_count,
    protected_hom_count_with, thresholdize, ForbiddenPath, Move, MoveLog, PathImage,
};
pub use hyper::{
    hyper_local_move, hyper_thresholdize, hyper_thresholdize_with_pattern, is_threshold_hyper,
    precedes, HyperMoveReport,
};
