//! Graphs, hypergraphs, their text formats and elementary constructions.

mod graph;
mod hypergraph;

pub use graph::{
    add_dominating, add_isolated, all_labeled_graphs, complement, components, disjoint_union,
    double_graph, edge_density, induced, parse_graph, EdgeDensity, Graph,
};
pub use hypergraph::{k_subsets, parse_hypergraph, Hypergraph};
