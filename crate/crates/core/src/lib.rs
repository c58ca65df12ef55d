//! Parity homomorphism counting toolkit: exact and mod-2 homomorphism
//! counts, involution-free reduction of hosts, hardness gadgets for
//! square-free hosts and the reduction from independent-set parity.

pub mod compile;
pub mod fixtures;
pub mod format;
pub mod gadget;
pub mod generate;
pub mod graph;
pub mod hom;
pub mod structure;
pub mod symmetry;

pub use graph::{
    connected_components, disjoint_union_with_tags, identify_vertices, DistinguishedGraph, Graph,
    GraphError, PartiallyLabelledGraph, VertexTag,
};
pub use hom::{HomCount, HomError};
