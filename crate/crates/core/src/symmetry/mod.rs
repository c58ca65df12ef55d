//! Automorphisms and involutions, the involution-free reduction, tuple
//! orbits and hom-vectors, and the machinery that trades pinned vertices
//! for sums of unpinned graphs.

mod auto;
pub mod catalog;
mod pinning;
mod search;
mod tuples;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::GraphError;
use crate::hom::HomError;

pub use auto::{
    are_isomorphic, enumerate_automorphisms, find_involution, find_involution_with,
    find_isomorphism, involution_free_reduction, involution_free_reduction_with,
    is_involution_free, Automorphism, InvolutionPolicy, ReductionChain, ReductionStep,
};
pub use pinning::{
    find_distinguisher, implement_vector, reduce_partlab_instance, DistinguisherOutcome,
    ImplementOutcome,
};
pub use tuples::{
    enumerate_tuples_up_to_iso, glue_at_tuples, hom_vector, hom_vector_for, orbit_of_tuple,
    HomVector, TupleClasses,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("graph has {vertices} vertices, over the automorphism search cap of {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
    #[error("more than {cap} automorphisms")]
    TooManyAutomorphisms { cap: usize },
    #[error("tuple space of size {size} exceeds the cap of {cap}")]
    TupleSpaceTooLarge { size: u128, cap: usize },
    #[error("arity {arity} exceeds the cap of {cap}")]
    ArityTooLarge { arity: usize, cap: usize },
    #[error("expected length {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("vertex `{0}` is not in the host")]
    UnknownVertex(String),
    #[error("{0} has an involution")]
    HasInvolution(String),
    #[error("search budget exhausted after {candidates} candidates (span rank {rank})")]
    BudgetExhausted { candidates: usize, rank: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hom(HomError),
}

/// Caps on automorphism enumeration and tuple spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryLimits {
    pub max_vertices: usize,
    pub max_automorphisms: usize,
    /// Largest |V(H)|^r for which tuple classes are computed.
    pub max_tuple_space: usize,
    /// Largest number of pinned vertices removed at once.
    pub max_arity: usize,
}

impl Default for SymmetryLimits {
    fn default() -> Self {
        SymmetryLimits {
            max_vertices: 64,
            max_automorphisms: 200_000,
            max_tuple_space: 100_000,
            max_arity: 2,
        }
    }
}

/// Bounds on searches over candidate pattern graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Candidates have at most this many vertices.
    pub max_candidate_vertices: usize,
    /// Number of (graph, tuple) candidates examined before giving up.
    pub max_candidates: usize,
    /// Largest pool of graphs kept while implementing a vector.
    pub max_pool: usize,
    /// Only connected candidates G with G[x̄] connected.
    pub connected: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_candidate_vertices: 7,
            max_candidates: 200_000,
            max_pool: 4096,
            connected: false,
        }
    }
}
