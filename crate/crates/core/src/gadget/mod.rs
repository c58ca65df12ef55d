//! Hardness gadgets for square-free hosts: the building blocks, an
//! independent verifier and the search that finds one for any connected,
//! square-free, involution-free host.

mod build;
mod search;
mod verify;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, PartiallyLabelledGraph};
use crate::hom::{HomCount, HomError};
use crate::structure::StructureError;
use crate::symmetry::SymmetryError;

pub use build::{attach_paths, make_caterpillar, make_cycle_gadget, make_neighbourhood};
pub use search::{
    even_gadget_candidates, find_even_gadget, find_gadget_odd_cycle, find_gadget_one_even,
    find_gadget_two_even, find_hardness_gadget, gadget_from_even_gadget, one_even_split,
    EvenGadgetSearch, GadgetRoute, OneEvenSplit, RoutedGadget,
};
pub use verify::{
    assemble_gadget, compute_omega, compute_sigma_table, verify_hardness_gadget, GadgetVerdict,
    Piece, Side, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("path needs at least one edge")]
    DegeneratePath,
    #[error("`{0}` -- `{1}` is not an edge of the host")]
    NotAPath(String, String),
    #[error("cycle length {length} too small for a path on {vertices} vertices")]
    CycleTooShort { length: usize, vertices: usize },
    #[error("vertex `{0}` is not in the host")]
    UnknownVertex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("even gadget is not minimal: {0}")]
    NotMinimal(String),
    #[error("search budget exhausted after {candidates} candidates")]
    BudgetExhausted { candidates: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// A partially labelled graph with one distinguished free vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedPiece {
    pub part: PartiallyLabelledGraph,
    pub root: String,
}

/// A partially labelled graph with two distinguished free vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgePiece {
    pub part: PartiallyLabelledGraph,
    pub y: String,
    pub z: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaEntry {
    pub a: String,
    pub b: String,
    pub parity: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<HomCount>,
}

/// Parities of the bridge counts over Ω_y × Ω_z, sorted by `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SigmaTable {
    pub entries: Vec<SigmaEntry>,
}

impl SigmaTable {
    pub fn get(&self, a: &str, b: &str) -> Option<&SigmaEntry> {
        self.entries
            .binary_search_by(|e| (e.a.as_str(), e.b.as_str()).cmp(&(a, b)))
            .ok()
            .map(|k| &self.entries[k])
    }

    pub fn parity(&self, a: &str, b: &str) -> Option<u8> {
        self.get(a, b).map(|e| e.parity)
    }

    /// Same pairs and parities; exact counts are ignored.
    pub fn same_parities(&self, other: &SigmaTable) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(p, q)| p.a == q.a && p.b == q.b && p.parity == q.parity)
    }
}

/// The quintuple (i, s, (J₁,y), (J₂,z), (J₃,y,z)) with its declared Ω-sets
/// and Σ table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardnessGadget {
    pub i: String,
    pub s: String,
    pub j1: RootedPiece,
    pub j2: RootedPiece,
    pub j3: BridgePiece,
    pub omega_y: BTreeSet<String>,
    pub omega_z: BTreeSet<String>,
    pub sigma: SigmaTable,
}

impl HardnessGadget {
    pub fn total_vertices(&self) -> usize {
        self.j1.part.graph().vertex_count()
            + self.j2.part.graph().vertex_count()
            + self.j3.part.graph().vertex_count()
    }
}

/// A host edge `(a, b)` with a connected bipartite `(G, w, x)`, `(w, x)` an
/// edge, whose count into `(H, a, b)` is even.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenGadget {
    pub a: String,
    pub b: String,
    pub graph: crate::graph::Graph,
    pub w: String,
    pub x: String,
    pub count: HomCount,
}
