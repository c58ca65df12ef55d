//! Automorphisms, involutions, isomorphism tests and the involution-free
//! reduction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::search::{joint_colours, Direction, Matcher, Matrix};
use super::{SymmetryError, SymmetryLimits};
use crate::graph::{DistinguishedGraph, Graph};

/// A permutation of a graph's vertices, stored by vertex index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    images: Vec<usize>,
}

impl Automorphism {
    pub(crate) fn from_images(images: Vec<usize>) -> Self {
        Automorphism { images }
    }

    pub fn identity(n: usize) -> Self {
        Automorphism {
            images: (0..n).collect(),
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &u)| v == u)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && (0..self.images.len()).all(|v| self.images[self.images[v]] == v)
    }

    pub fn fixed_points(&self) -> BTreeSet<usize> {
        (0..self.images.len()).filter(|&v| self.images[v] == v).collect()
    }

    /// Checks bijectivity and that edges and non-edges are preserved.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.images.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &u in &self.images {
            if u >= n || seen[u] {
                return false;
            }
            seen[u] = true;
        }
        g.edges()
            .all(|(u, v)| g.has_edge(self.images[u], self.images[v]))
    }

    pub fn named(&self, g: &Graph) -> BTreeMap<String, String> {
        self.images
            .iter()
            .enumerate()
            .map(|(v, &u)| (g.name(v).to_string(), g.name(u).to_string()))
            .collect()
    }
}

fn tuple_indices(h: &DistinguishedGraph) -> Vec<usize> {
    h.distinguished_indices()
}

/// All automorphisms of `(H, ȳ)`, identity first, in lexicographic order of
/// the image vectors.
pub fn enumerate_automorphisms(
    h: &DistinguishedGraph,
    limits: &SymmetryLimits,
) -> Result<Vec<Automorphism>, SymmetryError> {
    let g = h.graph();
    if g.vertex_count() > limits.max_vertices {
        return Err(SymmetryError::TooManyVertices {
            vertices: g.vertex_count(),
            cap: limits.max_vertices,
        });
    }
    let t = tuple_indices(h);
    let colours = joint_colours(&[(g, &t)]);
    let m = Matrix::of(g);
    let mut out = Vec::new();
    let mut over = false;
    Matcher::new(&m, &m, &colours[0], &colours[0], Direction::Ascending, false).run(&mut |map| {
        if out.len() == limits.max_automorphisms {
            over = true;
            return false;
        }
        out.push(Automorphism::from_images(map.to_vec()));
        true
    });
    if over {
        return Err(SymmetryError::TooManyAutomorphisms {
            cap: limits.max_automorphisms,
        });
    }
    Ok(out)
}

/// Which involution to pick when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionPolicy {
    /// Lexicographically least image vector.
    #[default]
    LexLeast,
    /// Lexicographically greatest image vector.
    LexGreatest,
}

/// An automorphism of order two, chosen according to `policy`.
pub fn find_involution_with(h: &Graph, policy: InvolutionPolicy) -> Option<Automorphism> {
    let colours = joint_colours(&[(h, &[])]);
    let m = Matrix::of(h);
    let direction = match policy {
        InvolutionPolicy::LexLeast => Direction::Ascending,
        InvolutionPolicy::LexGreatest => Direction::Descending,
    };
    let mut found = None;
    Matcher::new(&m, &m, &colours[0], &colours[0], direction, true).run(&mut |map| {
        if map.iter().enumerate().all(|(v, &u)| v == u) {
            return true;
        }
        found = Some(Automorphism::from_images(map.to_vec()));
        false
    });
    found
}

/// The lexicographically least involution, if any.
pub fn find_involution(h: &Graph) -> Option<Automorphism> {
    find_involution_with(h, InvolutionPolicy::LexLeast)
}

/// An isomorphism `(G, x̄) → (H, ȳ)` as a vector of images, if one exists.
pub fn find_isomorphism(g: &DistinguishedGraph, h: &DistinguishedGraph) -> Option<Vec<usize>> {
    if g.graph().vertex_count() != h.graph().vertex_count()
        || g.graph().edge_count() != h.graph().edge_count()
        || g.arity() != h.arity()
    {
        return None;
    }
    let tg = tuple_indices(g);
    let th = tuple_indices(h);
    let colours = joint_colours(&[(g.graph(), &tg), (h.graph(), &th)]);
    let mut a_sorted = colours[0].clone();
    let mut b_sorted = colours[1].clone();
    a_sorted.sort_unstable();
    b_sorted.sort_unstable();
    if a_sorted != b_sorted {
        return None;
    }
    let ma = Matrix::of(g.graph());
    let mb = Matrix::of(h.graph());
    let mut found = None;
    Matcher::new(&ma, &mb, &colours[0], &colours[1], Direction::Ascending, false).run(&mut |map| {
        found = Some(map.to_vec());
        false
    });
    found
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let dg = DistinguishedGraph::new(g.clone(), vec![]).expect("empty tuple");
    let dh = DistinguishedGraph::new(h.clone(), vec![]).expect("empty tuple");
    find_isomorphism(&dg, &dh).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub graph: Graph,
    /// The involution applied to `graph`, by vertex name.
    pub involution: BTreeMap<String, String>,
}

/// The sequence H = H₀, H₁, … where each Hₖ₊₁ is induced by the fixed points
/// of an involution of Hₖ, ending at an involution-free graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionChain {
    pub steps: Vec<ReductionStep>,
    pub result: Graph,
}

pub fn involution_free_reduction_with(h: &Graph, policy: InvolutionPolicy) -> ReductionChain {
    let mut steps = Vec::new();
    let mut current = h.clone();
    while let Some(rho) = find_involution_with(&current, policy) {
        let next = current.induced_subgraph(&rho.fixed_points());
        steps.push(ReductionStep {
            involution: rho.named(&current),
            graph: current,
        });
        current = next;
    }
    ReductionChain {
        steps,
        result: current,
    }
}

pub fn involution_free_reduction(h: &Graph) -> ReductionChain {
    involution_free_reduction_with(h, InvolutionPolicy::LexLeast)
}

pub fn is_involution_free(h: &Graph) -> bool {
    find_involution(h).is_none()
}
