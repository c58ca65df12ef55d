//! From an independent-set instance to a pinned homomorphism instance with
//! the same parity, plus the classification of hosts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gadget::{
    find_hardness_gadget, verify_hardness_gadget, GadgetError, GadgetVerdict, HardnessGadget,
    RoutedGadget,
};
use crate::graph::{
    connected_components, disjoint_union_with_tags, tagged, Graph, GraphError,
    PartiallyLabelledGraph,
};
use crate::hom::{count_independent_sets, count_pinned_parity_with_budget, HomCount, HomError};
use crate::structure::is_square_free;
use crate::symmetry::{
    involution_free_reduction_with, InvolutionPolicy, ReductionChain, SearchBudget,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("gadget rejected by the verifier: {0:?}")]
    UnverifiedGadget(GadgetVerdict),
    #[error("host has {0} vertices; trivial counting needs at most one")]
    HostTooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Size caps for brute-force verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyLimits {
    pub max_input_vertices: usize,
    pub max_instance_vertices: usize,
    pub max_host_vertices: usize,
    /// Largest intermediate table in the parity count.
    pub table_budget: u128,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits {
            max_input_vertices: 8,
            max_instance_vertices: 1000,
            max_host_vertices: 16,
            table_budget: crate::hom::DEFAULT_TABLE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeAnchor {
    pub u: String,
    pub v: String,
    pub anchor: String,
}

/// The pinned instance `J` together with the merged endpoints of the
/// bridge copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompiledInstance {
    pub instance: PartiallyLabelledGraph,
    /// Input vertex to its `y` anchor.
    pub vertex_anchors: BTreeMap<String, String>,
    /// Input edge to its `z` anchor, in edge order.
    pub edge_anchors: Vec<EdgeAnchor>,
    pub gadget: HardnessGadget,
}

fn vertex_anchor(v: usize) -> String {
    tagged("y", &format!("V{v}"))
}

fn edge_anchor(e: usize) -> String {
    tagged("z", &format!("E{e}"))
}

/// Only the bridge copies, with their ends merged: returns the merged graph
/// and the anchor maps.
fn bridge_skeleton(
    g: &Graph,
    gadget: &HardnessGadget,
) -> Result<(PartiallyLabelledGraph, BTreeMap<String, String>, Vec<EdgeAnchor>), CompileError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let tags: Vec<(String, usize, usize)> = edges
        .iter()
        .enumerate()
        .flat_map(|(e, &(u, v))| [(format!("e{e}u{u}"), e, u), (format!("e{e}u{v}"), e, v)])
        .collect();
    let parts: Vec<(&PartiallyLabelledGraph, &str)> =
        tags.iter().map(|(t, _, _)| (&gadget.j3.part, t.as_str())).collect();
    let union = disjoint_union_with_tags(&parts)?;
    let mut y_classes: Vec<Vec<String>> = vec![Vec::new(); g.vertex_count()];
    let mut z_classes: Vec<Vec<String>> = vec![Vec::new(); edges.len()];
    for (t, e, v) in &tags {
        y_classes[*v].push(tagged(&gadget.j3.y, t));
        z_classes[*e].push(tagged(&gadget.j3.z, t));
    }
    let classes: Vec<(Vec<String>, String)> = y_classes
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(v, c)| (c, vertex_anchor(v)))
        .chain(z_classes.into_iter().enumerate().map(|(e, c)| (c, edge_anchor(e))))
        .collect();
    let k = crate::graph::identify_vertices(&union, &classes)?;
    let vertex_anchors = (0..g.vertex_count())
        .map(|v| (g.name(v).to_string(), vertex_anchor(v)))
        .collect();
    let edge_anchors = edges
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| EdgeAnchor {
            u: g.name(u).to_string(),
            v: g.name(v).to_string(),
            anchor: edge_anchor(e),
        })
        .collect();
    Ok((k, vertex_anchors, edge_anchors))
}

/// Builds `J` from the input graph `g` once the gadget passes the verifier
/// on `h`.
pub fn compile_is_instance(
    g: &Graph,
    gadget: &HardnessGadget,
    h: &Graph,
) -> Result<CompiledInstance, CompileError> {
    let verdict = verify_hardness_gadget(gadget, h);
    if !verdict.is_accepted() {
        return Err(CompileError::UnverifiedGadget(verdict));
    }
    compile_unchecked(g, gadget)
}

/// The construction without the gadget check; used to probe broken gadgets.
pub fn compile_unchecked(g: &Graph, gadget: &HardnessGadget) -> Result<CompiledInstance, CompileError> {
    let (k, vertex_anchors, edge_anchors) = bridge_skeleton(g, gadget)?;
    let v_tags: Vec<String> = (0..g.vertex_count()).map(|v| format!("v{v}")).collect();
    let e_tags: Vec<String> = (0..g.edge_count()).map(|e| format!("e{e}")).collect();
    let mut parts: Vec<(&PartiallyLabelledGraph, &str)> = vec![(&k, "K")];
    parts.extend(v_tags.iter().map(|t| (&gadget.j1.part, t.as_str())));
    parts.extend(e_tags.iter().map(|t| (&gadget.j2.part, t.as_str())));
    let union = disjoint_union_with_tags(&parts)?;
    let mut classes = Vec::new();
    for (v, t) in v_tags.iter().enumerate() {
        let mut members = vec![tagged(&gadget.j1.root, t)];
        if g.degree(v) > 0 {
            members.push(tagged(&vertex_anchor(v), "K"));
        }
        classes.push((members, vertex_anchor(v)));
    }
    for (e, t) in e_tags.iter().enumerate() {
        classes.push((vec![tagged(&gadget.j2.root, t), tagged(&edge_anchor(e), "K")], edge_anchor(e)));
    }
    let instance = crate::graph::identify_vertices(&union, &classes)?;
    Ok(CompiledInstance {
        instance,
        vertex_anchors,
        edge_anchors,
        gadget: gadget.clone(),
    })
}

/// The intermediate graph made of bridge copies only.
pub fn bridge_graph(g: &Graph, gadget: &HardnessGadget) -> Result<PartiallyLabelledGraph, CompileError> {
    Ok(bridge_skeleton(g, gadget)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ParityVerdict {
    Accepted {
        parity: u8,
    },
    Rejected {
        instance_parity: u8,
        independent_sets: HomCount,
    },
    Inconclusive {
        reason: String,
        input_vertices: usize,
        instance_vertices: usize,
        host_vertices: usize,
    },
}

impl ParityVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, ParityVerdict::Accepted { .. })
    }
}

/// Compares the parity of |Homs(J, H)| with the parity of the number of
/// independent sets of `g`.
pub fn verify_compiled_parity(
    g: &Graph,
    gadget: &HardnessGadget,
    h: &Graph,
    limits: &VerifyLimits,
) -> Result<ParityVerdict, CompileError> {
    let compiled = compile_is_instance(g, gadget, h)?;
    Ok(check_parity(g, &compiled.instance, h, limits))
}

/// As [`verify_compiled_parity`] on an already compiled instance.
pub fn check_parity(
    g: &Graph,
    instance: &PartiallyLabelledGraph,
    h: &Graph,
    limits: &VerifyLimits,
) -> ParityVerdict {
    let sizes = |reason: String| ParityVerdict::Inconclusive {
        reason,
        input_vertices: g.vertex_count(),
        instance_vertices: instance.graph().vertex_count(),
        host_vertices: h.vertex_count(),
    };
    if g.vertex_count() > limits.max_input_vertices
        || instance.graph().vertex_count() > limits.max_instance_vertices
        || h.vertex_count() > limits.max_host_vertices
    {
        return sizes("size cap exceeded".into());
    }
    let hom_parity = match count_pinned_parity_with_budget(instance, h, limits.table_budget) {
        Ok(p) => p as u8,
        Err(e) => return sizes(e.to_string()),
    };
    let is = count_independent_sets(g);
    if hom_parity == is.parity() {
        ParityVerdict::Accepted { parity: hom_parity }
    } else {
        ParityVerdict::Rejected {
            instance_parity: hom_parity,
            independent_sets: is,
        }
    }
}

/// |Homs(G, H*)| when H* has at most one vertex.
pub fn trivial_count(g: &Graph, h_star: &Graph) -> Result<HomCount, CompileError> {
    let n = match h_star.vertex_count() {
        0 => (g.vertex_count() == 0) as u64,
        1 => (g.edge_count() == 0) as u64,
        more => return Err(CompileError::HostTooLarge(more)),
    };
    Ok(HomCount::from(n))
}

pub const OUT_OF_SCOPE_NOTE: &str = "conjectured hard, out of theorem scope";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DichotomyVerdict {
    /// The reduced host has at most one vertex.
    Polynomial { chain: ReductionChain },
    /// A component of the reduced host has a verified gadget.
    Hard {
        chain: ReductionChain,
        component: Graph,
        certificate: RoutedGadget,
    },
    /// Hard in principle but the gadget search ran out of budget.
    Inconclusive {
        chain: ReductionChain,
        component: Graph,
        reason: String,
    },
    /// The reduced host contains a 4-cycle.
    OutOfScope { chain: ReductionChain, note: String },
}

impl DichotomyVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            DichotomyVerdict::Polynomial { .. } => "polynomial",
            DichotomyVerdict::Hard { .. } => "parity-p-complete",
            DichotomyVerdict::Inconclusive { .. } => "inconclusive",
            DichotomyVerdict::OutOfScope { .. } => "out-of-scope",
        }
    }

    pub fn chain(&self) -> &ReductionChain {
        match self {
            DichotomyVerdict::Polynomial { chain }
            | DichotomyVerdict::Hard { chain, .. }
            | DichotomyVerdict::Inconclusive { chain, .. }
            | DichotomyVerdict::OutOfScope { chain, .. } => chain,
        }
    }
}

pub fn classify(h: &Graph, budget: &SearchBudget) -> Result<DichotomyVerdict, GadgetError> {
    classify_with(h, budget, InvolutionPolicy::default())
}

pub fn classify_with(
    h: &Graph,
    budget: &SearchBudget,
    policy: InvolutionPolicy,
) -> Result<DichotomyVerdict, GadgetError> {
    let chain = involution_free_reduction_with(h, policy);
    let reduced = chain.result.clone();
    if reduced.vertex_count() <= 1 {
        return Ok(DichotomyVerdict::Polynomial { chain });
    }
    if !is_square_free(&reduced) {
        return Ok(DichotomyVerdict::OutOfScope {
            chain,
            note: OUT_OF_SCOPE_NOTE.into(),
        });
    }
    let component = connected_components(&reduced)
        .into_iter()
        .find(|c| c.vertex_count() > 1)
        .expect("a graph on two or more vertices without involutions has an edge");
    match find_hardness_gadget(&component, budget) {
        Ok(certificate) => Ok(DichotomyVerdict::Hard {
            chain,
            component,
            certificate,
        }),
        Err(GadgetError::BudgetExhausted { candidates }) => Ok(DichotomyVerdict::Inconclusive {
            chain,
            component,
            reason: format!("even-gadget search exhausted after {candidates} candidates"),
        }),
        Err(e) => Err(e),
    }
}
