//! Finding a hardness gadget: by even-degree vertices, by deleting a sphere
//! around the unique even vertex, by shortest odd cycles, or from an even
//! gadget on bipartite hosts with all degrees odd.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::build::{attach_paths, make_caterpillar, make_cycle_gadget, make_neighbourhood};
use super::verify::{assemble_gadget, compute_omega, verify_hardness_gadget, GadgetVerdict};
use super::{BridgePiece, EvenGadget, GadgetError, HardnessGadget, RootedPiece};
use crate::graph::{DistinguishedGraph, Graph, PartiallyLabelledGraph};
use crate::hom::count_distinguished_homs;
use crate::structure::{
    ball_at_distance, cycle_census, cycles_of_length, degree_profile, is_bipartite,
    is_square_free, longest_path_in_even_cycles, min_distance_to_cycle, odd_girth,
};
use crate::symmetry::catalog::graphs_on;
use crate::symmetry::{enumerate_automorphisms, find_involution, SearchBudget, SymmetryLimits};

/// Which case of the construction produced a gadget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum GadgetRoute {
    TwoEven { path: Vec<String> },
    OneEven { vertex: String, radius: usize, component: Vec<String> },
    EdgeInOddCycles { length: usize, edge: (String, String) },
    PathInEvenCycles { length: usize, path: Vec<String> },
    EvenGadget { edge: (String, String), pattern_vertices: usize, candidates: usize },
}

fn precondition(msg: impl Into<String>) -> GadgetError {
    GadgetError::Precondition(msg.into())
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn checked(g: HardnessGadget, h: &Graph) -> Result<HardnessGadget, GadgetError> {
    match verify_hardness_gadget(&g, h) {
        GadgetVerdict::Accepted => Ok(g),
        GadgetVerdict::Rejected { violation, .. } => Err(GadgetError::Internal(format!(
            "constructed gadget rejected: {violation:?}"
        ))),
    }
}

/// Shortest path from `from` to `to`, taking neighbours in name order.
fn bfs_path(h: &Graph, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; h.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in h.neighbours(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Lex-least pair of even vertices, joined by a shortest path and cut at
/// the first even vertex after the start.
fn two_even_path(h: &Graph) -> Result<Vec<String>, GadgetError> {
    let even: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.degree(v).is_multiple_of(2)).collect();
    if even.len() < 2 {
        return Err(precondition("fewer than two even-degree vertices"));
    }
    let full = bfs_path(h, even[0], even[1]).ok_or_else(|| precondition("host is disconnected"))?;
    let k = (1..full.len())
        .find(|&j| h.degree(full[j]).is_multiple_of(2))
        .expect("path ends at an even vertex");
    Ok(full[..=k].iter().map(|&v| h.name(v).to_string()).collect())
}

fn two_even_pieces(
    h: &Graph,
    path: &[String],
) -> Result<(String, String, RootedPiece, RootedPiece, BridgePiece), GadgetError> {
    let k = path.len() - 1;
    let i = path[1].clone();
    let s = path[k - 1].clone();
    let j1 = make_neighbourhood(h, &path[0])?;
    let j2 = make_neighbourhood(h, &path[k])?;
    let mut j3 = make_caterpillar(h, path)?;
    if k == 1 {
        // a pendant pinned to v₀ restates that y lands in Γ(v₀)
        let mut edges = j3.part.graph().edge_names();
        edges.push(("w0".into(), "y".into()));
        let g = Graph::new(names(&["y", "z", "w0"]), edges)?;
        j3.part = PartiallyLabelledGraph::new(g, BTreeMap::from([("w0".into(), path[0].clone())]))?;
    }
    Ok((i, s, j1, j2, j3))
}

/// Gadget for a connected square-free host with at least two even-degree
/// vertices. Every piece has a pinned vertex.
pub fn find_gadget_two_even(h: &Graph) -> Result<HardnessGadget, GadgetError> {
    if !h.is_connected() {
        return Err(precondition("host is disconnected"));
    }
    if !is_square_free(h) {
        return Err(precondition("host contains a 4-cycle"));
    }
    let path = two_even_path(h)?;
    let (i, s, j1, j2, j3) = two_even_pieces(h, &path)?;
    checked(assemble_gadget(h, &i, &s, j1, j2, j3, false)?, h)
}

/// The unique positive even vertex `v`, the radius `r` to the nearest cycle,
/// the sphere removed and the chosen component left behind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OneEvenSplit {
    pub vertex: String,
    pub radius: usize,
    pub removed: BTreeSet<String>,
    pub component: Graph,
}

pub fn one_even_split(h: &Graph) -> Result<OneEvenSplit, GadgetError> {
    let profile = degree_profile(h);
    let even = profile.positive_even();
    if even.len() != 1 {
        return Err(precondition(format!(
            "expected exactly one vertex of positive even degree, found {}",
            even.len()
        )));
    }
    let v = even[0].clone();
    let r = min_distance_to_cycle(h, &v)?
        .ok_or_else(|| GadgetError::Internal(format!("no cycle reachable from `{v}`")))?;
    let removed = ball_at_distance(h, &v, r)?;
    let rest = h.without_vertices(&removed.iter().map(|u| h.index_of(u).unwrap()).collect());
    for c in rest.component_indices() {
        let comp = rest.induced_subgraph(&c);
        if comp.contains(&v) {
            continue;
        }
        let evens = (0..comp.vertex_count()).filter(|&u| comp.degree(u).is_multiple_of(2)).count();
        if evens >= 2 && find_involution(&comp).is_none() {
            return Ok(OneEvenSplit {
                vertex: v,
                radius: r,
                removed,
                component: comp,
            });
        }
    }
    Err(GadgetError::Internal(format!(
        "no involution-free component with two even vertices after removing the sphere of radius {r} around `{v}`"
    )))
}

/// Gadget for an involution-free square-free host with exactly one vertex
/// of positive even degree.
pub fn find_gadget_one_even(h: &Graph) -> Result<HardnessGadget, GadgetError> {
    if !is_square_free(h) {
        return Err(precondition("host contains a 4-cycle"));
    }
    let split = one_even_split(h)?;
    if find_involution(h).is_some() {
        return Err(precondition("host has an involution"));
    }
    one_even_from_split(h, &split)
}

fn one_even_from_split(h: &Graph, split: &OneEvenSplit) -> Result<HardnessGadget, GadgetError> {
    let path = two_even_path(&split.component)?;
    let (i, s, j1, j2, j3) = two_even_pieces(&split.component, &path)?;
    let r = split.radius;
    let j1 = RootedPiece {
        part: attach_paths(&j1.part, r),
        root: j1.root,
    };
    let j2 = RootedPiece {
        part: attach_paths(&j2.part, r),
        root: j2.root,
    };
    let j3 = BridgePiece {
        part: attach_paths(&j3.part, r),
        y: j3.y,
        z: j3.z,
    };
    checked(assemble_gadget(h, &i, &s, j1, j2, j3, false)?, h)
}

/// The cycle through `p` rotated to start with `p` in order.
fn cycle_through(g: &Graph, len: usize, p: &[usize]) -> Option<Vec<usize>> {
    for c in cycles_of_length(g, len) {
        for c in [c.clone(), c.iter().rev().copied().collect()] {
            if let Some(start) = c.iter().position(|&v| v == p[0]) {
                let rotated: Vec<usize> = (0..len).map(|k| c[(start + k) % len]).collect();
                if rotated[..p.len()] == *p {
                    return Some(rotated);
                }
            }
        }
    }
    None
}

fn odd_cycle_gadget(h: &Graph) -> Result<(HardnessGadget, GadgetRoute), GadgetError> {
    if !is_square_free(h) {
        return Err(precondition("host contains a 4-cycle"));
    }
    if (0..h.vertex_count()).any(|v| h.degree(v).is_multiple_of(2)) {
        return Err(precondition("host has an even-degree vertex"));
    }
    let census = cycle_census(h).ok_or_else(|| precondition("host has no odd cycle"))?;
    let len = census.length;
    if let Some(((i, s), _)) = census.edge_counts.iter().find(|(_, &c)| c % 2 == 1) {
        let j1 = make_cycle_gadget(h, len, std::slice::from_ref(s))?;
        let j2 = make_cycle_gadget(h, len, std::slice::from_ref(i))?;
        let j3 = make_caterpillar(h, &[s.clone(), i.clone()])?;
        let g = checked(assemble_gadget(h, i, s, j1, j2, j3, false)?, h)?;
        return Ok((
            g,
            GadgetRoute::EdgeInOddCycles {
                length: len,
                edge: (i.clone(), s.clone()),
            },
        ));
    }
    // P = v_k … v_{ℓ-1} v_0 as listed; the rest of a cycle through it is v_0 … v_k
    let p = longest_path_in_even_cycles(h)?
        .ok_or_else(|| GadgetError::Internal("no path in an even number of cycles".into()))?;
    let idx: Vec<usize> = p.iter().map(|v| h.index_of(v).unwrap()).collect();
    let cycle = cycle_through(h, len, &idx)
        .ok_or_else(|| GadgetError::Internal("path lies on no shortest odd cycle".into()))?;
    let mut rest: Vec<String> = vec![p[p.len() - 1].clone()];
    rest.extend(cycle[idx.len()..].iter().map(|&v| h.name(v).to_string()));
    rest.push(p[0].clone());
    let k = rest.len() - 1;
    let reversed: Vec<String> = p.iter().rev().cloned().collect();
    let j1 = make_cycle_gadget(h, len, &reversed)?;
    let j2 = make_cycle_gadget(h, len, &p)?;
    let j3 = make_caterpillar(h, &rest)?;
    let g = assemble_gadget(h, &rest[1], &rest[k - 1], j1, j2, j3, false)?;
    Ok((
        checked(g, h)?,
        GadgetRoute::PathInEvenCycles {
            length: len,
            path: p,
        },
    ))
}

/// Gadget for a square-free host with all degrees odd and an odd cycle.
pub fn find_gadget_odd_cycle(h: &Graph) -> Result<HardnessGadget, GadgetError> {
    odd_cycle_gadget(h).map(|(g, _)| g)
}

fn tuple_involution_free(h: &Graph, a: &str, b: &str) -> Result<bool, GadgetError> {
    let dh = DistinguishedGraph::new(h.clone(), names(&[a, b]))?;
    let autos = enumerate_automorphisms(&dh, &SymmetryLimits::default())?;
    Ok(!autos.iter().any(|rho| !rho.is_identity() && rho.is_involution()))
}

/// Candidate even gadgets for a host edge, smallest pattern first.
pub struct EvenGadgetSearch<'a> {
    host: &'a Graph,
    a: String,
    b: String,
    budget: SearchBudget,
    size: usize,
    graphs: Vec<Graph>,
    graph_at: usize,
    current: usize,
    edges: Vec<(String, String)>,
    edge_at: usize,
    examined: usize,
}

impl<'a> EvenGadgetSearch<'a> {
    pub fn examined(&self) -> usize {
        self.examined
    }

    /// The next even gadget in search order, or `BudgetExhausted`.
    pub fn next_gadget(&mut self) -> Result<EvenGadget, GadgetError> {
        let target = DistinguishedGraph::new(self.host.clone(), vec![self.a.clone(), self.b.clone()])?;
        loop {
            if self.edge_at == self.edges.len() {
                while self.graph_at == self.graphs.len() {
                    self.size += 1;
                    if self.size > self.budget.max_candidate_vertices {
                        return Err(GadgetError::BudgetExhausted {
                            candidates: self.examined,
                        });
                    }
                    self.graphs = graphs_on(self.size)
                        .into_iter()
                        .filter(|g| g.is_connected() && is_bipartite(g))
                        .collect();
                    self.graph_at = 0;
                }
                self.current = self.graph_at;
                self.graph_at += 1;
                self.edges = self.graphs[self.current]
                    .edge_names()
                    .into_iter()
                    .flat_map(|(u, v)| [(u.clone(), v.clone()), (v, u)])
                    .collect();
                self.edge_at = 0;
                continue;
            }
            if self.examined == self.budget.max_candidates {
                return Err(GadgetError::BudgetExhausted {
                    candidates: self.examined,
                });
            }
            self.examined += 1;
            let (w, x) = self.edges[self.edge_at].clone();
            self.edge_at += 1;
            let g = &self.graphs[self.current];
            let pattern = DistinguishedGraph::new(g.clone(), vec![w.clone(), x.clone()])?;
            let count = count_distinguished_homs(&pattern, &target)?;
            if !count.is_odd() {
                return Ok(EvenGadget {
                    a: self.a.clone(),
                    b: self.b.clone(),
                    graph: g.clone(),
                    w,
                    x,
                    count,
                });
            }
        }
    }
}

fn check_even_gadget_host(h: &Graph, a: &str, b: &str) -> Result<(), GadgetError> {
    if !h.is_connected() || !is_bipartite(h) {
        return Err(precondition("host must be connected and bipartite"));
    }
    if h.edge_count() < 2 {
        return Err(precondition("host needs more than one edge"));
    }
    if !h.has_edge_named(a, b) {
        return Err(GadgetError::NotAPath(a.to_string(), b.to_string()));
    }
    if !tuple_involution_free(h, a, b)? {
        return Err(precondition(format!("({a}, {b}) is fixed by an involution")));
    }
    Ok(())
}

/// All even gadgets for the edge `(a, b)`, by increasing pattern size.
pub fn even_gadget_candidates<'a>(
    h: &'a Graph,
    a: &str,
    b: &str,
    budget: &SearchBudget,
) -> Result<EvenGadgetSearch<'a>, GadgetError> {
    check_even_gadget_host(h, a, b)?;
    Ok(EvenGadgetSearch {
        host: h,
        a: a.to_string(),
        b: b.to_string(),
        budget: *budget,
        size: 1,
        graphs: Vec::new(),
        graph_at: 0,
        current: 0,
        edges: Vec::new(),
        edge_at: 0,
        examined: 0,
    })
}

/// A smallest even gadget for the edge `(a, b)`.
pub fn find_even_gadget(
    h: &Graph,
    a: &str,
    b: &str,
    budget: &SearchBudget,
) -> Result<EvenGadget, GadgetError> {
    even_gadget_candidates(h, a, b, budget)?.next_gadget()
}

/// The gadget `(a, b, (J, y), (J, z), (y–z))` with `J` the even gadget
/// pinned at `w ↦ a`, `x ↦ b`. A failing step means `eg` was not minimal.
pub fn gadget_from_even_gadget(h: &Graph, eg: &EvenGadget) -> Result<HardnessGadget, GadgetError> {
    if !h.is_connected() || !is_bipartite(h) || !is_square_free(h) {
        return Err(precondition("host must be connected, bipartite and square-free"));
    }
    if (0..h.vertex_count()).any(|v| h.degree(v).is_multiple_of(2)) {
        return Err(precondition("host has an even-degree vertex"));
    }
    let g = &eg.graph;
    let (wi, xi) = match (g.index_of(&eg.w), g.index_of(&eg.x)) {
        (Some(w), Some(x)) if g.has_edge(w, x) => (w, x),
        _ => return Err(precondition("(w, x) is not an edge of the pattern")),
    };
    if g.degree(wi) < 2 || g.degree(xi) < 2 {
        return Err(GadgetError::NotMinimal("a distinguished vertex is a leaf".into()));
    }
    let (i, s) = (eg.a.clone(), eg.b.clone());
    let j = PartiallyLabelledGraph::new(
        g.clone(),
        BTreeMap::from([(eg.w.clone(), i.clone()), (eg.x.clone(), s.clone())]),
    )?;
    let pick = |centre: usize, skip: usize, anchor: &str| -> Result<String, GadgetError> {
        for &c in g.neighbours(centre) {
            if c == skip {
                continue;
            }
            if compute_omega(&j, g.name(c), h)?.contains(anchor) {
                return Ok(g.name(c).to_string());
            }
        }
        Err(GadgetError::NotMinimal(format!("no neighbour of `{}` selects `{anchor}`", g.name(centre))))
    };
    let y = pick(xi, wi, &i)?;
    let z = pick(wi, xi, &s)?;
    let bridge = make_caterpillar(h, &[s.clone(), i.clone()])?;
    let gadget = assemble_gadget(
        h,
        &i,
        &s,
        RootedPiece {
            part: j.clone(),
            root: y,
        },
        RootedPiece { part: j, root: z },
        bridge,
        false,
    )?;
    match verify_hardness_gadget(&gadget, h) {
        GadgetVerdict::Accepted => Ok(gadget),
        GadgetVerdict::Rejected { violation, .. } => {
            Err(GadgetError::NotMinimal(format!("assembled gadget rejected: {violation:?}")))
        }
    }
}

fn bipartite_gadget(
    h: &Graph,
    budget: &SearchBudget,
) -> Result<(HardnessGadget, GadgetRoute), GadgetError> {
    let mut examined = 0;
    for (u, v) in h.edge_names() {
        for (a, b) in [(u.clone(), v.clone()), (v.clone(), u.clone())] {
            if !tuple_involution_free(h, &a, &b)? {
                continue;
            }
            let mut remaining = *budget;
            remaining.max_candidates = budget.max_candidates.saturating_sub(examined);
            let mut search = even_gadget_candidates(h, &a, &b, &remaining)?;
            loop {
                match search.next_gadget() {
                    Ok(eg) => match gadget_from_even_gadget(h, &eg) {
                        Ok(g) => {
                            let route = GadgetRoute::EvenGadget {
                                edge: (a.clone(), b.clone()),
                                pattern_vertices: eg.graph.vertex_count(),
                                candidates: examined + search.examined(),
                            };
                            return Ok((g, route));
                        }
                        Err(GadgetError::NotMinimal(_)) => continue,
                        Err(e) => return Err(e),
                    },
                    Err(GadgetError::BudgetExhausted { .. }) => break,
                    Err(e) => return Err(e),
                }
            }
            examined += search.examined();
            if examined >= budget.max_candidates {
                return Err(GadgetError::BudgetExhausted {
                    candidates: examined,
                });
            }
        }
    }
    Err(GadgetError::BudgetExhausted {
        candidates: examined,
    })
}

/// A verified gadget with the case that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutedGadget {
    pub route: GadgetRoute,
    pub gadget: HardnessGadget,
}

/// Gadget for any connected, square-free, involution-free host on at least
/// two vertices. Only the bipartite all-odd case can run out of budget.
pub fn find_hardness_gadget(h: &Graph, budget: &SearchBudget) -> Result<RoutedGadget, GadgetError> {
    if h.vertex_count() < 2 {
        return Err(precondition("host needs at least two vertices"));
    }
    if !h.is_connected() {
        return Err(precondition("host is disconnected"));
    }
    if !is_square_free(h) {
        return Err(precondition("host contains a 4-cycle"));
    }
    if find_involution(h).is_some() {
        return Err(precondition("host has an involution"));
    }
    let even = (0..h.vertex_count()).filter(|&v| h.degree(v).is_multiple_of(2)).count();
    let (gadget, route) = if even >= 2 {
        let path = two_even_path(h)?;
        (find_gadget_two_even(h)?, GadgetRoute::TwoEven { path })
    } else if even == 1 {
        let split = one_even_split(h)?;
        let g = one_even_from_split(h, &split)?;
        let route = GadgetRoute::OneEven {
            vertex: split.vertex,
            radius: split.radius,
            component: split.component.vertices().to_vec(),
        };
        (g, route)
    } else if odd_girth(h).is_some() {
        odd_cycle_gadget(h)?
    } else {
        bipartite_gadget(h, budget)?
    };
    Ok(RoutedGadget { route, gadget })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{count_pinned_homs, rooted_counts};
    use crate::structure::distance;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    fn spider() -> Graph {
        g(&[("c", "a1"), ("c", "b1"), ("b1", "b2"), ("c", "d1"), ("d1", "d2"), ("d2", "d3")])
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
            edges.push((format!("o{i}"), format!("i{i}")));
            edges.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
        }
        Graph::from_edges(&edges).unwrap()
    }

    #[test]
    fn spider_uses_two_even_route() {
        let h = spider();
        let found = find_hardness_gadget(&h, &SearchBudget::default()).unwrap();
        assert_eq!(
            found.route,
            GadgetRoute::TwoEven {
                path: names(&["b1", "c", "d1"])
            }
        );
        let gd = &found.gadget;
        assert_eq!((gd.i.as_str(), gd.s.as_str()), ("c", "c"));
        for piece in [&gd.j1.part, &gd.j2.part, &gd.j3.part] {
            assert!(!piece.pinning().is_empty());
        }
    }

    #[test]
    fn single_edge_path_gets_a_pinned_pendant() {
        // a and b are the only even vertices and they are adjacent
        let h = g(&[("a", "b"), ("a", "p"), ("b", "q"), ("q", "r"), ("q", "s")]);
        let gd = find_gadget_two_even(&h).unwrap();
        assert_eq!(gd.j3.part.graph().vertex_count(), 3);
        assert_eq!(gd.j3.part.pinning().get("w0").map(String::as_str), Some("a"));
        assert_eq!((gd.i.as_str(), gd.s.as_str()), ("b", "a"));
    }

    #[test]
    fn two_even_preconditions() {
        let k4 = g(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
        assert!(matches!(find_gadget_two_even(&k4), Err(GadgetError::Precondition(_))));
        let c4 = g(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]);
        assert!(matches!(find_gadget_two_even(&c4), Err(GadgetError::Precondition(_))));
    }

    #[test]
    fn spider_bridge_meets_caterpillar_counts() {
        let h = spider();
        let gd = find_gadget_two_even(&h).unwrap();
        let counts = rooted_counts(&gd.j3.part, &["y", "z"], &h).unwrap();
        let n = |a: &str, b: &str| {
            counts
                .get(&names(&[a, b]))
                .map_or(0, |c| c.to_u64().unwrap())
        };
        // v0 = b1, v1 = c, v2 = d1: o ∈ Γ(b1) − c, x ∈ Γ(d1) − c
        assert_eq!(n("b2", "d2"), 0);
        assert_eq!(n("b2", "c"), 1);
        assert_eq!(n("c", "d2"), 1);
        assert_eq!(n("c", "c") % 2, 1);
    }

    #[test]
    fn petersen_takes_the_even_path_route() {
        let h = petersen();
        let (gd, route) = odd_cycle_gadget(&h).unwrap();
        match route {
            GadgetRoute::PathInEvenCycles { length, path } => {
                assert_eq!(length, 5);
                assert_eq!(path.len(), 3);
            }
            other => panic!("unexpected route {other:?}"),
        }
        assert!(verify_hardness_gadget(&gd, &h).is_accepted());
    }

    #[test]
    fn triangle_edge_uses_odd_count_route() {
        // triangle with pendant leaves to make all degrees odd; square-free
        let h = g(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "p"), ("b", "q"), ("c", "r")]);
        let (gd, route) = odd_cycle_gadget(&h).unwrap();
        assert!(matches!(route, GadgetRoute::EdgeInOddCycles { length: 3, .. }));
        assert!(verify_hardness_gadget(&gd, &h).is_accepted());
    }

    #[test]
    fn odd_cycle_rejects_bipartite_hosts() {
        let h = g(&[("a", "b")]);
        assert!(matches!(find_gadget_odd_cycle(&h), Err(GadgetError::Precondition(_))));
    }

    #[test]
    fn path_homs_track_even_vertices() {
        // host a–b–c, root at a, pattern a path with r + 1 = 2 edges
        let h = g(&[("a", "b"), ("b", "c")]);
        let p = PartiallyLabelledGraph::new(
            g(&[("x0", "x1"), ("x1", "x2")]),
            BTreeMap::from([("x0".into(), "a".into())]),
        )
        .unwrap();
        assert_eq!(count_pinned_homs(&p, &h).unwrap().to_u64(), Some(2));
        // the single 1-path from a reaches b, of even degree
        assert_eq!(distance(&h, "a", "b").unwrap(), Some(1));
        assert_eq!(h.degree(h.index_of("b").unwrap()) % 2, 0);
    }

    #[test]
    fn even_gadget_on_a_path() {
        let h = g(&[("a", "b"), ("b", "c")]);
        let eg = find_even_gadget(&h, "a", "b", &SearchBudget::default()).unwrap();
        assert_eq!(eg.graph.vertex_count(), 3);
        assert_eq!(eg.count.to_u64(), Some(2));
        assert!(eg.graph.edge_count() > 1);
        let edge = g(&[("a", "b")]);
        assert!(matches!(
            find_even_gadget(&edge, "a", "b", &SearchBudget::default()),
            Err(GadgetError::Precondition(_))
        ));
    }

    #[test]
    fn edge_host_is_refused() {
        let k2 = g(&[("a", "b")]);
        assert!(matches!(
            find_hardness_gadget(&k2, &SearchBudget::default()),
            Err(GadgetError::Precondition(_))
        ));
    }
}
