//! Caterpillars, neighbourhood and cycle gadgets, and path extension.

use std::collections::{BTreeMap, BTreeSet};

use super::{BridgePiece, GadgetError, RootedPiece};
use crate::graph::{Graph, PartiallyLabelledGraph};

fn check_path(h: &Graph, path: &[String]) -> Result<(), GadgetError> {
    let mut seen = BTreeSet::new();
    for v in path {
        if !h.contains(v) {
            return Err(GadgetError::UnknownVertex(v.clone()));
        }
        if !seen.insert(v) {
            return Err(GadgetError::Precondition(format!("`{v}` repeats on the path")));
        }
    }
    for w in path.windows(2) {
        if !h.has_edge_named(&w[0], &w[1]) {
            return Err(GadgetError::NotAPath(w[0].clone(), w[1].clone()));
        }
    }
    Ok(())
}

/// The caterpillar of the host path `v₀ … v_k`: spine `y u1 … u{k-1} z`
/// with a leg `u_j–w_j` and `w_j` pinned to `v_j`.
pub fn make_caterpillar(h: &Graph, path: &[String]) -> Result<BridgePiece, GadgetError> {
    if path.len() < 2 {
        return Err(GadgetError::DegeneratePath);
    }
    check_path(h, path)?;
    let k = path.len() - 1;
    let mut spine = vec!["y".to_string()];
    spine.extend((1..k).map(|j| format!("u{j}")));
    spine.push("z".to_string());
    let mut vertices = spine.clone();
    let mut edges: Vec<(String, String)> =
        spine.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let mut pinning = BTreeMap::new();
    for j in 1..k {
        let leg = format!("w{j}");
        edges.push((format!("u{j}"), leg.clone()));
        pinning.insert(leg.clone(), path[j].clone());
        vertices.push(leg);
    }
    let part = PartiallyLabelledGraph::new(Graph::new(vertices, edges)?, pinning)?;
    Ok(BridgePiece {
        part,
        y: "y".into(),
        z: "z".into(),
    })
}

/// A single edge `x–w` with `w` pinned to `v`; its Ω-set is Γ(v).
pub fn make_neighbourhood(h: &Graph, v: &str) -> Result<RootedPiece, GadgetError> {
    if !h.contains(v) {
        return Err(GadgetError::UnknownVertex(v.to_string()));
    }
    let g = Graph::from_edges(&[("x", "w")])?;
    let part = PartiallyLabelledGraph::new(g, BTreeMap::from([("w".into(), v.to_string())]))?;
    Ok(RootedPiece {
        part,
        root: "x".into(),
    })
}

/// The cycle `x u1 … u{len-1} x` with `u1 … u_k` pinned along the host path.
pub fn make_cycle_gadget(
    h: &Graph,
    length: usize,
    path: &[String],
) -> Result<RootedPiece, GadgetError> {
    if path.is_empty() {
        return Err(GadgetError::DegeneratePath);
    }
    if length <= 2.max(path.len()) {
        return Err(GadgetError::CycleTooShort {
            length,
            vertices: path.len(),
        });
    }
    check_path(h, path)?;
    let mut ring = vec!["x".to_string()];
    ring.extend((1..length).map(|j| format!("u{j}")));
    let edges: Vec<(String, String)> = (0..length)
        .map(|j| (ring[j].clone(), ring[(j + 1) % length].clone()))
        .collect();
    let pinning = path
        .iter()
        .enumerate()
        .map(|(j, v)| (format!("u{}", j + 1), v.clone()))
        .collect();
    let part = PartiallyLabelledGraph::new(Graph::new(ring, edges)?, pinning)?;
    Ok(RootedPiece {
        part,
        root: "x".into(),
    })
}

/// Hangs a fresh path with `r + 1` edges off every vertex. Pins are kept.
pub fn attach_paths(j: &PartiallyLabelledGraph, r: usize) -> PartiallyLabelledGraph {
    let g = j.graph();
    let taken: BTreeSet<&str> = g.vertices().iter().map(String::as_str).collect();
    let mut vertices: Vec<String> = g.vertices().to_vec();
    let mut edges = g.edge_names();
    for v in g.vertices() {
        let mut prev = v.clone();
        for step in 1..=r + 1 {
            let mut name = format!("{v}~{step}");
            while taken.contains(name.as_str()) {
                name.push('~');
            }
            edges.push((prev, name.clone()));
            vertices.push(name.clone());
            prev = name;
        }
    }
    let graph = Graph::new(vertices, edges).expect("fresh path vertices");
    PartiallyLabelledGraph::new(graph, j.pinning().clone()).expect("pins unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::rooted_odd_tuples;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn p3() -> Graph {
        Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn caterpillar_shapes() {
        let h = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        let one = make_caterpillar(&h, &names(&["a", "b"])).unwrap();
        assert_eq!(one.part.graph().edge_names(), [("y".into(), "z".into())]);
        assert!(one.part.pinning().is_empty());

        let two = make_caterpillar(&h, &names(&["a", "b", "c"])).unwrap();
        assert_eq!(two.part.graph().vertex_count(), 4);
        assert_eq!(two.part.pinning().get("w1").unwrap(), "b");
        assert!(two.part.graph().has_edge_named("y", "u1"));
        assert!(two.part.graph().has_edge_named("u1", "z"));

        let three = make_caterpillar(&h, &names(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(three.part.graph().vertex_count(), 6);
        assert_eq!(three.part.pinning().len(), 2);
        assert_eq!(three.part.pinning().get("w2").unwrap(), "c");
    }

    #[test]
    fn caterpillar_rejects_bad_paths() {
        let h = p3();
        assert_eq!(
            make_caterpillar(&h, &names(&["a"])),
            Err(GadgetError::DegeneratePath)
        );
        assert!(matches!(
            make_caterpillar(&h, &names(&["a", "c"])),
            Err(GadgetError::NotAPath(..))
        ));
        assert!(matches!(
            make_caterpillar(&h, &names(&["a", "q"])),
            Err(GadgetError::UnknownVertex(_))
        ));
    }

    #[test]
    fn neighbourhood_selects_neighbours() {
        let h = p3();
        let j = make_neighbourhood(&h, "b").unwrap();
        let odd = rooted_odd_tuples(&j.part, &[&j.root], &h).unwrap();
        assert_eq!(odd, [names(&["a"]), names(&["c"])]);

        let lonely = Graph::new(["a", "b", "q"], [("a", "b")]).unwrap();
        let j = make_neighbourhood(&lonely, "q").unwrap();
        assert!(rooted_odd_tuples(&j.part, &[&j.root], &lonely).unwrap().is_empty());
    }

    #[test]
    fn cycle_gadget_shape_and_bounds() {
        let c5 = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
            .unwrap();
        let j = make_cycle_gadget(&c5, 5, &names(&["a"])).unwrap();
        assert_eq!(j.part.graph().vertex_count(), 5);
        assert_eq!(j.part.graph().edge_count(), 5);
        assert!(j.part.graph().has_edge_named("x", "u1"));
        let counts = crate::hom::rooted_counts(&j.part, &[&j.root], &c5).unwrap();
        assert_eq!(counts.len(), 2);
        assert!(counts.values().all(|c| c.to_u64() == Some(1)));
        assert!(matches!(
            make_cycle_gadget(&c5, 2, &names(&["a"])),
            Err(GadgetError::CycleTooShort { .. })
        ));
        assert!(matches!(
            make_cycle_gadget(&c5, 3, &names(&["a", "b", "c"])),
            Err(GadgetError::CycleTooShort { .. })
        ));
    }

    #[test]
    fn attached_paths_grow_the_graph() {
        let single = PartiallyLabelledGraph::unpinned(Graph::new(["v"], Vec::<(&str, &str)>::new()).unwrap());
        let grown = attach_paths(&single, 1);
        assert_eq!(grown.graph().vertex_count(), 3);
        assert_eq!(grown.graph().edge_count(), 2);
        assert_eq!(grown.graph().degree(grown.graph().index_of("v").unwrap()), 1);

        let j = make_caterpillar(&p3(), &names(&["a", "b", "c"])).unwrap().part;
        for r in 0..3 {
            let g = attach_paths(&j, r);
            assert_eq!(g.graph().vertex_count(), 4 + 4 * (r + 1));
            assert_eq!(g.graph().edge_count(), 3 + 4 * (r + 1));
            assert_eq!(g.pinning(), j.pinning());
        }
    }
}
