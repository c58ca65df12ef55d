//! Named hosts used by tests, the acceptance suite and the CLI battery.

use std::collections::BTreeMap;

use crate::gadget::{assemble_gadget, make_caterpillar, BridgePiece, HardnessGadget, RootedPiece};
use crate::graph::{Graph, PartiallyLabelledGraph};

fn from_pairs(edges: &[(&str, &str)]) -> Graph {
    Graph::from_edges(edges).expect("fixture edges are valid")
}

/// A 5-cycle and a 6-cycle sharing the edge a–b, with the chord c–f.
pub fn fig1_h1() -> Graph {
    from_pairs(&[
        ("a", "b"),
        ("b", "c"),
        ("c", "d"),
        ("d", "e"),
        ("e", "a"),
        ("a", "i"),
        ("i", "h"),
        ("h", "g"),
        ("g", "f"),
        ("f", "b"),
        ("c", "f"),
    ])
}

/// Two 5-cycles sharing a–b, with c and f joined through the vertex `i`.
pub fn fig1_h2() -> Graph {
    from_pairs(&[
        ("a", "b"),
        ("b", "c"),
        ("c", "d"),
        ("d", "e"),
        ("e", "a"),
        ("a", "h"),
        ("h", "g"),
        ("g", "f"),
        ("f", "b"),
        ("c", "i"),
        ("i", "f"),
    ])
}

/// The vertex of [`fig1_h2`] its reduction ends at.
pub const FIG1_H2_STAR: &str = "i";

/// Three triangles a_j b_j c_j; c_j is also joined to a_{j+1}, and d_j
/// subdivides the edge a_j a_{j+1}. The rotation a1 → a2 → a3 generates the
/// automorphism group.
pub fn fig3_host() -> Graph {
    let mut edges = Vec::new();
    for j in 1..=3 {
        let next = j % 3 + 1;
        let n = |p: &str, k: usize| format!("{p}{k}");
        edges.push((n("a", j), n("b", j)));
        edges.push((n("b", j), n("c", j)));
        edges.push((n("c", j), n("a", j)));
        edges.push((n("c", j), n("a", next)));
        edges.push((n("a", j), n("d", j)));
        edges.push((n("d", j), n("a", next)));
    }
    Graph::from_edges(&edges).expect("fixture edges are valid")
}

/// The square o s i x (o = v0', s = v0, i = v1, x = v1') with a pendant at
/// x and a 2-path at o.
pub fn square_host() -> Graph {
    from_pairs(&[
        ("v0'", "v0"),
        ("v0", "v1"),
        ("v1", "v1'"),
        ("v1'", "a"),
        ("v1'", "v0'"),
        ("v0'", "b"),
        ("b", "c"),
    ])
}

/// Two paths v0…vk and v0'…vk' joined by rungs v_j–v_j', plus a pendant
/// `d` at vk'.
pub fn ladder(k: usize) -> Graph {
    assert!(k >= 1);
    let mut edges = Vec::new();
    for j in 0..=k {
        edges.push((format!("v{j}"), format!("v{j}'")));
        if j < k {
            edges.push((format!("v{j}"), format!("v{}", j + 1)));
            edges.push((format!("v{j}'"), format!("v{}'", j + 1)));
        }
    }
    edges.push((format!("v{k}'"), "d".to_string()));
    Graph::from_edges(&edges).expect("fixture edges are valid")
}

fn pinned_path(left: &str, root: &str, right: &str, to_left: &str, to_right: &str) -> RootedPiece {
    let g = from_pairs(&[(left, root), (root, right)]);
    let pins = BTreeMap::from([
        (left.to_string(), to_left.to_string()),
        (right.to_string(), to_right.to_string()),
    ]);
    RootedPiece {
        part: PartiallyLabelledGraph::new(g, pins).expect("pins exist"),
        root: root.to_string(),
    }
}

/// The hand-made gadget for [`ladder`]`(k)`, k ≥ 2: `y` between pins at
/// v0' and v1, `z` between pins at v1' and v2, and the edge y–z.
pub fn ladder_gadget(k: usize) -> HardnessGadget {
    assert!(k >= 2);
    let h = ladder(k);
    let j1 = pinned_path("p", "y", "q", "v0'", "v1");
    let j2 = pinned_path("p", "z", "q", "v1'", "v2");
    let j3: BridgePiece =
        make_caterpillar(&h, &["v1".to_string(), "v1'".to_string()]).expect("rung is an edge");
    assemble_gadget(&h, "v1'", "v1", j1, j2, j3, true).expect("pieces are valid")
}

/// Outer 5-cycle o0…o4, spokes o_j–i_j, inner pentagram i_j–i_{j+2}.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for j in 0..5 {
        edges.push((format!("o{j}"), format!("o{}", (j + 1) % 5)));
        edges.push((format!("o{j}"), format!("i{j}")));
        edges.push((format!("i{j}"), format!("i{}", (j + 2) % 5)));
    }
    Graph::from_edges(&edges).expect("fixture edges are valid")
}

/// The smallest involution-free tree: arms of lengths 1, 2 and 3 at `c`.
pub fn tree7() -> Graph {
    from_pairs(&[
        ("c", "a1"),
        ("c", "b1"),
        ("b1", "b2"),
        ("c", "d1"),
        ("d1", "d2"),
        ("d2", "d3"),
    ])
}

/// A triangle with a pendant at each corner: all degrees odd, square-free.
pub fn triangle_with_pendants() -> Graph {
    from_pairs(&[("a", "b"), ("b", "c"), ("c", "a"), ("a", "p"), ("b", "q"), ("c", "r")])
}

/// Every named host with its file stem.
pub fn named_hosts() -> Vec<(&'static str, Graph)> {
    vec![
        ("fig1-h1", fig1_h1()),
        ("fig1-h2", fig1_h2()),
        ("fig3", fig3_host()),
        ("square-h1", square_host()),
        ("ladder-3", ladder(3)),
        ("petersen", petersen()),
        ("tree7", tree7()),
        ("triangle-pendants", triangle_with_pendants()),
    ]
}
