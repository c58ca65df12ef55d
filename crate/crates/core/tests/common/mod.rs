//! Brute-force oracles shared by the integration tests. They use only the
//! plain graph accessors, never the counting or symmetry engines.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use parhom::{Graph, PartiallyLabelledGraph};

/// Vertices of `g` in an order where each vertex after the first of its
/// component is adjacent to an earlier one, starting from `first`.
fn search_order(g: &Graph, first: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let starts = first.iter().copied().chain(0..n).collect::<Vec<_>>();
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Number of homomorphisms G → H with `fixed[v] = Some(h)` forcing v ↦ h.
pub fn count_with(g: &Graph, h: &Graph, fixed: &[Option<usize>]) -> u128 {
    let allowed: Vec<Option<Vec<usize>>> = fixed.iter().map(|f| f.map(|t| vec![t])).collect();
    count_restricted(g, h, &allowed)
}

/// Number of homomorphisms G → H sending each v with `allowed[v] =
/// Some(set)` into that set.
pub fn count_restricted(g: &Graph, h: &Graph, allowed: &[Option<Vec<usize>>]) -> u128 {
    let mut first: Vec<usize> = (0..g.vertex_count()).filter(|&v| allowed[v].is_some()).collect();
    first.sort_by_key(|&v| allowed[v].as_ref().map_or(0, Vec::len));
    let order = search_order(g, &first);
    let mut image = vec![usize::MAX; g.vertex_count()];
    let everything: Vec<usize> = (0..h.vertex_count()).collect();
    fn go(
        k: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        allowed: &[Option<Vec<usize>>],
        everything: &[usize],
        image: &mut Vec<usize>,
    ) -> u128 {
        if k == order.len() {
            return 1;
        }
        let v = order[k];
        let candidates = allowed[v].as_deref().unwrap_or(everything);
        let mut total = 0;
        for &t in candidates {
            let ok = g
                .neighbours(v)
                .iter()
                .all(|&w| image[w] == usize::MAX || h.has_edge(t, image[w]));
            if ok {
                image[v] = t;
                total += go(k + 1, order, g, h, allowed, everything, image);
                image[v] = usize::MAX;
            }
        }
        total
    }
    go(0, &order, g, h, allowed, &everything, &mut image)
}

pub fn count_homs(g: &Graph, h: &Graph) -> u128 {
    count_with(g, h, &vec![None; g.vertex_count()])
}

/// Homomorphisms of G(J) respecting J's pins plus the extra `pins`.
pub fn count_pinned(j: &PartiallyLabelledGraph, h: &Graph, pins: &[(&str, &str)]) -> u128 {
    let g = j.graph();
    let mut fixed = vec![None; g.vertex_count()];
    let all = j
        .pinning()
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .chain(pins.iter().copied());
    for (v, t) in all {
        let v = g.index_of(v).expect("pinned vertex exists");
        let t = h.index_of(t).expect("pin target exists");
        if fixed[v].is_some_and(|prev| prev != t) {
            return 0;
        }
        fixed[v] = Some(t);
    }
    count_with(g, h, &fixed)
}

/// |I(G)| by subset enumeration.
pub fn independent_sets(g: &Graph) -> u128 {
    let n = g.vertex_count();
    assert!(n < 25);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << n)
        .filter(|&s| edges.iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .count() as u128
}

/// Every automorphism as an image vector, by backtracking on adjacency.
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let order = search_order(g, &[]);
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    fn go(
        k: usize,
        order: &[usize],
        g: &Graph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(image.clone());
            return;
        }
        let v = order[k];
        for t in 0..g.vertex_count() {
            if used[t] || g.degree(t) != g.degree(v) {
                continue;
            }
            let ok = order[..k].iter().all(|&w| g.has_edge(v, w) == g.has_edge(t, image[w]));
            if ok {
                image[v] = t;
                used[t] = true;
                go(k + 1, order, g, image, used, out);
                used[t] = false;
                image[v] = usize::MAX;
            }
        }
    }
    go(0, &order, g, &mut image, &mut used, &mut out);
    out
}

pub fn has_involution(g: &Graph) -> bool {
    automorphisms(g)
        .iter()
        .any(|a| a.iter().enumerate().any(|(v, &t)| v != t) && a.iter().enumerate().all(|(v, &t)| a[t] == v))
}

/// Orbits of r-tuples under the automorphism group, as sets of index tuples.
pub fn tuple_orbits(g: &Graph, r: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let autos = automorphisms(g);
    let n = g.vertex_count();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = n.pow(r as u32);
    for code in 0..total {
        let mut t = vec![0; r];
        let mut c = code;
        for slot in (0..r).rev() {
            t[slot] = c % n;
            c /= n;
        }
        if seen.contains(&t) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> =
            autos.iter().map(|a| t.iter().map(|&v| a[v]).collect()).collect();
        seen.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    out
}

/// Number of cycles of length `len` through the edge u–v.
pub fn cycles_through_edge(g: &Graph, u: usize, v: usize, len: usize) -> usize {
    // simple paths v → u of exactly len − 1 edges that avoid the edge itself
    fn go(g: &Graph, at: usize, target: usize, left: usize, on: &mut Vec<bool>) -> usize {
        if left == 0 {
            return (at == target) as usize;
        }
        let mut total = 0;
        for &w in g.neighbours(at) {
            if w == target && left == 1 {
                total += 1;
            } else if !on[w] && w != target {
                on[w] = true;
                total += go(g, w, target, left - 1, on);
                on[w] = false;
            }
        }
        total
    }
    let mut on = vec![false; g.vertex_count()];
    on[v] = true;
    on[u] = true;
    let mut total = 0;
    for &w in g.neighbours(v) {
        if w != u {
            on[w] = true;
            total += go(g, w, u, len - 2, &mut on);
            on[w] = false;
        }
    }
    total
}

/// Shortest odd cycle length, by trying lengths 3, 5, … through each edge.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (3..=g.vertex_count())
        .step_by(2)
        .find(|&len| edges.iter().any(|&(u, v)| cycles_through_edge(g, u, v, len) > 0))
}

pub fn names(g: &Graph) -> BTreeMap<String, usize> {
    g.vertices().iter().enumerate().map(|(k, v)| (v.clone(), k)).collect()
}
