//! Seeded random graphs and the host families the property suites sample.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::structure::{degree_profile, is_bipartite, is_square_free, odd_girth};
use crate::symmetry::catalog::graphs_up_to;
use crate::symmetry::is_involution_free;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn name(i: usize) -> String {
    format!("v{i}")
}

fn build(n: usize, edges: &BTreeSet<(usize, usize)>) -> Graph {
    Graph::new(
        (0..n).map(name),
        edges.iter().map(|&(u, v)| (name(u), name(v))),
    )
    .expect("generated edges are simple")
}

/// G(n, p) on `v0 … v{n-1}`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    build(n, &edges)
}

fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> BTreeSet<(usize, usize)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

fn adjacency(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

fn closes_square(adj: &[BTreeSet<usize>], u: usize, v: usize) -> bool {
    // a new edge u–v lies on a 4-cycle iff some neighbour of u is adjacent
    // to some neighbour of v, or u and v share two neighbours (already a square)
    adj[u]
        .iter()
        .filter(|&&a| a != v)
        .any(|&a| adj[v].iter().any(|&b| b != u && b != a && adj[a].contains(&b)))
}

/// A connected square-free graph: a random tree plus up to `extra` random
/// chords that close no 4-cycle.
pub fn random_square_free_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Graph {
    let mut edges = random_tree_edges(rng, n);
    let mut adj = adjacency(n, &edges);
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < 20 * (extra + 1) && n >= 3 {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let (u, v) = (u.min(v), u.max(v));
        if u == v || adj[u].contains(&v) || closes_square(&adj, u, v) {
            continue;
        }
        edges.insert((u, v));
        adj[u].insert(v);
        adj[v].insert(u);
        added += 1;
    }
    build(n, &edges)
}

/// A square-free host with a path whose interior vertices all have odd
/// degree.
#[derive(Debug, Clone)]
pub struct CaterpillarCase {
    pub host: Graph,
    pub path: Vec<String>,
}

fn qualifying_paths(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 2 {
            out.push(path.clone());
        }
        let last = *path.last().expect("non-empty");
        if path.len() >= 2 && g.degree(last).is_multiple_of(2) {
            return;
        }
        for &w in g.neighbours(last) {
            if !path.contains(&w) {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        extend(g, &mut vec![v], &mut out);
    }
    out
}

/// `count` cases, each a fresh random square-free host on 5 to 10
/// vertices with one qualifying path chosen uniformly.
pub fn caterpillar_cases(seed: u64, count: usize) -> Vec<CaterpillarCase> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(5..=10);
        let extra = rng.gen_range(0..=n / 2);
        let host = random_square_free_graph(&mut rng, n, extra);
        let paths = qualifying_paths(&host);
        let Some(p) = paths.choose(&mut rng) else { continue };
        let path = p.iter().map(|&v| host.name(v).to_string()).collect();
        out.push(CaterpillarCase { host, path });
    }
    out
}

/// `count` random graphs on 5 to 10 vertices that contain an odd cycle.
pub fn odd_girth_hosts(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(5..=10);
        let p = rng.gen_range(0.2..0.5);
        let g = random_graph(&mut rng, n, p);
        if odd_girth(&g).is_some() {
            out.push(g);
        }
    }
    out
}

/// Battery inputs: every graph on at most 5 vertices up to isomorphism,
/// then `random` seeded graphs on 6 to 8 vertices.
pub fn battery_graphs(seed: u64, random: usize) -> Vec<Graph> {
    let mut out = graphs_up_to(5);
    let mut rng = seeded(seed);
    for _ in 0..random {
        let n = rng.gen_range(6..=8);
        let p = rng.gen_range(0.15..0.6);
        out.push(random_graph(&mut rng, n, p));
    }
    out
}

fn two_core(n: usize, edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut adj = adjacency(n, edges);
    let mut stack: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
    while let Some(v) = stack.pop() {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for w in nb {
            adj[v].remove(&w);
            adj[w].remove(&v);
            if adj[w].len() == 1 {
                stack.push(w);
            }
        }
    }
    edges.iter().copied().filter(|&(u, v)| adj[u].contains(&v)).collect()
}

fn bipartite_all_odd_candidate<R: Rng>(rng: &mut R, n: usize) -> Option<Graph> {
    // a tree has an involution whenever all its degrees are odd, so start
    // from the 2-core of a tree with long chords, then give each even
    // vertex one pendant
    let mut edges = random_tree_edges(rng, n);
    for _ in 0..2 * n {
        let g = build(n, &edges);
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        // odd distance keeps the graph bipartite, at least 5 keeps girth ≥ 6
        let d = crate::structure::distance(&g, &name(u), &name(v)).ok()??;
        if d >= 5 && d % 2 == 1 {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let core = two_core(n, &edges);
    let kept: BTreeSet<usize> = core.iter().flat_map(|&(u, v)| [u, v]).collect();
    if kept.is_empty() {
        return None;
    }
    let index: Vec<usize> = {
        let mut ix = vec![usize::MAX; n];
        for (k, &v) in kept.iter().enumerate() {
            ix[v] = k;
        }
        ix
    };
    let mut edges: BTreeSet<(usize, usize)> =
        core.iter().map(|&(u, v)| (index[u], index[v])).collect();
    let adj = adjacency(kept.len(), &edges);
    let mut next = kept.len();
    for (v, nb) in adj.iter().enumerate() {
        if nb.len() % 2 == 0 {
            edges.insert((v, next));
            next += 1;
        }
    }
    let g = build(next, &edges);
    let ok = g.is_connected()
        && is_bipartite(&g)
        && is_square_free(&g)
        && degree_profile(&g).positive_even().is_empty()
        && is_involution_free(&g);
    ok.then_some(g)
}

fn one_even_candidate<R: Rng>(rng: &mut R, n: usize, tail: bool) -> Option<Graph> {
    let g = random_square_free_graph(rng, n, n / 2 + 1);
    let edges: BTreeSet<(usize, usize)> = g.edges().collect();
    let core = two_core(n, &edges);
    let kept: Vec<usize> = core
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if kept.is_empty() {
        return None;
    }
    let mut index = vec![usize::MAX; n];
    for (k, &v) in kept.iter().enumerate() {
        index[v] = k;
    }
    let mut edges: BTreeSet<(usize, usize)> =
        core.iter().map(|&(u, v)| (index[u], index[v])).collect();
    let adj = adjacency(kept.len(), &edges);
    let even: Vec<usize> = (0..kept.len()).filter(|&v| adj[v].len().is_multiple_of(2)).collect();
    // keep one even vertex; the rest get a pendant
    let keep = if even.is_empty() { rng.gen_range(0..kept.len()) } else { even[rng.gen_range(0..even.len())] };
    let mut next = kept.len();
    for v in 0..kept.len() {
        if adj[v].len().is_multiple_of(2) != (v == keep) {
            edges.insert((v, next));
            next += 1;
        }
    }
    if tail {
        // v–m–l moves the even vertex one step off the cycle
        edges.insert((keep, next));
        edges.insert((next, next + 1));
        next += 2;
    }
    let h = build(next, &edges);
    let ok = h.is_connected()
        && degree_profile(&h).positive_even().len() == 1
        && is_square_free(&h)
        && is_involution_free(&h);
    ok.then_some(h)
}

/// `count` connected, square-free, involution-free hosts with exactly one
/// vertex of positive even degree. Alternate hosts have that vertex on a
/// cycle and one step away from one.
pub fn one_even_hosts(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count && draws < 10_000 * count.max(1) {
        draws += 1;
        let n = rng.gen_range(5..=9);
        if let Some(h) = one_even_candidate(&mut rng, n, out.len() % 2 == 1) {
            out.push(h);
        }
    }
    out
}

/// A connected, bipartite, square-free, involution-free host in which every
/// vertex has odd degree. Draws seeded candidates until one qualifies;
/// returns `None` after `attempts` draws.
pub fn bipartite_all_odd_host(seed: u64, attempts: usize) -> Option<Graph> {
    let mut rng = seeded(seed);
    for _ in 0..attempts {
        let n = rng.gen_range(8..=14);
        if let Some(g) = bipartite_all_odd_candidate(&mut rng, n) {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graphs_are_reproducible() {
        let a = random_graph(&mut seeded(7), 8, 0.4);
        let b = random_graph(&mut seeded(7), 8, 0.4);
        assert_eq!(a, b);
        assert_eq!(a.vertex_count(), 8);
    }

    #[test]
    fn square_free_generator_holds() {
        let mut rng = seeded(1);
        for _ in 0..50 {
            let g = random_square_free_graph(&mut rng, 9, 6);
            assert!(is_square_free(&g));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn caterpillar_cases_qualify() {
        for case in caterpillar_cases(3, 20) {
            assert!(is_square_free(&case.host));
            let interior = &case.path[1..case.path.len() - 1];
            for v in interior {
                let k = case.host.index_of(v).unwrap();
                assert_eq!(case.host.degree(k) % 2, 1);
            }
            for w in case.path.windows(2) {
                assert!(case.host.has_edge_named(&w[0], &w[1]));
            }
        }
    }

    #[test]
    fn battery_size() {
        assert_eq!(battery_graphs(0, 10).len(), 63);
    }

    #[test]
    fn bipartite_all_odd_host_found() {
        let g = bipartite_all_odd_host(0, 2000).expect("generator finds a host");
        assert!(g.is_connected());
        assert!(is_bipartite(&g));
        assert!(degree_profile(&g).positive_even().is_empty());
    }
}
