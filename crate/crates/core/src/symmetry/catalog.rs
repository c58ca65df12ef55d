//! Small graphs up to isomorphism, generated by adding one vertex at a time.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::auto::are_isomorphic;
use crate::graph::Graph;

/// Largest vertex count the catalog will generate.
pub const MAX_CATALOG_VERTICES: usize = 8;

fn vertex_name(i: usize) -> String {
    format!("v{i}")
}

/// Isomorphism-invariant bucket key: edge count and the sorted list of
/// (degree, sorted neighbour degrees).
fn invariant(g: &Graph) -> (usize, Vec<(usize, Vec<usize>)>) {
    let mut profile: Vec<(usize, Vec<usize>)> = (0..g.vertex_count())
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbours(v).iter().map(|&w| g.degree(w)).collect();
            nb.sort_unstable();
            (g.degree(v), nb)
        })
        .collect();
    profile.sort();
    (g.edge_count(), profile)
}

fn extend(previous: &[Graph], n: usize) -> Vec<Graph> {
    let mut buckets: HashMap<(usize, Vec<(usize, Vec<usize>)>), Vec<usize>> = HashMap::new();
    let mut out: Vec<Graph> = Vec::new();
    let vertices: Vec<String> = (0..n).map(vertex_name).collect();
    for base in previous {
        let old_edges = base.edge_names();
        for mask in 0u32..(1 << (n - 1)) {
            let mut edges = old_edges.clone();
            for u in 0..n - 1 {
                if mask >> u & 1 == 1 {
                    edges.push((vertex_name(u), vertex_name(n - 1)));
                }
            }
            let g = Graph::new(vertices.clone(), edges).expect("fresh vertex");
            let key = invariant(&g);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&k| are_isomorphic(&out[k], &g)) {
                continue;
            }
            bucket.push(out.len());
            out.push(g);
        }
    }
    // stable within edge count, which keeps sparse candidates first
    out.sort_by_key(Graph::edge_count);
    out
}

fn cache() -> &'static Mutex<Vec<Vec<Graph>>> {
    static CACHE: OnceLock<Mutex<Vec<Vec<Graph>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![vec![Graph::empty()]]))
}

/// One graph per isomorphism class on exactly `n` vertices (named `v0`,
/// `v1`, …), ordered by edge count. Panics above [`MAX_CATALOG_VERTICES`].
pub fn graphs_on(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_CATALOG_VERTICES, "catalog limited to {MAX_CATALOG_VERTICES} vertices");
    let mut levels = cache().lock().expect("catalog lock");
    while levels.len() <= n {
        let k = levels.len();
        let next = extend(&levels[k - 1], k);
        levels.push(next);
    }
    levels[n].clone()
}

/// All graphs on at most `n` vertices up to isomorphism, smallest first.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(graphs_on).collect()
}
