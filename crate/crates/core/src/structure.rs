//! Structural predicates and cycle censuses: squares, bipartiteness, odd
//! girth, distance spheres, degree profiles and counts of short odd cycles
//! through edges and paths.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("vertex `{0}` is not in the graph")]
    UnknownVertex(String),
    #[error("cycle length {given} is not the odd girth ({odd_girth:?})")]
    NotOddGirth { given: usize, odd_girth: Option<usize> },
    #[error("`{0:?}` is not a path of the graph")]
    NotAPath(Vec<String>),
    #[error("path has {vertices} vertices; it must have fewer than {length}")]
    PathTooLong { vertices: usize, length: usize },
    #[error("edge ({0}, {1}) lies in an odd number of cycles")]
    OddEdgeCount(String, String),
}

fn index(g: &Graph, v: &str) -> Result<usize, StructureError> {
    g.index_of(v)
        .ok_or_else(|| StructureError::UnknownVertex(v.to_string()))
}

/// True iff no two distinct vertices have two common neighbours, i.e. the
/// graph contains no 4-cycle.
pub fn is_square_free(g: &Graph) -> bool {
    for u in 0..g.vertex_count() {
        // mark vertices reached from u in two steps; a repeat closes a square
        let mut reached = BTreeSet::new();
        for &m in g.neighbours(u) {
            for &w in g.neighbours(m) {
                if w != u && !reached.insert(w) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_bipartite(g: &Graph) -> bool {
    bipartition(g).is_some()
}

/// Side (0 or 1) of every vertex, if the graph is bipartite. The least
/// vertex of each component gets side 0.
pub fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

fn bfs(g: &Graph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest odd cycle, absent for bipartite graphs.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    // from each source, an edge between two vertices at equal distance d
    // closes an odd closed walk of length 2d + 1; the minimum over all
    // sources is the odd girth
    let mut best: Option<usize> = None;
    for s in 0..g.vertex_count() {
        let dist = bfs(g, s);
        for (u, w) in g.edges() {
            if dist[u] != usize::MAX && dist[u] == dist[w] {
                let len = 2 * dist[u] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

/// Vertices at distance exactly `r` from `v`.
pub fn ball_at_distance(g: &Graph, v: &str, r: usize) -> Result<BTreeSet<String>, StructureError> {
    let dist = bfs(g, index(g, v)?);
    Ok((0..g.vertex_count())
        .filter(|&u| dist[u] == r)
        .map(|u| g.name(u).to_string())
        .collect())
}

pub fn distance(g: &Graph, u: &str, v: &str) -> Result<Option<usize>, StructureError> {
    let dist = bfs(g, index(g, u)?);
    let d = dist[index(g, v)?];
    Ok((d != usize::MAX).then_some(d))
}

/// Vertices lying on some cycle: exactly those with an incident edge that
/// is not a bridge.
pub fn cycle_vertices(g: &Graph) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (u, w) in g.edges() {
        // (u, w) lies on a cycle iff w is reachable from u without it
        let mut seen = vec![false; g.vertex_count()];
        seen[u] = true;
        let mut stack = vec![u];
        let mut found = false;
        while let Some(x) = stack.pop() {
            for &y in g.neighbours(x) {
                if (x == u && y == w) || seen[y] {
                    continue;
                }
                if y == w {
                    found = true;
                    break;
                }
                seen[y] = true;
                stack.push(y);
            }
            if found {
                break;
            }
        }
        if found {
            out.insert(u);
            out.insert(w);
        }
    }
    out
}

/// Distance from `v` to the nearest vertex on a cycle; absent in forests
/// (or when no cycle is reachable).
pub fn min_distance_to_cycle(g: &Graph, v: &str) -> Result<Option<usize>, StructureError> {
    let dist = bfs(g, index(g, v)?);
    Ok(cycle_vertices(g)
        .into_iter()
        .map(|c| dist[c])
        .filter(|&d| d != usize::MAX)
        .min())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub degrees: BTreeMap<String, usize>,
    pub even: Vec<String>,
    pub odd: Vec<String>,
}

impl DegreeProfile {
    /// Even-degree vertices of positive degree.
    pub fn positive_even(&self) -> Vec<String> {
        self.even
            .iter()
            .filter(|v| self.degrees[*v] > 0)
            .cloned()
            .collect()
    }
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let degrees: BTreeMap<String, usize> = (0..g.vertex_count())
        .map(|v| (g.name(v).to_string(), g.degree(v)))
        .collect();
    let (even, odd) = degrees.keys().cloned().partition(|v| degrees[v].is_multiple_of(2));
    DegreeProfile { degrees, even, odd }
}

/// Every cycle of length `len`, as a vertex sequence starting at its least
/// vertex and oriented so the second vertex is less than the last.
pub fn cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let n = g.vertex_count();
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; n];
    fn extend(
        g: &Graph,
        len: usize,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        if path.len() == len {
            if g.has_edge(last, start) && path[1] < path[len - 1] {
                out.push(path.clone());
            }
            return;
        }
        for &w in g.neighbours(last) {
            if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(g, len, start, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(g, len, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

fn path_indices(g: &Graph, path: &[String]) -> Result<Vec<usize>, StructureError> {
    let idx: Vec<usize> = path.iter().map(|v| index(g, v)).collect::<Result<_, _>>()?;
    let distinct: BTreeSet<usize> = idx.iter().copied().collect();
    if idx.is_empty()
        || distinct.len() != idx.len()
        || idx.windows(2).any(|w| !g.has_edge(w[0], w[1]))
    {
        return Err(StructureError::NotAPath(path.to_vec()));
    }
    Ok(idx)
}

/// Whether cycle `c` contains `p` as a run of consecutive vertices, in
/// either direction.
fn cycle_contains_path(c: &[usize], p: &[usize]) -> bool {
    let len = c.len();
    let Some(start) = c.iter().position(|&v| v == p[0]) else {
        return false;
    };
    let forward = (0..p.len()).all(|k| c[(start + k) % len] == p[k]);
    let backward = (0..p.len()).all(|k| c[(start + len - k) % len] == p[k]);
    forward || (p.len() > 1 && backward)
}

/// Number of `len`-cycles containing the path `path` (a single vertex
/// counts the cycles through it). `len` must be the odd girth.
pub fn count_cycles_through_path(
    g: &Graph,
    len: usize,
    path: &[String],
) -> Result<usize, StructureError> {
    let og = odd_girth(g);
    if og != Some(len) {
        return Err(StructureError::NotOddGirth {
            given: len,
            odd_girth: og,
        });
    }
    let p = path_indices(g, path)?;
    if p.len() >= len {
        return Err(StructureError::PathTooLong {
            vertices: p.len(),
            length: len,
        });
    }
    Ok(cycles_of_length(g, len)
        .iter()
        .filter(|c| cycle_contains_path(c, &p))
        .count())
}

/// Counts of odd-girth cycles through every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub length: usize,
    pub cycles: usize,
    /// Keyed by the edge with endpoints in sorted order.
    pub edge_counts: BTreeMap<(String, String), usize>,
}

impl CycleCensus {
    pub fn edge_count(&self, u: &str, v: &str) -> usize {
        let key = if u < v {
            (u.to_string(), v.to_string())
        } else {
            (v.to_string(), u.to_string())
        };
        self.edge_counts.get(&key).copied().unwrap_or(0)
    }
}

/// The census at the odd girth; absent for bipartite graphs.
pub fn cycle_census(g: &Graph) -> Option<CycleCensus> {
    let len = odd_girth(g)?;
    let cycles = cycles_of_length(g, len);
    let mut edge_counts: BTreeMap<(String, String), usize> = g
        .edge_names()
        .into_iter()
        .map(|e| (e, 0))
        .collect();
    for c in &cycles {
        for k in 0..len {
            let (a, b) = (g.name(c[k]), g.name(c[(k + 1) % len]));
            let key = if a < b {
                (a.to_string(), b.to_string())
            } else {
                (b.to_string(), a.to_string())
            };
            *edge_counts.get_mut(&key).unwrap() += 1;
        }
    }
    Some(CycleCensus {
        length: len,
        cycles: cycles.len(),
        edge_counts,
    })
}

/// Orientation of a path used for ties: the lexicographically smaller of
/// the path and its reverse, compared by vertex names.
fn normalised(g: &Graph, p: &[usize]) -> Vec<usize> {
    let rev: Vec<usize> = p.iter().rev().copied().collect();
    let key = |q: &[usize]| q.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    if key(&rev) < key(p) {
        rev
    } else {
        p.to_vec()
    }
}

/// A longest path (1 ≤ length ≤ ℓ − 2 edges) lying in a positive, even
/// number of ℓ-cycles, ℓ the odd girth. Every edge must lie in an even
/// number of ℓ-cycles. Absent when the graph has no odd cycle.
pub fn longest_path_in_even_cycles(g: &Graph) -> Result<Option<Vec<String>>, StructureError> {
    let Some(census) = cycle_census(g) else {
        return Ok(None);
    };
    if let Some(((u, v), _)) = census.edge_counts.iter().find(|(_, &c)| c % 2 == 1) {
        return Err(StructureError::OddEdgeCount(u.clone(), v.clone()));
    }
    let len = census.length;
    let cycles = cycles_of_length(g, len);
    // every subpath of every cycle, counted once per cycle
    let mut counts: BTreeMap<Vec<String>, (Vec<usize>, usize)> = BTreeMap::new();
    for c in &cycles {
        let mut in_this: BTreeSet<Vec<usize>> = BTreeSet::new();
        for start in 0..len {
            for edges in 1..=len - 2 {
                let p: Vec<usize> = (0..=edges).map(|k| c[(start + k) % len]).collect();
                in_this.insert(normalised(g, &p));
            }
        }
        for p in in_this {
            let key: Vec<String> = p.iter().map(|&v| g.name(v).to_string()).collect();
            counts.entry(key).or_insert((p, 0)).1 += 1;
        }
    }
    let best = counts
        .into_iter()
        .filter(|(_, (_, c))| *c > 0 && c % 2 == 0)
        .max_by(|(ka, (pa, _)), (kb, (pb, _))| pa.len().cmp(&pb.len()).then(kb.cmp(ka)));
    Ok(best.map(|(key, _)| key))
}
