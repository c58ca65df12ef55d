//! Colour refinement and the backtracking matcher behind automorphism,
//! involution and isomorphism search.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Dense adjacency matrix for fast edge tests during search.
pub(crate) struct Matrix {
    n: usize,
    bits: Vec<bool>,
}

impl Matrix {
    pub fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut bits = vec![false; n * n];
        for (u, v) in g.edges() {
            bits[u * n + v] = true;
            bits[v * n + u] = true;
        }
        Matrix { n, bits }
    }

    #[inline]
    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

/// Initial colour keys: the positions a vertex holds in the tuple, then its
/// degree.
fn initial_key(g: &Graph, tuple: &[usize], v: usize) -> (Vec<usize>, usize) {
    let positions = tuple
        .iter()
        .enumerate()
        .filter(|(_, &x)| x == v)
        .map(|(i, _)| i)
        .collect();
    (positions, g.degree(v))
}

/// Stable colourings of several graphs refined jointly, so that equal
/// colours in different graphs mean the same thing.
pub(crate) fn joint_colours(graphs: &[(&Graph, &[usize])]) -> Vec<Vec<usize>> {
    let mut keys = BTreeMap::new();
    for (g, t) in graphs {
        for v in 0..g.vertex_count() {
            keys.insert(initial_key(g, t, v), 0);
        }
    }
    for (k, slot) in keys.values_mut().enumerate() {
        *slot = k;
    }
    let mut colours: Vec<Vec<usize>> = graphs
        .iter()
        .map(|(g, t)| {
            (0..g.vertex_count())
                .map(|v| keys[&initial_key(g, t, v)])
                .collect()
        })
        .collect();
    let mut classes = count_classes(&colours);
    loop {
        let mut sig = BTreeMap::new();
        let sigs: Vec<Vec<(usize, Vec<usize>)>> = graphs
            .iter()
            .zip(&colours)
            .map(|((g, _), col)| {
                (0..g.vertex_count())
                    .map(|v| {
                        let mut nb: Vec<usize> = g.neighbours(v).iter().map(|&w| col[w]).collect();
                        nb.sort_unstable();
                        (col[v], nb)
                    })
                    .collect()
            })
            .collect();
        for s in sigs.iter().flatten() {
            sig.insert(s.clone(), 0);
        }
        for (k, slot) in sig.values_mut().enumerate() {
            *slot = k;
        }
        colours = sigs
            .iter()
            .map(|list| list.iter().map(|s| sig[s]).collect())
            .collect();
        let next = count_classes(&colours);
        if next == classes {
            return colours;
        }
        classes = next;
    }
}

fn count_classes(colours: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colours.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Ascending,
    Descending,
}

/// Backtracking search for adjacency-preserving bijections `a → b` that
/// respect the given colourings. Source vertices are assigned in index
/// order, so visiting order is lexicographic in the image vector.
pub(crate) struct Matcher<'a> {
    a: &'a Matrix,
    b: &'a Matrix,
    ca: &'a [usize],
    cb: &'a [usize],
    direction: Direction,
    involution: bool,
    map: Vec<usize>,
    inv: Vec<usize>,
    assigned: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl<'a> Matcher<'a> {
    pub fn new(
        a: &'a Matrix,
        b: &'a Matrix,
        ca: &'a [usize],
        cb: &'a [usize],
        direction: Direction,
        involution: bool,
    ) -> Self {
        Matcher {
            a,
            b,
            ca,
            cb,
            direction,
            involution,
            map: vec![NONE; ca.len()],
            inv: vec![NONE; cb.len()],
            assigned: Vec::with_capacity(ca.len()),
        }
    }

    fn consistent(&self, v: usize, u: usize) -> bool {
        self.assigned
            .iter()
            .all(|&w| self.a.edge(v, w) == self.b.edge(u, self.map[w]))
    }

    fn push(&mut self, v: usize, u: usize) {
        self.map[v] = u;
        self.inv[u] = v;
        self.assigned.push(v);
    }

    fn pop(&mut self) {
        let v = self.assigned.pop().unwrap();
        self.inv[self.map[v]] = NONE;
        self.map[v] = NONE;
    }

    /// Calls `visit` with each complete map; stops as soon as it returns false.
    /// Returns false if stopped early.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.ca.len() != self.cb.len() {
            return true;
        }
        self.step(0, visit)
    }

    fn step(&mut self, v: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.ca.len();
        if v == n {
            return visit(&self.map);
        }
        if self.map[v] != NONE {
            return self.step(v + 1, visit);
        }
        let candidates: Vec<usize> = match self.direction {
            Direction::Ascending => (0..n).collect(),
            Direction::Descending => (0..n).rev().collect(),
        };
        for u in candidates {
            if self.cb[u] != self.ca[v] || self.inv[u] != NONE || !self.consistent(v, u) {
                continue;
            }
            if self.involution && u != v {
                // ρ(v) = u forces ρ(u) = v
                if self.map[u] != NONE || self.inv[v] != NONE {
                    continue;
                }
                self.push(v, u);
                if !self.consistent(u, v) {
                    self.pop();
                    continue;
                }
                self.push(u, v);
                let go_on = self.step(v + 1, visit);
                self.pop();
                self.pop();
                if !go_on {
                    return false;
                }
            } else {
                self.push(v, u);
                let go_on = self.step(v + 1, visit);
                self.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}
