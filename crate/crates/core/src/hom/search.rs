//! Backtracking search over explicit assignments. Slow, but it inspects
//! every homomorphism individually, which makes it the reference the
//! elimination engine is tested against.

use num_bigint::BigUint;

use super::elim::{Host, Pattern};

struct Search<'a> {
    p: &'a Pattern,
    host: &'a Host,
    order: Vec<usize>,
    /// earlier neighbours (in `order`) of each vertex
    back: Vec<Vec<usize>>,
    assignment: Vec<usize>,
    injective: bool,
    used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Pattern, host: &'a Host, order: Vec<usize>, injective: bool) -> Self {
        let mut rank = vec![0; p.n];
        for (k, &v) in order.iter().enumerate() {
            rank[v] = k;
        }
        let mut back = vec![Vec::new(); p.n];
        for &(u, v) in &p.edges {
            if rank[u] < rank[v] {
                back[v].push(u);
            } else {
                back[u].push(v);
            }
        }
        Search {
            p,
            host,
            order,
            back,
            assignment: vec![usize::MAX; p.n],
            injective,
            used: vec![false; host.n],
        }
    }

    fn candidates(&self, v: usize) -> Vec<usize> {
        let range: Vec<usize> = match self.p.pins[v] {
            Some(h) => vec![h],
            None => (0..self.host.n).collect(),
        };
        range
            .into_iter()
            .filter(|&h| !(self.injective && self.used[h]))
            .filter(|&h| {
                self.back[v]
                    .iter()
                    .all(|&u| self.host.adjacent(self.assignment[u], h))
            })
            .collect()
    }

    /// Calls `visit` on every complete assignment; stops when it returns false.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.assignment);
        }
        let v = self.order[depth];
        for h in self.candidates(v) {
            self.assignment[v] = h;
            self.used[h] = true;
            let go_on = self.run(depth + 1, visit);
            self.used[h] = false;
            if !go_on {
                self.assignment[v] = usize::MAX;
                return false;
            }
        }
        self.assignment[v] = usize::MAX;
        true
    }
}

/// Pinned vertices first, then a traversal that keeps each next vertex
/// adjacent to an earlier one when possible.
fn connected_order(p: &Pattern) -> Vec<usize> {
    let mut nbrs = vec![Vec::new(); p.n];
    for &(u, v) in &p.edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut placed = vec![false; p.n];
    let mut order = Vec::with_capacity(p.n);
    let mut frontier = std::collections::VecDeque::new();
    let seeds = (0..p.n)
        .filter(|&v| p.pins[v].is_some())
        .chain(0..p.n)
        .collect::<Vec<_>>();
    for s in seeds {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        frontier.push_back(s);
        while let Some(u) = frontier.pop_front() {
            order.push(u);
            for &w in &nbrs[u] {
                if !placed[w] {
                    placed[w] = true;
                    frontier.push_back(w);
                }
            }
        }
    }
    order
}

pub(crate) fn count(p: &Pattern, host: &Host, injective: bool) -> BigUint {
    let mut search = Search::new(p, host, connected_order(p), injective);
    let mut total = BigUint::from(0u8);
    search.run(0, &mut |_| {
        total += 1u8;
        true
    });
    total
}

/// Assignments in lexicographic order of (image of vertex 0, vertex 1, ...),
/// at most `limit` of them, plus whether more exist.
pub(crate) fn enumerate(p: &Pattern, host: &Host, limit: usize) -> (Vec<Vec<usize>>, bool) {
    let mut search = Search::new(p, host, (0..p.n).collect(), false);
    let mut out = Vec::new();
    let mut truncated = false;
    search.run(0, &mut |a| {
        if out.len() == limit {
            truncated = true;
            return false;
        }
        out.push(a.to_vec());
        true
    });
    (out, truncated)
}
