//! Homomorphism counting by variable elimination.
//!
//! Every pattern vertex is a variable ranging over host vertices and every
//! pattern edge a 0/1 factor. Variables are summed out one at a time in
//! greedy order of smallest resulting table. Unary results prune domains,
//! which keeps pinned gadget copies cheap.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Commutative semiring used for the counting tables. `None` means overflow.
pub(crate) trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_count(n: usize) -> Self;
}

impl Ring for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(*self ^ *other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(*self & *other)
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn from_count(n: usize) -> Self {
        n % 2 == 1
    }
}

impl Ring for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_count(n: usize) -> Self {
        n as u128
    }
}

impl Ring for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_count(n: usize) -> Self {
        BigUint::from(n)
    }
}

/// Host adjacency as a dense matrix. Loops are allowed here so that
/// weighted problems such as independent sets can reuse the engine.
#[derive(Debug, Clone)]
pub(crate) struct Host {
    pub n: usize,
    adj: Vec<bool>,
}

impl Host {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![false; n * n];
        for (a, b) in edges {
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Host { n, adj }
    }

    pub fn from_graph(h: &crate::graph::Graph) -> Self {
        Host::new(h.vertex_count(), h.edges())
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.n + b]
    }
}

/// Pattern in index form: vertices `0..n`, edges, optional pin per vertex.
#[derive(Debug, Clone)]
pub(crate) struct Pattern {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub pins: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ElimError {
    Overflow,
    TooWide { entries: u128 },
}

#[derive(Debug, Clone)]
struct Factor<R> {
    scope: Vec<usize>,
    table: Vec<R>,
}

/// Row-major strides for a scope under the current domain sizes.
fn strides(scope: &[usize], sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; scope.len()];
    let mut acc = 1;
    for k in (0..scope.len()).rev() {
        out[k] = acc;
        acc *= sizes[scope[k]];
    }
    out
}

fn table_len(scope: &[usize], sizes: &[usize]) -> u128 {
    scope.iter().map(|&v| sizes[v] as u128).product()
}

/// Arc-consistent initial domains. Removing values with no support never
/// changes a count.
fn initial_domains(p: &Pattern, host: &Host) -> Vec<Vec<usize>> {
    let mut dom: Vec<Vec<usize>> = p
        .pins
        .iter()
        .map(|pin| match pin {
            Some(h) => vec![*h],
            None => (0..host.n).collect(),
        })
        .collect();
    let mut nbrs = vec![Vec::new(); p.n];
    for &(u, v) in &p.edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut queue: std::collections::VecDeque<usize> = (0..p.n).collect();
    let mut queued = vec![true; p.n];
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for &v in &nbrs[u] {
            let before = dom[v].len();
            let du = &dom[u];
            let kept: Vec<usize> = dom[v]
                .iter()
                .copied()
                .filter(|&b| du.iter().any(|&a| host.adjacent(a, b)))
                .collect();
            if kept.len() != before {
                dom[v] = kept;
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    dom
}

struct Eliminator<R> {
    domains: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    factors: Vec<Option<Factor<R>>>,
    var_factors: Vec<Vec<usize>>,
    alive: Vec<bool>,
    scalar: R,
    max_entries: u128,
}

impl<R: Ring> Eliminator<R> {
    fn new(p: &Pattern, host: &Host, max_entries: u128) -> Self {
        let domains = initial_domains(p, host);
        let sizes: Vec<usize> = domains.iter().map(Vec::len).collect();
        let mut factors = Vec::with_capacity(p.edges.len());
        let mut var_factors = vec![Vec::new(); p.n];
        for &(u, v) in &p.edges {
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let mut table = Vec::with_capacity(sizes[a] * sizes[b]);
            for &ha in &domains[a] {
                for &hb in &domains[b] {
                    table.push(if host.adjacent(ha, hb) { R::one() } else { R::zero() });
                }
            }
            let id = factors.len();
            factors.push(Some(Factor {
                scope: vec![a, b],
                table,
            }));
            var_factors[a].push(id);
            var_factors[b].push(id);
        }
        Eliminator {
            domains,
            sizes,
            factors,
            var_factors,
            alive: vec![true; p.n],
            scalar: R::one(),
            max_entries,
        }
    }

    fn neighbourhood(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.var_factors[v]
            .iter()
            .flat_map(|&f| self.factors[f].as_ref().unwrap().scope.iter().copied())
            .filter(|&w| w != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn pick(&self, keep: &[bool]) -> Option<usize> {
        let mut best: Option<(u128, usize, usize)> = None;
        for v in 0..self.alive.len() {
            if !self.alive[v] || keep[v] {
                continue;
            }
            let nb = self.neighbourhood(v);
            let cost = table_len(&nb, &self.sizes);
            let key = (cost, nb.len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, v)| v)
    }

    /// Product of `parts` evaluated on every assignment of `out_scope`,
    /// summed over `sum_var` when given.
    fn combine(
        &self,
        parts: &[usize],
        out_scope: &[usize],
        sum_var: Option<usize>,
    ) -> Result<Vec<R>, ElimError> {
        let mut full_scope = out_scope.to_vec();
        if let Some(v) = sum_var {
            full_scope.push(v);
        }
        let len = table_len(out_scope, &self.sizes);
        if len > self.max_entries {
            return Err(ElimError::TooWide { entries: len });
        }
        let len = len as usize;
        let inner = sum_var.map_or(1, |v| self.sizes[v]);
        // per factor, the stride of each position of full_scope
        let plans: Vec<(&Factor<R>, Vec<usize>)> = parts
            .iter()
            .map(|&f| {
                let fac = self.factors[f].as_ref().unwrap();
                let st = strides(&fac.scope, &self.sizes);
                let per: Vec<usize> = full_scope
                    .iter()
                    .map(|w| fac.scope.iter().position(|x| x == w).map_or(0, |k| st[k]))
                    .collect();
                (fac, per)
            })
            .collect();
        let k = out_scope.len();
        let mut digits = vec![0usize; k];
        let mut offsets = vec![0usize; plans.len()];
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let mut acc = R::zero();
            for t in 0..inner {
                let mut prod = R::one();
                for (j, (fac, per)) in plans.iter().enumerate() {
                    let idx = offsets[j] + if sum_var.is_some() { t * per[k] } else { 0 };
                    let val = &fac.table[idx];
                    if val.is_zero() {
                        prod = R::zero();
                        break;
                    }
                    prod = prod.mul(val).ok_or(ElimError::Overflow)?;
                }
                if !prod.is_zero() {
                    acc = acc.add(&prod).ok_or(ElimError::Overflow)?;
                }
            }
            out.push(acc);
            // advance the odometer over out_scope
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                digits[pos] += 1;
                for (j, (_, per)) in plans.iter().enumerate() {
                    offsets[j] += per[pos];
                }
                if digits[pos] < self.sizes[out_scope[pos]] {
                    break;
                }
                for (j, (_, per)) in plans.iter().enumerate() {
                    offsets[j] -= per[pos] * digits[pos];
                }
                digits[pos] = 0;
            }
        }
        Ok(out)
    }

    fn add_factor(&mut self, scope: Vec<usize>, table: Vec<R>) {
        let id = self.factors.len();
        for &v in &scope {
            self.var_factors[v].push(id);
        }
        self.factors.push(Some(Factor { scope, table }));
    }

    fn remove_factor(&mut self, id: usize) -> Factor<R> {
        let fac = self.factors[id].take().unwrap();
        for &v in &fac.scope {
            self.var_factors[v].retain(|&f| f != id);
        }
        fac
    }

    /// Shrinks the domain of `v` to the positions in `keep`, rewriting
    /// every factor that mentions it.
    fn restrict(&mut self, v: usize, keep: &[usize]) {
        let old_sizes = self.sizes.clone();
        for &f in &self.var_factors[v] {
            let fac = self.factors[f].as_mut().unwrap();
            let st = strides(&fac.scope, &old_sizes);
            let pos = fac.scope.iter().position(|&w| w == v).unwrap();
            let stride = st[pos];
            let block = stride * old_sizes[v];
            let outer = fac.table.len() / block.max(1);
            let mut table = Vec::with_capacity(outer * keep.len() * stride);
            for o in 0..outer {
                for &kpos in keep {
                    let start = o * block + kpos * stride;
                    table.extend_from_slice(&fac.table[start..start + stride]);
                }
            }
            fac.table = table;
        }
        self.domains[v] = keep.iter().map(|&k| self.domains[v][k]).collect();
        self.sizes[v] = keep.len();
    }

    fn eliminate(&mut self, v: usize) -> Result<(), ElimError> {
        let parts = self.var_factors[v].clone();
        let scope = self.neighbourhood(v);
        let table = if parts.is_empty() {
            vec![R::from_count(self.sizes[v])]
        } else {
            self.combine(&parts, &scope, Some(v))?
        };
        for f in parts {
            self.remove_factor(f);
        }
        self.alive[v] = false;
        match scope.len() {
            0 => {
                self.scalar = self.scalar.mul(&table[0]).ok_or(ElimError::Overflow)?;
            }
            1 => {
                let w = scope[0];
                let keep: Vec<usize> = (0..table.len()).filter(|&k| !table[k].is_zero()).collect();
                let table: Vec<R> = keep.iter().map(|&k| table[k].clone()).collect();
                if keep.len() < self.sizes[w] {
                    self.restrict(w, &keep);
                }
                self.add_factor(scope, table);
            }
            _ => self.add_factor(scope, table),
        }
        Ok(())
    }
}

/// Exact value (in `R`) of the number of homomorphisms respecting the pins.
pub(crate) fn count<R: Ring>(p: &Pattern, host: &Host, max_entries: u128) -> Result<R, ElimError> {
    let table = rooted::<R>(p, host, &[], max_entries)?;
    Ok(table.into_iter().next().unwrap())
}

/// Counts for every assignment of host vertices to the distinct `roots`,
/// as a row-major table of side `host.n`.
pub(crate) fn rooted<R: Ring>(
    p: &Pattern,
    host: &Host,
    roots: &[usize],
    max_entries: u128,
) -> Result<Vec<R>, ElimError> {
    let full = (host.n as u128).pow(roots.len() as u32);
    if full > max_entries {
        return Err(ElimError::TooWide { entries: full });
    }
    let mut el = Eliminator::<R>::new(p, host, max_entries);
    let mut keep = vec![false; p.n];
    for &r in roots {
        keep[r] = true;
    }
    while let Some(v) = el.pick(&keep) {
        el.eliminate(v)?;
        if el.scalar.is_zero() {
            return Ok(vec![R::zero(); full as usize]);
        }
    }
    let mut root_scope: Vec<usize> = roots.to_vec();
    root_scope.sort_unstable();
    let parts: Vec<usize> = (0..el.factors.len())
        .filter(|&f| el.factors[f].is_some())
        .collect();
    let joint = el.combine(&parts, &root_scope, None)?;

    let mut out = vec![R::zero(); full as usize];
    if joint.is_empty() {
        return Ok(out);
    }
    // walk the joint table and scatter into host-indexed positions
    let k = root_scope.len();
    let mut digits = vec![0usize; k];
    for value in joint {
        if !value.is_zero() {
            let mut idx = 0usize;
            for &r in roots {
                let pos = root_scope.iter().position(|&x| x == r).unwrap();
                idx = idx * host.n + el.domains[r][digits[pos]];
            }
            out[idx] = value.mul(&el.scalar).ok_or(ElimError::Overflow)?;
        }
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < el.sizes[root_scope[pos]] {
                break;
            }
            digits[pos] = 0;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn cycle_into_complete_graph() {
        // closed walks of length n in K3: 2^n + 2(-1)^n
        let host = Host::new(3, [(0, 1), (1, 2), (0, 2)]);
        for n in 3..9 {
            let p = Pattern {
                n,
                edges: cycle(n),
                pins: vec![None; n],
            };
            let expected = 2u128.pow(n as u32) as i128 + 2 * if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(count::<u128>(&p, &host, 1 << 20).unwrap() as i128, expected);
            assert_eq!(count::<bool>(&p, &host, 1 << 20).unwrap(), expected % 2 == 1);
        }
    }

    #[test]
    fn isolated_vertices_and_empty_pattern() {
        let host = Host::new(4, [(0, 1)]);
        let p = Pattern {
            n: 3,
            edges: vec![],
            pins: vec![None, Some(2), None],
        };
        assert_eq!(count::<u128>(&p, &host, 1 << 20).unwrap(), 16);
        let empty = Pattern {
            n: 0,
            edges: vec![],
            pins: vec![],
        };
        assert_eq!(count::<u128>(&empty, &host, 1 << 20).unwrap(), 1);
    }

    #[test]
    fn rooted_table_of_an_edge() {
        let host = Host::new(3, [(0, 1), (1, 2)]);
        let p = Pattern {
            n: 2,
            edges: vec![(0, 1)],
            pins: vec![None, None],
        };
        let t = rooted::<u128>(&p, &host, &[1, 0], 1 << 20).unwrap();
        let expected: Vec<u128> = (0..9)
            .map(|k| host.adjacent(k / 3, k % 3) as u128)
            .collect();
        assert_eq!(t, expected);
    }

    #[test]
    fn overflow_is_reported() {
        let host = Host::new(2, [(0, 1)]);
        // 200 isolated vertices: 2^200 maps
        let p = Pattern {
            n: 200,
            edges: vec![],
            pins: vec![None; 200],
        };
        assert_eq!(count::<u128>(&p, &host, 1 << 20), Err(ElimError::Overflow));
        let big = count::<BigUint>(&p, &host, 1 << 20).unwrap();
        assert_eq!(big, BigUint::from(2u8).pow(200));
    }

    #[test]
    fn width_budget() {
        // K6 into K6 keeps a 5-variable table alive at some point
        let edges: Vec<(usize, usize)> = (0..6)
            .flat_map(|a| ((a + 1)..6).map(move |b| (a, b)))
            .collect();
        let host = Host::new(6, edges.clone());
        let p = Pattern {
            n: 6,
            edges,
            pins: vec![None; 6],
        };
        assert!(matches!(count::<u128>(&p, &host, 100), Err(ElimError::TooWide { .. })));
        assert_eq!(count::<u128>(&p, &host, 1 << 20).unwrap(), 720);
    }
}
