//! Removing pins: distinguishers between non-isomorphic hosts, formal sums
//! implementing any parity vector, and rewriting a pinned instance as a
//! list of unpinned graphs with the same total parity.

use serde::Serialize;

use super::auto::{find_involution, find_isomorphism};
use super::catalog::graphs_on;
use super::tuples::{glue_at_tuples, hom_vector, HomVector, TupleClasses};
use super::{SearchBudget, SymmetryError, SymmetryLimits};
use crate::graph::{DistinguishedGraph, Graph, PartiallyLabelledGraph};
use crate::hom::{count_distinguished_parity, HomError};

fn require_involution_free(h: &Graph, which: &str) -> Result<(), SymmetryError> {
    if find_involution(h).is_some() {
        return Err(SymmetryError::HasInvolution(which.to_string()));
    }
    Ok(())
}

/// Candidate pattern graphs with tuples, smallest first. Calls `visit`
/// until it returns `Some`; gives up after `budget.max_candidates`.
fn scan_candidates<T>(
    arity: usize,
    budget: &SearchBudget,
    limits: &SymmetryLimits,
    mut visit: impl FnMut(&DistinguishedGraph) -> Result<Option<T>, SymmetryError>,
) -> Result<Result<T, usize>, SymmetryError> {
    let mut examined = 0usize;
    for n in 1..=budget.max_candidate_vertices {
        for g in graphs_on(n) {
            if budget.connected && !g.is_connected() {
                continue;
            }
            let tuples = TupleClasses::new(&g, arity, limits)?.representatives();
            for tuple in tuples {
                if budget.connected {
                    let mut distinct: std::collections::BTreeSet<usize> = Default::default();
                    for v in &tuple {
                        distinct.insert(g.index_of(v).unwrap());
                    }
                    if !g.induced_subgraph(&distinct).is_connected() {
                        continue;
                    }
                }
                if examined == budget.max_candidates {
                    return Ok(Err(examined));
                }
                examined += 1;
                let candidate = DistinguishedGraph::new(g.clone(), tuple)?;
                if let Some(found) = visit(&candidate)? {
                    return Ok(Ok(found));
                }
            }
        }
    }
    Ok(Err(examined))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DistinguisherOutcome {
    /// `graph` has odd hom count into exactly one of the two hosts.
    Found {
        graph: DistinguishedGraph,
        parity_first: bool,
        parity_second: bool,
    },
    /// The hosts are isomorphic, so no distinguisher exists.
    Isomorphic,
    /// The search budget ran out; nothing is known.
    Exhausted { candidates: usize },
}

/// Searches for (G, x̄) with different hom-count parities into the two
/// involution-free hosts.
pub fn find_distinguisher(
    first: &DistinguishedGraph,
    second: &DistinguishedGraph,
    budget: &SearchBudget,
    limits: &SymmetryLimits,
) -> Result<DistinguisherOutcome, SymmetryError> {
    if first.arity() != second.arity() {
        return Err(SymmetryError::ArityMismatch {
            expected: first.arity(),
            found: second.arity(),
        });
    }
    require_involution_free(first.graph(), "first host")?;
    require_involution_free(second.graph(), "second host")?;
    if find_isomorphism(first, second).is_some() {
        return Ok(DistinguisherOutcome::Isomorphic);
    }
    let result = scan_candidates(first.arity(), budget, limits, |cand| {
        let a = count_distinguished_parity(cand, first)?;
        let b = count_distinguished_parity(cand, second)?;
        Ok((a != b).then(|| (cand.clone(), a, b)))
    })?;
    Ok(match result {
        Ok((graph, parity_first, parity_second)) => DistinguisherOutcome::Found {
            graph,
            parity_first,
            parity_second,
        },
        Err(candidates) => DistinguisherOutcome::Exhausted { candidates },
    })
}

/// GF(2) row reduction that remembers which pool entries make up each row.
struct Span {
    rows: Vec<(usize, Vec<bool>, Vec<bool>)>,
}

impl Span {
    fn new() -> Self {
        Span { rows: Vec::new() }
    }

    /// Residual of `v` and the pool combination that was subtracted.
    fn reduce(&self, v: &[bool], pool_len: usize) -> (Vec<bool>, Vec<bool>) {
        let mut v = v.to_vec();
        let mut combo = vec![false; pool_len];
        for (pivot, row, rc) in &self.rows {
            if v[*pivot] {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
                for (k, b) in rc.iter().enumerate() {
                    combo[k] ^= b;
                }
            }
        }
        (v, combo)
    }

    /// Adds pool entry `index` with vector `v`; false if `v` was already in
    /// the span.
    fn insert(&mut self, v: &[bool], index: usize) -> bool {
        let (residual, mut combo) = self.reduce(v, index + 1);
        let Some(pivot) = residual.iter().position(|&b| b) else {
            return false;
        };
        combo[index] ^= true;
        for (_, _, rc) in &mut self.rows {
            rc.resize(index + 1, false);
        }
        self.rows.push((pivot, residual, combo));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ImplementOutcome {
    /// A formal sum of graphs whose hom-vectors add up to the target.
    Implemented { graphs: Vec<DistinguishedGraph> },
    Exhausted { candidates: usize, rank: usize },
}

fn edgeless(arity: usize) -> DistinguishedGraph {
    let names: Vec<String> = (0..arity).map(|i| format!("n{i:04}")).collect();
    let g = Graph::new(names.clone(), Vec::<(String, String)>::new()).expect("distinct names");
    DistinguishedGraph::new(g, names).expect("tuple inside graph")
}

/// Finds graphs (G₁, x̄₁), …, (G_t, x̄_t) whose hom-vectors over the tuple
/// classes of `classes` sum to `target` in GF(2).
///
/// The pool starts with the edgeless graph (the all-ones vector). Catalog
/// candidates that enlarge the span are added, and after each addition the
/// pool is closed under gluing products, whose vectors are componentwise
/// products.
pub fn implement_vector(
    classes: &TupleClasses,
    target: &HomVector,
    budget: &SearchBudget,
    limits: &SymmetryLimits,
) -> Result<ImplementOutcome, SymmetryError> {
    let h = classes.host();
    require_involution_free(h, "host")?;
    let lambda = classes.len();
    if target.len() != lambda {
        return Err(SymmetryError::ArityMismatch {
            expected: lambda,
            found: target.len(),
        });
    }
    let base = edgeless(classes.arity());
    if target.is_zero() {
        return Ok(ImplementOutcome::Implemented {
            graphs: vec![base.clone(), base],
        });
    }
    if target == &HomVector::ones(lambda) {
        return Ok(ImplementOutcome::Implemented { graphs: vec![base] });
    }

    let mut pool: Vec<(DistinguishedGraph, HomVector)> = Vec::new();
    let mut span = Span::new();
    let base_vec = hom_vector(&base, classes)?;
    span.insert(base_vec.bits(), 0);
    pool.push((base, base_vec));

    let finish = |pool: &[(DistinguishedGraph, HomVector)], span: &Span| -> Option<Vec<DistinguishedGraph>> {
        let (residual, combo) = span.reduce(target.bits(), pool.len());
        if residual.iter().any(|&b| b) {
            return None;
        }
        Some(
            combo
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(k, _)| pool[k].0.clone())
                .collect(),
        )
    };

    let mut closed_pairs = 0usize; // pairs (i, j), j ≤ i, enumerated row by row
    let outcome = scan_candidates(classes.arity(), budget, limits, |cand| {
        let v = hom_vector(cand, classes)?;
        if !span.insert(v.bits(), pool.len()) {
            return Ok(None);
        }
        pool.push((cand.clone(), v));
        // close under products until no pair is left unprocessed
        loop {
            let (i, j) = pair_at(closed_pairs);
            if i >= pool.len() || pool.len() > budget.max_pool {
                break;
            }
            closed_pairs += 1;
            if let Some(glued) = glue_at_tuples(&pool[i].0, &pool[j].0)? {
                let pv = hom_vector(&glued, classes)?;
                if span.insert(pv.bits(), pool.len()) {
                    pool.push((glued, pv));
                }
            }
        }
        Ok(finish(&pool, &span))
    })?;
    Ok(match outcome {
        Ok(graphs) => ImplementOutcome::Implemented { graphs },
        Err(candidates) => ImplementOutcome::Exhausted {
            candidates,
            rank: span.rank(),
        },
    })
}

/// The k-th pair in the order (0,0), (1,0), (1,1), (2,0), …
fn pair_at(k: usize) -> (usize, usize) {
    let mut i = 0;
    let mut start = 0;
    while start + i < k {
        start += i + 1;
        i += 1;
    }
    (i, k - start)
}

/// Graphs G₁, …, G_t with Σ|Homs(Gᵢ, H)| ≡ |Homs(J, H)| (mod 2).
///
/// The pinned vertices x̄ of J (in sorted order) and their targets ȳ are
/// replaced by gluing G(J) at x̄ to every graph of a formal sum implementing
/// the unit vector of ȳ's class. Glued graphs that would need a loop have
/// no homomorphisms and are left out.
pub fn reduce_partlab_instance(
    j: &PartiallyLabelledGraph,
    h: &Graph,
    budget: &SearchBudget,
    limits: &SymmetryLimits,
) -> Result<Vec<Graph>, SymmetryError> {
    if j.pinning().is_empty() {
        return Ok(vec![j.graph().clone()]);
    }
    let arity = j.pinning().len();
    if arity > limits.max_arity {
        return Err(SymmetryError::ArityTooLarge {
            arity,
            cap: limits.max_arity,
        });
    }
    for target in j.pinning().values() {
        if !h.contains(target) {
            return Err(HomError::UnknownHostVertex(target.clone()).into());
        }
    }
    require_involution_free(h, "host")?;
    let (xs, ys): (Vec<String>, Vec<String>) =
        j.pinning().iter().map(|(x, y)| (x.clone(), y.clone())).unzip();
    let classes = TupleClasses::new(h, arity, limits)?;
    let p = classes.class_of(&ys)?;
    let unit = HomVector::unit(classes.len(), p);
    let graphs = match implement_vector(&classes, &unit, budget, limits)? {
        ImplementOutcome::Implemented { graphs } => graphs,
        ImplementOutcome::Exhausted { candidates, rank } => {
            return Err(SymmetryError::BudgetExhausted { candidates, rank })
        }
    };
    let instance = DistinguishedGraph::new(j.graph().clone(), xs)?;
    let mut out = Vec::new();
    for theta in &graphs {
        if let Some(glued) = glue_at_tuples(&instance, theta)? {
            out.push(glued.graph().clone());
        }
    }
    Ok(out)
}
