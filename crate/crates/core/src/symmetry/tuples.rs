//! Orbits of vertex tuples, tuple classes up to isomorphism and parity
//! hom-vectors over those classes.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{BitAnd, BitXor};

use serde::{Deserialize, Serialize};

use super::auto::enumerate_automorphisms;
use super::{SymmetryError, SymmetryLimits};
use crate::graph::{
    disjoint_union_with_tags, identify_vertices, DistinguishedGraph, Graph, GraphError,
    PartiallyLabelledGraph,
};
use crate::hom::{rooted_odd_tuples, HomError};

fn indices(h: &Graph, tuple: &[String]) -> Result<Vec<usize>, SymmetryError> {
    tuple
        .iter()
        .map(|v| h.index_of(v).ok_or_else(|| SymmetryError::UnknownVertex(v.clone())))
        .collect()
}

fn names(h: &Graph, tuple: &[usize]) -> Vec<String> {
    tuple.iter().map(|&v| h.name(v).to_string()).collect()
}

/// The orbit of `tuple` under Aut(H).
pub fn orbit_of_tuple(
    h: &Graph,
    tuple: &[String],
    limits: &SymmetryLimits,
) -> Result<BTreeSet<Vec<String>>, SymmetryError> {
    let t = indices(h, tuple)?;
    let plain = DistinguishedGraph::new(h.clone(), vec![]).expect("empty tuple");
    let autos = enumerate_automorphisms(&plain, limits)?;
    Ok(autos
        .iter()
        .map(|a| names(h, &t.iter().map(|&v| a.apply(v)).collect::<Vec<_>>()))
        .collect())
}

/// The partition of V(H)^r into orbits of Aut(H), i.e. into isomorphism
/// classes of (H, ȳ). Classes are numbered in order of their
/// lexicographically least member, which is also the representative.
#[derive(Debug, Clone)]
pub struct TupleClasses {
    n: usize,
    arity: usize,
    representatives: Vec<Vec<usize>>,
    class_of: Vec<u32>,
    sizes: Vec<usize>,
    host: Graph,
}

fn encode(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &v| acc * n + v)
}

fn decode(mut code: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in (0..arity).rev() {
        t[slot] = code % n;
        code /= n;
    }
    t
}

impl TupleClasses {
    pub fn new(h: &Graph, arity: usize, limits: &SymmetryLimits) -> Result<Self, SymmetryError> {
        let n = h.vertex_count();
        let space = (n as u128).pow(arity as u32);
        if space > limits.max_tuple_space as u128 {
            return Err(SymmetryError::TupleSpaceTooLarge {
                size: space,
                cap: limits.max_tuple_space,
            });
        }
        let plain = DistinguishedGraph::new(h.clone(), vec![]).expect("empty tuple");
        let autos = enumerate_automorphisms(&plain, limits)?;
        let space = space as usize;
        let mut class_of = vec![u32::MAX; space];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for code in 0..space {
            if class_of[code] != u32::MAX {
                continue;
            }
            let t = decode(code, n, arity);
            let id = representatives.len() as u32;
            let mut size = 0;
            for a in &autos {
                let image: Vec<usize> = t.iter().map(|&v| a.apply(v)).collect();
                let c = encode(&image, n);
                if class_of[c] == u32::MAX {
                    class_of[c] = id;
                    size += 1;
                }
            }
            representatives.push(t);
            sizes.push(size);
        }
        Ok(TupleClasses {
            n,
            arity,
            representatives,
            class_of,
            sizes,
            host: h.clone(),
        })
    }

    /// λ, the number of classes.
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn representatives(&self) -> Vec<Vec<String>> {
        self.representatives
            .iter()
            .map(|t| names(&self.host, t))
            .collect()
    }

    pub(crate) fn representative_indices(&self) -> &[Vec<usize>] {
        &self.representatives
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn class_of(&self, tuple: &[String]) -> Result<usize, SymmetryError> {
        if tuple.len() != self.arity {
            return Err(SymmetryError::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        let t = indices(&self.host, tuple)?;
        Ok(self.class_of[encode(&t, self.n)] as usize)
    }
}

/// One representative per isomorphism class of (H, ȳ), ȳ ∈ V(H)^r.
pub fn enumerate_tuples_up_to_iso(
    h: &Graph,
    arity: usize,
    limits: &SymmetryLimits,
) -> Result<Vec<Vec<String>>, SymmetryError> {
    Ok(TupleClasses::new(h, arity, limits)?.representatives())
}

/// Parity vector indexed by tuple classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomVector {
    bits: Vec<bool>,
}

impl HomVector {
    pub fn new(bits: Vec<bool>) -> Self {
        HomVector { bits }
    }

    pub fn ones(len: usize) -> Self {
        HomVector {
            bits: vec![true; len],
        }
    }

    pub fn zeros(len: usize) -> Self {
        HomVector {
            bits: vec![false; len],
        }
    }

    pub fn unit(len: usize, p: usize) -> Self {
        let mut bits = vec![false; len];
        bits[p] = true;
        HomVector { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl BitXor for &HomVector {
    type Output = HomVector;
    fn bitxor(self, rhs: &HomVector) -> HomVector {
        HomVector {
            bits: self.bits.iter().zip(&rhs.bits).map(|(a, b)| a ^ b).collect(),
        }
    }
}

impl BitAnd for &HomVector {
    type Output = HomVector;
    fn bitand(self, rhs: &HomVector) -> HomVector {
        HomVector {
            bits: self.bits.iter().zip(&rhs.bits).map(|(a, b)| a & b).collect(),
        }
    }
}

/// The vector whose p-th bit is the parity of hom((G, x̄), (H, ȳ_p)).
pub fn hom_vector(g: &DistinguishedGraph, classes: &TupleClasses) -> Result<HomVector, SymmetryError> {
    if g.arity() != classes.arity() {
        return Err(SymmetryError::ArityMismatch {
            expected: classes.arity(),
            found: g.arity(),
        });
    }
    let xs = g.distinguished();
    let mut distinct: Vec<&str> = Vec::new();
    let mut slot_of = Vec::with_capacity(xs.len());
    for x in xs {
        let pos = match distinct.iter().position(|d| d == x) {
            Some(p) => p,
            None => {
                distinct.push(x);
                distinct.len() - 1
            }
        };
        slot_of.push(pos);
    }
    let j = PartiallyLabelledGraph::unpinned(g.graph().clone());
    let odd: BTreeSet<Vec<String>> = rooted_odd_tuples(&j, &distinct, classes.host())
        .map_err(SymmetryError::from)?
        .into_iter()
        .collect();
    let host = classes.host();
    let bits = classes
        .representative_indices()
        .iter()
        .map(|rep| {
            let mut key: Vec<Option<usize>> = vec![None; distinct.len()];
            for (i, &y) in rep.iter().enumerate() {
                match key[slot_of[i]] {
                    Some(prev) if prev != y => return false,
                    _ => key[slot_of[i]] = Some(y),
                }
            }
            let key: Vec<String> = key.iter().map(|y| host.name(y.unwrap()).to_string()).collect();
            odd.contains(&key)
        })
        .collect();
    Ok(HomVector::new(bits))
}

/// Renames vertices to `n0000`, `n0001`, … keeping the sorted order.
pub(crate) fn compact(g: &DistinguishedGraph) -> DistinguishedGraph {
    let graph = g.graph();
    let rename = |v: &str| format!("n{:04}", graph.index_of(v).unwrap());
    let renamed = graph.rename(rename).expect("injective renaming");
    let tuple = g.distinguished().iter().map(|v| rename(v)).collect();
    DistinguishedGraph::new(renamed, tuple).expect("renamed tuple")
}

/// Glues two graphs along their distinguished tuples: the i-th
/// distinguished vertices are identified. `None` when the identification
/// would create a loop, in which case every count through it is zero.
pub fn glue_at_tuples(
    a: &DistinguishedGraph,
    b: &DistinguishedGraph,
) -> Result<Option<DistinguishedGraph>, SymmetryError> {
    if a.arity() != b.arity() {
        return Err(SymmetryError::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    let union = disjoint_union_with_tags(&[
        (&PartiallyLabelledGraph::unpinned(a.graph().clone()), "l"),
        (&PartiallyLabelledGraph::unpinned(b.graph().clone()), "r"),
    ])?;
    let left: Vec<String> = a.distinguished().iter().map(|v| format!("{v}@l")).collect();
    let right: Vec<String> = b.distinguished().iter().map(|v| format!("{v}@r")).collect();
    // union-find over the tagged tuple vertices
    let mut parent: BTreeMap<String, String> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<String, String>, v: &str) -> String {
        let p = parent.get(v).cloned().unwrap_or_else(|| v.to_string());
        if p == v {
            return p;
        }
        let root = find(parent, &p);
        parent.insert(v.to_string(), root.clone());
        root
    }
    for (l, r) in left.iter().zip(&right) {
        let (rl, rr) = (find(&mut parent, l), find(&mut parent, r));
        if rl != rr {
            let (lo, hi) = if rl < rr { (rl, rr) } else { (rr, rl) };
            parent.insert(hi, lo);
        }
    }
    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for v in left.iter().chain(&right) {
        let root = find(&mut parent, v);
        let members = classes.entry(root).or_default();
        if !members.contains(v) {
            members.push(v.clone());
        }
    }
    let class_list: Vec<(Vec<String>, String)> = classes
        .into_iter()
        .filter(|(_, m)| m.len() > 1)
        .map(|(root, m)| (m, root))
        .collect();
    let merged = match identify_vertices(&union, &class_list) {
        Ok(j) => j,
        Err(GraphError::IdentifiesAdjacent(..)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let tuple = left.iter().map(|v| find(&mut parent, v)).collect();
    let glued = DistinguishedGraph::new(merged.graph().clone(), tuple)?;
    Ok(Some(compact(&glued)))
}

/// Helper for tests and the CLI: a hom-vector without precomputed classes.
pub fn hom_vector_for(
    g: &DistinguishedGraph,
    h: &Graph,
    limits: &SymmetryLimits,
) -> Result<(TupleClasses, HomVector), SymmetryError> {
    let classes = TupleClasses::new(h, g.arity(), limits)?;
    let v = hom_vector(g, &classes)?;
    Ok((classes, v))
}

impl From<HomError> for SymmetryError {
    fn from(e: HomError) -> Self {
        SymmetryError::Hom(e)
    }
}
