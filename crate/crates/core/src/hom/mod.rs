//! Homomorphism counts: exact, mod 2, pinned, distinguished, injective,
//! plus independent-set counting and explicit enumeration.

pub(crate) mod elim;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{DistinguishedGraph, Graph, PartiallyLabelledGraph};
use elim::{ElimError, Host, Pattern};

/// Largest intermediate table the elimination engine may build before the
/// caller falls back to backtracking (or gives up, for parity-only calls).
pub const DEFAULT_TABLE_BUDGET: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("pin target `{0}` is not a vertex of the host")]
    UnknownHostVertex(String),
    #[error("vertex `{0}` is not in the pattern graph")]
    UnknownVertex(String),
    #[error("tuple lengths differ: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("counting needs a table of {entries} entries, over the budget")]
    OverBudget { entries: u128 },
}

/// An exact homomorphism count; the parity is derived from it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomCount(BigUint);

impl HomCount {
    pub fn new(exact: BigUint) -> Self {
        HomCount(exact)
    }

    pub fn exact(&self) -> &BigUint {
        &self.0
    }

    pub fn is_odd(&self) -> bool {
        self.0.bit(0)
    }

    pub fn parity(&self) -> u8 {
        self.is_odd() as u8
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for HomCount {
    fn from(n: u64) -> Self {
        HomCount(BigUint::from(n))
    }
}

impl fmt::Display for HomCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct HomCountRepr {
    exact: String,
    parity: u8,
}

impl Serialize for HomCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HomCountRepr {
            exact: self.0.to_string(),
            parity: self.parity(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = HomCountRepr::deserialize(deserializer)?;
        let exact: BigUint = repr.exact.parse().map_err(serde::de::Error::custom)?;
        if exact.bit(0) as u8 != repr.parity {
            return Err(serde::de::Error::custom("parity does not match exact count"));
        }
        Ok(HomCount(exact))
    }
}

/// A homomorphism written out vertex by vertex.
pub type Assignment = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub assignments: Vec<Assignment>,
    pub truncated: bool,
}

fn lower(j: &PartiallyLabelledGraph, h: &Graph) -> Result<Pattern, HomError> {
    let g = j.graph();
    let mut pins = vec![None; g.vertex_count()];
    for (v, target) in j.pinning() {
        let hv = h
            .index_of(target)
            .ok_or_else(|| HomError::UnknownHostVertex(target.clone()))?;
        pins[g.index_of(v).expect("pinning domain checked on construction")] = Some(hv);
    }
    Ok(Pattern {
        n: g.vertex_count(),
        edges: g.edges().collect(),
        pins,
    })
}

fn exact_by_elimination(p: &Pattern, host: &Host, budget: u128) -> Result<BigUint, ElimError> {
    match elim::count::<u128>(p, host, budget) {
        Ok(n) => Ok(BigUint::from(n)),
        Err(ElimError::Overflow) => elim::count::<BigUint>(p, host, budget),
        Err(e) => Err(e),
    }
}

fn exact_count(p: &Pattern, host: &Host) -> BigUint {
    match exact_by_elimination(p, host, DEFAULT_TABLE_BUDGET) {
        Ok(n) => n,
        Err(_) => search::count(p, host, false),
    }
}

fn parity_count(p: &Pattern, host: &Host, budget: u128) -> Result<bool, HomError> {
    elim::count::<bool>(p, host, budget).map_err(|e| match e {
        ElimError::TooWide { entries } => HomError::OverBudget { entries },
        ElimError::Overflow => unreachable!("parity arithmetic cannot overflow"),
    })
}

/// Number of homomorphisms from `g` to `h`.
pub fn count_homs(g: &Graph, h: &Graph) -> HomCount {
    let j = PartiallyLabelledGraph::unpinned(g.clone());
    let p = lower(&j, h).expect("no pins");
    HomCount(exact_count(&p, &Host::from_graph(h)))
}

/// Parity of the number of homomorphisms from `g` to `h`.
pub fn count_homs_parity(g: &Graph, h: &Graph) -> bool {
    let p = lower(&PartiallyLabelledGraph::unpinned(g.clone()), h).expect("no pins");
    let host = Host::from_graph(h);
    parity_count(&p, &host, DEFAULT_TABLE_BUDGET)
        .unwrap_or_else(|_| search::count(&p, &host, false).bit(0))
}

/// Number of homomorphisms from the underlying graph of `j` to `h` that
/// send every pinned vertex to its target.
pub fn count_pinned_homs(j: &PartiallyLabelledGraph, h: &Graph) -> Result<HomCount, HomError> {
    let p = lower(j, h)?;
    Ok(HomCount(exact_count(&p, &Host::from_graph(h))))
}

/// Parity of [`count_pinned_homs`], computed in GF(2) throughout.
pub fn count_pinned_parity(j: &PartiallyLabelledGraph, h: &Graph) -> Result<bool, HomError> {
    count_pinned_parity_with_budget(j, h, DEFAULT_TABLE_BUDGET)
}

/// As [`count_pinned_parity`] with an explicit table budget. Exceeding the
/// budget is an error rather than a slow fallback.
pub fn count_pinned_parity_with_budget(
    j: &PartiallyLabelledGraph,
    h: &Graph,
    budget: u128,
) -> Result<bool, HomError> {
    let p = lower(j, h)?;
    parity_count(&p, &Host::from_graph(h), budget)
}

/// Reference count by explicit backtracking.
pub fn count_pinned_by_search(j: &PartiallyLabelledGraph, h: &Graph) -> Result<HomCount, HomError> {
    let p = lower(j, h)?;
    Ok(HomCount(search::count(&p, &Host::from_graph(h), false)))
}

/// Translates a pair of distinguished graphs into a pinning. `None` when two
/// equal distinguished vertices must go to different host vertices.
pub fn distinguished_as_pinning(
    g: &DistinguishedGraph,
    h: &DistinguishedGraph,
) -> Result<Option<PartiallyLabelledGraph>, HomError> {
    if g.arity() != h.arity() {
        return Err(HomError::ArityMismatch {
            left: g.arity(),
            right: h.arity(),
        });
    }
    let mut pinning = BTreeMap::new();
    for (x, y) in g.distinguished().iter().zip(h.distinguished()) {
        if let Some(old) = pinning.insert(x.clone(), y.clone()) {
            if &old != y {
                return Ok(None);
            }
        }
    }
    Ok(Some(
        PartiallyLabelledGraph::new(g.graph().clone(), pinning).expect("tuple vertices exist"),
    ))
}

/// Homomorphisms `g → h` sending the i-th distinguished vertex of `g` to
/// the i-th distinguished vertex of `h`.
pub fn count_distinguished_homs(
    g: &DistinguishedGraph,
    h: &DistinguishedGraph,
) -> Result<HomCount, HomError> {
    match distinguished_as_pinning(g, h)? {
        Some(j) => count_pinned_homs(&j, h.graph()),
        None => Ok(HomCount(BigUint::zero())),
    }
}

pub fn count_distinguished_parity(
    g: &DistinguishedGraph,
    h: &DistinguishedGraph,
) -> Result<bool, HomError> {
    match distinguished_as_pinning(g, h)? {
        Some(j) => count_pinned_parity(&j, h.graph()),
        None => Ok(false),
    }
}

/// Injective homomorphisms respecting the tuples.
pub fn count_injective_homs(
    g: &DistinguishedGraph,
    h: &DistinguishedGraph,
) -> Result<HomCount, HomError> {
    if g.arity() != h.arity() {
        return Err(HomError::ArityMismatch {
            left: g.arity(),
            right: h.arity(),
        });
    }
    // equality types must agree in both directions
    let xs = g.distinguished();
    let ys = h.distinguished();
    for a in 0..xs.len() {
        for b in 0..xs.len() {
            if (xs[a] == xs[b]) != (ys[a] == ys[b]) {
                return Ok(HomCount(BigUint::zero()));
            }
        }
    }
    let j = distinguished_as_pinning(g, h)?.expect("equality types agree");
    let p = lower(&j, h.graph())?;
    Ok(HomCount(search::count(&p, &Host::from_graph(h.graph()), true)))
}

/// Up to `limit` homomorphisms in lexicographic order of the images of the
/// pattern's vertices, taken in sorted vertex order.
pub fn enumerate_homs(
    j: &PartiallyLabelledGraph,
    h: &Graph,
    limit: usize,
) -> Result<Enumeration, HomError> {
    let p = lower(j, h)?;
    let (raw, truncated) = search::enumerate(&p, &Host::from_graph(h), limit);
    let g = j.graph();
    let assignments = raw
        .into_iter()
        .map(|a| {
            a.iter()
                .enumerate()
                .map(|(v, &hv)| (g.name(v).to_string(), h.name(hv).to_string()))
                .collect()
        })
        .collect();
    Ok(Enumeration {
        assignments,
        truncated,
    })
}

/// Counts for every choice of images of the (distinct) `roots`, as a map
/// from host-vertex tuples. Tuples with count zero are omitted.
pub fn rooted_counts(
    j: &PartiallyLabelledGraph,
    roots: &[&str],
    h: &Graph,
) -> Result<BTreeMap<Vec<String>, HomCount>, HomError> {
    let (p, idx) = lower_rooted(j, roots, h)?;
    let host = Host::from_graph(h);
    let table: Vec<BigUint> = match elim::rooted::<u128>(&p, &host, &idx, DEFAULT_TABLE_BUDGET) {
        Ok(t) => t.into_iter().map(BigUint::from).collect(),
        Err(ElimError::Overflow) => elim::rooted::<BigUint>(&p, &host, &idx, DEFAULT_TABLE_BUDGET)
            .map_err(over_budget)?,
        Err(e) => return Err(over_budget(e)),
    };
    Ok(scatter(table, roots.len(), h, |c| !c.is_zero())
        .into_iter()
        .map(|(k, v)| (k, HomCount(v)))
        .collect())
}

/// The host tuples whose rooted count is odd.
pub fn rooted_odd_tuples(
    j: &PartiallyLabelledGraph,
    roots: &[&str],
    h: &Graph,
) -> Result<Vec<Vec<String>>, HomError> {
    let (p, idx) = lower_rooted(j, roots, h)?;
    let table = elim::rooted::<bool>(&p, &Host::from_graph(h), &idx, DEFAULT_TABLE_BUDGET)
        .map_err(over_budget)?;
    Ok(scatter(table, roots.len(), h, |b| *b).into_keys().collect())
}

fn over_budget(e: ElimError) -> HomError {
    match e {
        ElimError::TooWide { entries } => HomError::OverBudget { entries },
        ElimError::Overflow => unreachable!("big integers do not overflow"),
    }
}

fn lower_rooted(
    j: &PartiallyLabelledGraph,
    roots: &[&str],
    h: &Graph,
) -> Result<(Pattern, Vec<usize>), HomError> {
    let p = lower(j, h)?;
    let mut idx = Vec::with_capacity(roots.len());
    for r in roots {
        let v = j
            .graph()
            .index_of(r)
            .ok_or_else(|| HomError::UnknownVertex(r.to_string()))?;
        assert!(!idx.contains(&v), "rooted counts need distinct roots");
        idx.push(v);
    }
    Ok((p, idx))
}

fn scatter<R>(
    table: Vec<R>,
    arity: usize,
    h: &Graph,
    keep: impl Fn(&R) -> bool,
) -> BTreeMap<Vec<String>, R> {
    let n = h.vertex_count();
    let mut out = BTreeMap::new();
    for (k, value) in table.into_iter().enumerate() {
        if !keep(&value) {
            continue;
        }
        let mut tuple = vec![String::new(); arity];
        let mut rest = k;
        for slot in (0..arity).rev() {
            tuple[slot] = h.name(rest % n).to_string();
            rest /= n;
        }
        out.insert(tuple, value);
    }
    out
}

/// Number of independent sets of `g`, by branching on a vertex of largest
/// degree: |I(G)| = |I(G - v)| + |I(G - N[v])|.
pub fn count_independent_sets(g: &Graph) -> HomCount {
    let n = g.vertex_count();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbours(v).to_vec()).collect();
    let all: Vec<bool> = vec![true; n];
    HomCount(independent_sets(&nbrs, all))
}

fn independent_sets(nbrs: &[Vec<usize>], alive: Vec<bool>) -> BigUint {
    let degree = |v: usize| nbrs[v].iter().filter(|&&w| alive[w]).count();
    let pick = (0..nbrs.len())
        .filter(|&v| alive[v])
        .max_by_key(|&v| (degree(v), std::cmp::Reverse(v)));
    match pick {
        None => BigUint::from(1u8),
        Some(v) if degree(v) == 0 => {
            let free = alive.iter().filter(|&&a| a).count();
            BigUint::from(1u8) << free
        }
        Some(v) => {
            let mut without = alive.clone();
            without[v] = false;
            let mut closed = without.clone();
            for &w in &nbrs[v] {
                closed[w] = false;
            }
            independent_sets(nbrs, without) + independent_sets(nbrs, closed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(edges: &[(&str, &str)]) -> Graph {
        Graph::from_edges(edges).unwrap()
    }

    fn k3() -> Graph {
        g(&[("a", "b"), ("b", "c"), ("a", "c")])
    }

    fn dg(graph: &Graph, tuple: &[&str]) -> DistinguishedGraph {
        DistinguishedGraph::new(graph.clone(), tuple.iter().map(|s| s.to_string()).collect())
            .unwrap()
    }

    #[test]
    fn basic_counts() {
        let edge = g(&[("x", "y")]);
        let p3 = g(&[("x", "y"), ("y", "z")]);
        assert_eq!(count_homs(&edge, &k3()), HomCount::from(6));
        assert_eq!(count_homs(&k3(), &edge), HomCount::from(0));
        assert_eq!(count_homs(&p3, &edge), HomCount::from(2));
        assert_eq!(count_homs(&Graph::empty(), &edge), HomCount::from(1));
        assert_eq!(count_homs(&Graph::empty(), &Graph::empty()), HomCount::from(1));
        assert_eq!(count_homs(&edge, &Graph::empty()), HomCount::from(0));
    }

    #[test]
    fn pinned_counts() {
        let path = g(&[("a", "b"), ("b", "c")]);
        let j = PartiallyLabelledGraph::new(
            g(&[("y", "z")]),
            BTreeMap::from([("y".to_string(), "a".to_string())]),
        )
        .unwrap();
        assert_eq!(count_pinned_homs(&j, &path).unwrap(), HomCount::from(1));
        let j2 = j.with_pin("z", "c").unwrap();
        assert_eq!(count_pinned_homs(&j2, &path).unwrap(), HomCount::from(0));
        let bad = j.with_pin("z", "nowhere").unwrap();
        assert_eq!(
            count_pinned_homs(&bad, &path),
            Err(HomError::UnknownHostVertex("nowhere".into()))
        );
    }

    #[test]
    fn distinguished_counts() {
        let xy = g(&[("x", "y")]);
        let ab = g(&[("a", "b")]);
        assert_eq!(
            count_distinguished_homs(&dg(&xy, &["x", "y"]), &dg(&ab, &["a", "b"])).unwrap(),
            HomCount::from(1)
        );
        assert_eq!(
            count_distinguished_homs(&dg(&xy, &["x", "y"]), &dg(&ab, &["a", "a"])).unwrap(),
            HomCount::from(0)
        );
        assert_eq!(
            count_distinguished_homs(&dg(&xy, &["x", "x"]), &dg(&ab, &["a", "b"])).unwrap(),
            HomCount::from(0)
        );
        assert!(matches!(
            count_distinguished_homs(&dg(&xy, &["x"]), &dg(&ab, &[])),
            Err(HomError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn injective_counts() {
        assert_eq!(
            count_injective_homs(&dg(&k3(), &[]), &dg(&k3(), &[])).unwrap(),
            HomCount::from(6)
        );
        let p3 = g(&[("x", "y"), ("y", "z")]);
        assert_eq!(
            count_injective_homs(&dg(&p3, &[]), &dg(&k3(), &[])).unwrap(),
            HomCount::from(6)
        );
        assert_eq!(
            count_injective_homs(&dg(&p3, &["x", "x"]), &dg(&k3(), &["a", "b"])).unwrap(),
            HomCount::from(0)
        );
        // non-injective would allow x, z to share an image
        assert_eq!(
            count_injective_homs(&dg(&p3, &["x", "z"]), &dg(&k3(), &["a", "a"])).unwrap(),
            HomCount::from(0)
        );
    }

    #[test]
    fn independent_sets() {
        assert_eq!(count_independent_sets(&k3()), HomCount::from(4));
        assert_eq!(
            count_independent_sets(&g(&[("a", "b"), ("b", "c")])),
            HomCount::from(5)
        );
        assert_eq!(count_independent_sets(&Graph::empty()), HomCount::from(1));
        let isolated = Graph::new(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(count_independent_sets(&isolated), HomCount::from(8));
    }

    #[test]
    fn enumeration_order_and_truncation() {
        let e = PartiallyLabelledGraph::unpinned(g(&[("x", "y")]));
        let all = enumerate_homs(&e, &k3(), 10).unwrap();
        assert_eq!(all.assignments.len(), 6);
        assert!(!all.truncated);
        let pairs: Vec<(String, String)> = all
            .assignments
            .iter()
            .map(|a| (a["x"].clone(), a["y"].clone()))
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
        let two = enumerate_homs(&e, &k3(), 2).unwrap();
        assert_eq!(two.assignments, all.assignments[..2]);
        assert!(two.truncated);
        let unsat = e.with_pin("x", "a").unwrap().with_pin("y", "a").unwrap();
        assert!(enumerate_homs(&unsat, &k3(), 10).unwrap().assignments.is_empty());
    }

    #[test]
    fn rooted_tables_match_pinned_counts() {
        let c5 = g(&[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")]);
        let pattern = PartiallyLabelledGraph::unpinned(g(&[("y", "u"), ("u", "z"), ("u", "w")]))
            .with_pin("w", "1")
            .unwrap();
        let table = rooted_counts(&pattern, &["y", "z"], &c5).unwrap();
        for a in c5.vertices() {
            for b in c5.vertices() {
                let pinned = pattern.with_pin("y", a).unwrap().with_pin("z", b).unwrap();
                let direct = count_pinned_homs(&pinned, &c5).unwrap();
                let from_table = table
                    .get(&vec![a.clone(), b.clone()])
                    .cloned()
                    .unwrap_or(HomCount::from(0));
                assert_eq!(direct, from_table, "({a},{b})");
            }
        }
        let odd = rooted_odd_tuples(&pattern, &["y", "z"], &c5).unwrap();
        let expected: Vec<Vec<String>> = table
            .iter()
            .filter(|(_, c)| c.is_odd())
            .map(|(k, _)| k.clone())
            .collect();
        assert_eq!(odd, expected);
    }

    #[test]
    fn serde_shape() {
        let c = HomCount::from(15);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"exact":"15","parity":1}"#);
        assert!(serde_json::from_str::<HomCount>(r#"{"exact":"15","parity":0}"#).is_err());
    }

    /// Brute force over all |V(H)|^|V(G)| maps.
    fn brute(j: &PartiallyLabelledGraph, h: &Graph) -> u64 {
        let gg = j.graph();
        let n = gg.vertex_count();
        let m = h.vertex_count();
        let total = (m as u64).pow(n as u32);
        let mut count = 0;
        for code in 0..total {
            let mut rest = code;
            let map: Vec<usize> = (0..n)
                .map(|_| {
                    let d = (rest % m as u64) as usize;
                    rest /= m as u64;
                    d
                })
                .collect();
            let ok_edges = gg.edges().all(|(u, v)| h.has_edge(map[u], map[v]));
            let ok_pins = j
                .pinning()
                .iter()
                .all(|(v, t)| h.name(map[gg.index_of(v).unwrap()]) == t);
            if ok_edges && ok_pins {
                count += 1;
            }
        }
        count
    }

    pub(crate) fn arb_graph(max_n: usize, prefix: &'static str) -> impl Strategy<Value = Graph> {
        (1..=max_n)
            .prop_flat_map(move |n| {
                let pairs = n * (n - 1) / 2;
                (Just(n), proptest::collection::vec(any::<bool>(), pairs))
            })
            .prop_map(move |(n, bits)| {
                let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in (a + 1)..n {
                        if bits[k] {
                            edges.push((names[a].clone(), names[b].clone()));
                        }
                        k += 1;
                    }
                }
                Graph::new(names, edges).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn engines_agree_with_brute_force(
            gg in arb_graph(5, "g"),
            h in arb_graph(4, "h"),
            pin_choice in proptest::collection::vec(any::<Option<u8>>(), 5),
        ) {
            let mut j = PartiallyLabelledGraph::unpinned(gg.clone());
            for (v, choice) in gg.vertices().iter().zip(&pin_choice) {
                if let Some(c) = choice {
                    if c % 3 == 0 {
                        let t = h.name(*c as usize % h.vertex_count()).to_string();
                        j = j.with_pin(v, &t).unwrap();
                    }
                }
            }
            let expected = brute(&j, &h);
            prop_assert_eq!(count_pinned_homs(&j, &h).unwrap(), HomCount::from(expected));
            prop_assert_eq!(count_pinned_by_search(&j, &h).unwrap(), HomCount::from(expected));
            prop_assert_eq!(count_pinned_parity(&j, &h).unwrap(), expected % 2 == 1);
            let listed = enumerate_homs(&j, &h, usize::MAX).unwrap();
            prop_assert_eq!(listed.assignments.len() as u64, expected);
        }

        #[test]
        fn partition_law(gg in arb_graph(5, "g"), h in arb_graph(4, "h"), pick in 0usize..5) {
            let j = PartiallyLabelledGraph::unpinned(gg.clone());
            let v = gg.name(pick % gg.vertex_count());
            let mut sum = BigUint::zero();
            for t in h.vertices() {
                sum += count_pinned_homs(&j.with_pin(v, t).unwrap(), &h).unwrap().exact();
            }
            prop_assert_eq!(HomCount::new(sum), count_pinned_homs(&j, &h).unwrap());
        }

        #[test]
        fn distinguished_matches_pinned(
            gg in arb_graph(5, "g"),
            h in arb_graph(4, "h"),
            xs in proptest::collection::vec(0usize..5, 0..3),
            ys in proptest::collection::vec(0usize..4, 3),
        ) {
            let xt: Vec<String> = xs.iter().map(|&i| gg.name(i % gg.vertex_count()).to_string()).collect();
            let yt: Vec<String> = ys[..xt.len()].iter().map(|&i| h.name(i % h.vertex_count()).to_string()).collect();
            let gx = DistinguishedGraph::new(gg.clone(), xt.clone()).unwrap();
            let hy = DistinguishedGraph::new(h.clone(), yt.clone()).unwrap();
            // pin x_i -> y_i one at a time; a clash means no homomorphism
            let mut j = PartiallyLabelledGraph::unpinned(gg.clone());
            let mut clash = false;
            for (x, y) in xt.iter().zip(&yt) {
                match j.with_pin(x, y) {
                    Ok(next) => j = next,
                    Err(_) => clash = true,
                }
            }
            let expected = if clash { 0 } else { brute(&j, &h) };
            prop_assert_eq!(count_distinguished_homs(&gx, &hy).unwrap(), HomCount::from(expected));
        }

        #[test]
        fn independent_sets_match_subsets(gg in arb_graph(9, "g")) {
            let n = gg.vertex_count();
            let mut count = 0u64;
            for mask in 0u32..(1 << n) {
                if gg.edges().all(|(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0) {
                    count += 1;
                }
            }
            prop_assert_eq!(count_independent_sets(&gg), HomCount::from(count));
        }
    }
}
