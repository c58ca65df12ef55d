//! Simple undirected graphs with string-named vertices, partially labelled
//! graphs and graphs with distinguished vertices.
//!
//! Every value here is immutable once built. Vertices are kept in
//! lexicographic order and every neighbour list is sorted, so anything that
//! walks a graph visits vertices in the same order on every run.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Separator between a vertex and the tag of the copy it belongs to.
pub const TAG_SEPARATOR: char = '@';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    Loop(String),
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(String, String),
    #[error("vertex names must be non-empty and free of whitespace: {0:?}")]
    InvalidName(String),
    #[error("tag {0:?} is empty or contains the reserved character '@'")]
    InvalidTag(String),
    #[error("tag {0:?} is used by more than one part")]
    DuplicateTag(String),
    #[error("pinned vertex `{0}` is not a vertex of the underlying graph")]
    PinOutsideGraph(String),
    #[error("class merging into `{name}` pins its members to both `{first}` and `{second}`")]
    PinConflict {
        name: String,
        first: String,
        second: String,
    },
    #[error("vertex `{0}` appears in more than one identification class")]
    OverlappingClasses(String),
    #[error("identification class `{0}` is empty")]
    EmptyClass(String),
    #[error("name `{0}` for an identification class is not fresh")]
    NameNotFresh(String),
    #[error("identifying adjacent vertices `{0}` and `{1}` would create a loop")]
    IdentifiesAdjacent(String, String),
}

fn validate_name(name: &str) -> Result<(), GraphError> {
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(GraphError::InvalidName(name.to_string()));
    }
    Ok(())
}

/// A finite simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting loops, repeated vertices, repeated edges and
    /// edges whose endpoints were not declared.
    pub fn new<V, E, S, T, U>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (T, U)>,
        S: Into<String>,
        T: AsRef<str>,
        U: AsRef<str>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            validate_name(&v)?;
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v));
            }
            names.push(v);
        }
        names.sort();
        let index: HashMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let a = *index
                .get(u)
                .ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
            let b = *index
                .get(v)
                .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
            if a == b {
                return Err(GraphError::Loop(u.to_string()));
            }
            if !edge_set.insert((a.min(b), a.max(b))) {
                return Err(GraphError::DuplicateEdge(u.to_string(), v.to_string()));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            index,
            adj,
            edge_count: edge_set.len(),
        })
    }

    /// Builds a graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges<T: AsRef<str>>(edges: &[(T, T)]) -> Result<Self, GraphError> {
        let vertices: BTreeSet<String> = edges
            .iter()
            .flat_map(|(u, v)| [u.as_ref().to_string(), v.as_ref().to_string()])
            .collect();
        Graph::new(vertices, edges.iter().map(|(u, v)| (u.as_ref(), v.as_ref())))
    }

    /// Like [`Graph::new`] but repeated edges collapse. Loops are still errors.
    pub(crate) fn new_collapsing(
        vertices: BTreeSet<String>,
        edges: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if u < v {
                set.insert((u, v));
            } else {
                set.insert((v, u));
            }
        }
        Graph::new(vertices, set)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Vertex names in lexicographic order; a vertex's position is its index.
    pub fn vertices(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Sorted neighbour indices of `v`.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_edge_named(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.has_edge(a, b),
            _ => false,
        }
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edges by name, each pair ordered and the list sorted.
    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges()
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect()
    }

    /// The subgraph induced by the given vertex indices.
    pub fn induced_subgraph(&self, keep: &BTreeSet<usize>) -> Graph {
        let vertices: Vec<String> = keep.iter().map(|&v| self.names[v].clone()).collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|(u, v)| (self.names[u].clone(), self.names[v].clone()))
            .collect();
        Graph::new(vertices, edges).expect("induced subgraph of a valid graph is valid")
    }

    /// The graph with the given vertex indices deleted.
    pub fn without_vertices(&self, remove: &BTreeSet<usize>) -> Graph {
        let keep = (0..self.vertex_count()).filter(|v| !remove.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Index sets of the connected components, ordered by least vertex.
    pub fn component_indices(&self) -> Vec<BTreeSet<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() <= 1
    }

    /// Renames every vertex through `f`, which must be injective.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Graph, GraphError> {
        let vertices: Vec<String> = self.names.iter().map(|n| f(n)).collect();
        let edges: Vec<(String, String)> = self
            .edges()
            .map(|(u, v)| (f(&self.names[u]), f(&self.names[v])))
            .collect();
        Graph::new(vertices, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edge_names())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self.names.clone(),
            edges: self.edge_names(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        Graph::new(repr.vertices, repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Connected components as graphs, ordered by their least vertex.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    g.component_indices()
        .iter()
        .map(|comp| g.induced_subgraph(comp))
        .collect()
}

/// A vertex of a tagged copy, written `base@tag`.
///
/// Tags never contain `@`, so splitting at the last `@` recovers the pair and
/// tagging stays injective under nesting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexTag {
    base: String,
    tag: String,
}

impl VertexTag {
    pub fn new(base: impl Into<String>, tag: impl Into<String>) -> Result<Self, GraphError> {
        let tag = tag.into();
        validate_tag(&tag)?;
        Ok(VertexTag {
            base: base.into(),
            tag,
        })
    }

    pub fn parse(name: &str) -> Option<Self> {
        let (base, tag) = name.rsplit_once(TAG_SEPARATOR)?;
        Some(VertexTag {
            base: base.to_string(),
            tag: tag.to_string(),
        })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn render(&self) -> String {
        format!("{}{}{}", self.base, TAG_SEPARATOR, self.tag)
    }
}

/// `base@tag` for a tag already known to be valid.
pub fn tagged(base: &str, tag: &str) -> String {
    format!("{base}{TAG_SEPARATOR}{tag}")
}

fn validate_tag(tag: &str) -> Result<(), GraphError> {
    if tag.is_empty() || tag.contains(TAG_SEPARATOR) || tag.chars().any(char::is_whitespace) {
        return Err(GraphError::InvalidTag(tag.to_string()));
    }
    Ok(())
}

/// A graph together with a partial map pinning some of its vertices to
/// vertices of a host graph. Pin targets are plain names and are checked
/// against a host only when the graph is used with one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartiallyLabelledGraph {
    graph: Graph,
    pinning: BTreeMap<String, String>,
}

impl PartiallyLabelledGraph {
    pub fn new(graph: Graph, pinning: BTreeMap<String, String>) -> Result<Self, GraphError> {
        if let Some(v) = pinning.keys().find(|v| !graph.contains(v)) {
            return Err(GraphError::PinOutsideGraph(v.clone()));
        }
        Ok(PartiallyLabelledGraph { graph, pinning })
    }

    pub fn unpinned(graph: Graph) -> Self {
        PartiallyLabelledGraph {
            graph,
            pinning: BTreeMap::new(),
        }
    }

    pub fn empty() -> Self {
        Self::unpinned(Graph::empty())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pinning(&self) -> &BTreeMap<String, String> {
        &self.pinning
    }

    pub fn is_pinned(&self, v: &str) -> bool {
        self.pinning.contains_key(v)
    }

    /// Adds `v ↦ target`. Re-pinning a vertex to the same target is a no-op;
    /// to a different one is a conflict.
    pub fn with_pin(&self, v: &str, target: &str) -> Result<Self, GraphError> {
        if !self.graph.contains(v) {
            return Err(GraphError::PinOutsideGraph(v.to_string()));
        }
        let mut pinning = self.pinning.clone();
        if let Some(old) = pinning.get(v) {
            if old != target {
                return Err(GraphError::PinConflict {
                    name: v.to_string(),
                    first: old.clone(),
                    second: target.to_string(),
                });
            }
        }
        pinning.insert(v.to_string(), target.to_string());
        Ok(PartiallyLabelledGraph {
            graph: self.graph.clone(),
            pinning,
        })
    }
}

impl<'de> Deserialize<'de> for PartiallyLabelledGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            graph: Graph,
            pinning: BTreeMap<String, String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        PartiallyLabelledGraph::new(repr.graph, repr.pinning).map_err(serde::de::Error::custom)
    }
}

/// A graph with an ordered tuple of distinguished vertices; repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishedGraph {
    graph: Graph,
    distinguished: Vec<String>,
}

impl DistinguishedGraph {
    pub fn new(graph: Graph, distinguished: Vec<String>) -> Result<Self, GraphError> {
        if let Some(v) = distinguished.iter().find(|v| !graph.contains(v)) {
            return Err(GraphError::UnknownVertex(v.clone()));
        }
        Ok(DistinguishedGraph {
            graph,
            distinguished,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn distinguished(&self) -> &[String] {
        &self.distinguished
    }

    pub fn arity(&self) -> usize {
        self.distinguished.len()
    }

    /// Indices of the distinguished vertices, in tuple order.
    pub fn distinguished_indices(&self) -> Vec<usize> {
        self.distinguished
            .iter()
            .map(|v| self.graph.index_of(v).expect("validated on construction"))
            .collect()
    }
}

impl<'de> Deserialize<'de> for DistinguishedGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            graph: Graph,
            distinguished: Vec<String>,
        }
        let repr = Repr::deserialize(deserializer)?;
        DistinguishedGraph::new(repr.graph, repr.distinguished).map_err(serde::de::Error::custom)
    }
}

/// Disjoint union of tagged copies: vertex `v` of the part tagged `T`
/// becomes `v@T`, and the pinnings are carried over under the renaming.
pub fn disjoint_union_with_tags(
    parts: &[(&PartiallyLabelledGraph, &str)],
) -> Result<PartiallyLabelledGraph, GraphError> {
    let mut tags = BTreeSet::new();
    for (_, tag) in parts {
        validate_tag(tag)?;
        if !tags.insert(*tag) {
            return Err(GraphError::DuplicateTag(tag.to_string()));
        }
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut pinning = BTreeMap::new();
    for (part, tag) in parts {
        let g = part.graph();
        vertices.extend(g.vertices().iter().map(|v| tagged(v, tag)));
        edges.extend(
            g.edge_names()
                .into_iter()
                .map(|(u, v)| (tagged(&u, tag), tagged(&v, tag))),
        );
        for (v, target) in part.pinning() {
            pinning.insert(tagged(v, tag), target.clone());
        }
    }
    let graph = Graph::new(vertices, edges)?;
    PartiallyLabelledGraph::new(graph, pinning)
}

/// Merges each class of vertices into a single vertex with the class's name.
///
/// Edges are carried to the merged vertices and parallel edges collapse. A
/// merged vertex is pinned when any member was; members pinned to different
/// targets are a conflict, as is a class containing two adjacent vertices.
/// A class name may reuse one of its own members' names but no other
/// existing name.
pub fn identify_vertices(
    j: &PartiallyLabelledGraph,
    classes: &[(Vec<String>, String)],
) -> Result<PartiallyLabelledGraph, GraphError> {
    let g = j.graph();
    let mut rep: HashMap<&str, &str> = HashMap::new();
    let mut new_names = BTreeSet::new();
    for (members, name) in classes {
        validate_name(name)?;
        if members.is_empty() {
            return Err(GraphError::EmptyClass(name.clone()));
        }
        if !new_names.insert(name.as_str()) {
            return Err(GraphError::NameNotFresh(name.clone()));
        }
        for m in members {
            if !g.contains(m) {
                return Err(GraphError::UnknownVertex(m.clone()));
            }
            if rep.insert(m.as_str(), name.as_str()).is_some() {
                return Err(GraphError::OverlappingClasses(m.clone()));
            }
        }
    }
    for (members, name) in classes {
        if g.contains(name) && !members.iter().any(|m| m == name) {
            return Err(GraphError::NameNotFresh(name.clone()));
        }
        for (a, u) in members.iter().enumerate() {
            for w in &members[a + 1..] {
                if g.has_edge_named(u, w) {
                    return Err(GraphError::IdentifiesAdjacent(u.clone(), w.clone()));
                }
            }
        }
    }
    let image = |v: &str| -> String { rep.get(v).copied().unwrap_or(v).to_string() };
    let mut pinning: BTreeMap<String, String> = BTreeMap::new();
    for (v, target) in j.pinning() {
        let new_v = image(v);
        if let Some(old) = pinning.get(&new_v) {
            if old != target {
                return Err(GraphError::PinConflict {
                    name: new_v,
                    first: old.clone(),
                    second: target.clone(),
                });
            }
        }
        pinning.insert(new_v, target.clone());
    }
    let vertices: BTreeSet<String> = g.vertices().iter().map(|v| image(v)).collect();
    let edges = g
        .edge_names()
        .into_iter()
        .map(|(u, v)| (image(&u), image(&v)));
    let graph = Graph::new_collapsing(vertices, edges)?;
    PartiallyLabelledGraph::new(graph, pinning)
}
