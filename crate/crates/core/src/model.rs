//! Workflow models, paths, test sets, and the parallel-edge split.
//!
//! A [`SutModel`] is a weighted directed multigraph: a set of nodes, one of
//! which is the start node and at least one of which is an end node, and a
//! set of identified edges each carrying a [`Priority`]. Nodes and edges are
//! stored in natural id order, so the integer indexes [`NodeIdx`] and
//! [`EdgeIdx`] double as canonical positions; every algorithm in this crate
//! iterates in index order, which is what makes whole-pipeline output
//! deterministic.
//!
//! Models with parallel edges (several edges sharing source and target) can
//! be rewritten into simple graphs with [`SutModel::split_parallel_edges`];
//! paths found in the split graph are mapped back through the returned
//! [`SplitMap`] with [`translate_paths`].

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::natural::natural_cmp;

/// Edge priority assigned in the model. Edges without an explicit priority
/// are `low`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Priority {
    High,
    Medium,
    Low,
}

impl Priority {
    fn is_low(&self) -> bool {
        matches!(self, Priority::Low)
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Priority::High => "high",
            Priority::Medium => "medium",
            Priority::Low => "low",
        })
    }
}

/// Prioritized test level: which priority classes a generated suite must
/// cover. `High` targets high-priority edges only; `Medium` targets high- and
/// medium-priority edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ptl {
    High,
    Medium,
}

impl Ptl {
    /// Whether an edge of priority `p` belongs to this level's target class.
    pub fn includes(&self, p: Priority) -> bool {
        match self {
            Ptl::High => p == Priority::High,
            Ptl::Medium => p == Priority::High || p == Priority::Medium,
        }
    }
}

impl fmt::Display for Ptl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ptl::High => "high",
            Ptl::Medium => "medium",
        })
    }
}

/// The six suite generation algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ppt,
    Pct,
    Dct,
    Bf,
    Sc,
    Pg,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Ppt,
        Algorithm::Pct,
        Algorithm::Dct,
        Algorithm::Bf,
        Algorithm::Sc,
        Algorithm::Pg,
    ];

    /// Whether the algorithm consumes a requirement set (and therefore a
    /// simple graph) rather than the model's TDL targets directly.
    pub fn requirement_based(&self) -> bool {
        matches!(self, Algorithm::Bf | Algorithm::Sc | Algorithm::Pg)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Ppt => "ppt",
            Algorithm::Pct => "pct",
            Algorithm::Dct => "dct",
            Algorithm::Bf => "bf",
            Algorithm::Sc => "sc",
            Algorithm::Pg => "pg",
        })
    }
}

/// How a model is turned into a requirement set for the requirement-based
/// generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conversion {
    Atomic,
    Sequence,
    EdgePair,
}

impl fmt::Display for Conversion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conversion::Atomic => "atomic",
            Conversion::Sequence => "sequence",
            Conversion::EdgePair => "edge-pair",
        })
    }
}

/// Canonical position of a node within its model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeIdx(u32);

impl NodeIdx {
    pub fn as_usize(&self) -> usize {
        self.0 as usize
    }
}

/// Canonical position of an edge within its model. Because edges are stored
/// in natural id order, comparing indexes compares ids canonically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIdx(u32);

impl EdgeIdx {
    pub fn as_usize(&self) -> usize {
        self.0 as usize
    }
}

/// A node of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: String,
}

/// A directed edge of the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: NodeIdx,
    pub target: NodeIdx,
    pub priority: Priority,
}

/// Node declaration as written in model files and accepted by
/// [`SutModel::from_parts`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeDef {
    pub id: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub start: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub end: bool,
}

/// Edge declaration as written in model files and accepted by
/// [`SutModel::from_parts`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDef {
    pub id: String,
    pub source: String,
    pub target: String,
    #[serde(default = "default_priority", skip_serializing_if = "Priority::is_low")]
    pub priority: Priority,
}

fn default_priority() -> Priority {
    Priority::Low
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    nodes: Vec<NodeDef>,
    edges: Vec<EdgeDef>,
}

/// Errors raised while constructing or loading a model, test set, or
/// requirement set.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} references unknown node {node:?}")]
    UnknownNode { edge: String, node: String },
    #[error("model declares no start node")]
    NoStart,
    #[error("model declares multiple start nodes: {}", .0.join(", "))]
    MultipleStart(Vec<String>),
    #[error("model declares no end nodes")]
    NoEnds,
    #[error("unknown edge id {0:?}")]
    UnknownEdge(String),
    #[error("unknown node id {0:?}")]
    UnknownNodeId(String),
    #[error("no edge from {from:?} to {to:?} in the model")]
    NoSuchEdge { from: String, to: String },
    #[error("requirement must contain at least two nodes, found {0}")]
    RequirementTooShort(usize),
}

impl From<serde_json::Error> for ModelError {
    fn from(e: serde_json::Error) -> Self {
        ModelError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Error raised when a path in a split graph cannot be mapped back to the
/// original multigraph.
#[derive(Debug, thiserror::Error)]
pub enum TranslateError {
    #[error("path enters split node for edge {original:?} via {in_edge:?} but does not continue with {out_edge:?}")]
    EntersWithoutExit {
        original: String,
        in_edge: String,
        out_edge: String,
    },
    #[error("path uses split exit edge {out_edge:?} without entering through {in_edge:?}")]
    ExitsWithoutEnter { out_edge: String, in_edge: String },
}

/// Reachability problems found by [`SutModel::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// The node cannot be reached from the start node.
    UnreachableFromStart(String),
    /// No end node can be reached from the node.
    CannotReachEnd(String),
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::UnreachableFromStart(id) => {
                write!(f, "node {id:?} is unreachable from the start node")
            }
            ValidationIssue::CannotReachEnd(id) => {
                write!(f, "node {id:?} cannot reach any end node")
            }
        }
    }
}

/// Result of validating a model. An empty report means every node lies on
/// some start-to-end path, which all generators rely on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("model is valid");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

/// A workflow model: directed multigraph with one start node, a nonempty set
/// of end nodes, and prioritized edges. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SutModel {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    start: NodeIdx,
    ends: Vec<NodeIdx>,
    end_flags: Vec<bool>,
    out_adj: Vec<Vec<EdgeIdx>>,
    in_adj: Vec<Vec<EdgeIdx>>,
    node_index: HashMap<String, NodeIdx>,
    edge_index: HashMap<String, EdgeIdx>,
}

impl SutModel {
    /// Builds a model from node and edge declarations, checking structural
    /// invariants: unique ids, known node references, exactly one start node,
    /// and at least one end node. Nodes and edges are reordered into natural
    /// id order.
    pub fn from_parts(
        mut node_defs: Vec<NodeDef>,
        mut edge_defs: Vec<EdgeDef>,
    ) -> Result<Self, ModelError> {
        node_defs.sort_by(|a, b| natural_cmp(&a.id, &b.id));
        edge_defs.sort_by(|a, b| natural_cmp(&a.id, &b.id));

        let mut node_index = HashMap::with_capacity(node_defs.len());
        for (i, n) in node_defs.iter().enumerate() {
            if node_index.insert(n.id.clone(), NodeIdx(i as u32)).is_some() {
                return Err(ModelError::DuplicateNode(n.id.clone()));
            }
        }

        let starts: Vec<&NodeDef> = node_defs.iter().filter(|n| n.start).collect();
        let start = match starts.as_slice() {
            [] => return Err(ModelError::NoStart),
            [one] => node_index[&one.id],
            many => {
                return Err(ModelError::MultipleStart(
                    many.iter().map(|n| n.id.clone()).collect(),
                ))
            }
        };
        let ends: Vec<NodeIdx> = node_defs
            .iter()
            .filter(|n| n.end)
            .map(|n| node_index[&n.id])
            .collect();
        if ends.is_empty() {
            return Err(ModelError::NoEnds);
        }

        let mut edge_index = HashMap::with_capacity(edge_defs.len());
        let mut edges = Vec::with_capacity(edge_defs.len());
        for (i, e) in edge_defs.iter().enumerate() {
            if edge_index.insert(e.id.clone(), EdgeIdx(i as u32)).is_some() {
                return Err(ModelError::DuplicateEdge(e.id.clone()));
            }
            let source = *node_index.get(&e.source).ok_or_else(|| ModelError::UnknownNode {
                edge: e.id.clone(),
                node: e.source.clone(),
            })?;
            let target = *node_index.get(&e.target).ok_or_else(|| ModelError::UnknownNode {
                edge: e.id.clone(),
                node: e.target.clone(),
            })?;
            edges.push(Edge {
                id: e.id.clone(),
                source,
                target,
                priority: e.priority,
            });
        }

        let mut out_adj = vec![Vec::new(); node_defs.len()];
        let mut in_adj = vec![Vec::new(); node_defs.len()];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.source.as_usize()].push(EdgeIdx(i as u32));
            in_adj[e.target.as_usize()].push(EdgeIdx(i as u32));
        }

        let mut end_flags = vec![false; node_defs.len()];
        for e in &ends {
            end_flags[e.as_usize()] = true;
        }

        Ok(SutModel {
            nodes: node_defs.into_iter().map(|n| Node { id: n.id }).collect(),
            edges,
            start,
            ends,
            end_flags,
            out_adj,
            in_adj,
            node_index,
            edge_index,
        })
    }

    /// Parses a model from its JSON representation.
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: ModelFile = serde_json::from_str(text)?;
        Self::from_parts(file.nodes, file.edges)
    }

    /// Serializes the model to JSON. `from_json(&m.to_json())` reconstructs
    /// an equal model.
    pub fn to_json(&self) -> String {
        let file = ModelFile {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(i, n)| NodeDef {
                    id: n.id.clone(),
                    start: self.start.as_usize() == i,
                    end: self.end_flags[i],
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDef {
                    id: e.id.clone(),
                    source: self.nodes[e.source.as_usize()].id.clone(),
                    target: self.nodes[e.target.as_usize()].id.clone(),
                    priority: e.priority,
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("model serialization");
        out.push('\n');
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node(&self, n: NodeIdx) -> &Node {
        &self.nodes[n.as_usize()]
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e.as_usize()]
    }

    pub fn node_id(&self, n: NodeIdx) -> &str {
        &self.nodes[n.as_usize()].id
    }

    pub fn edge_id(&self, e: EdgeIdx) -> &str {
        &self.edges[e.as_usize()].id
    }

    pub fn node_idx(&self, id: &str) -> Result<NodeIdx, ModelError> {
        self.node_index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownNodeId(id.to_string()))
    }

    pub fn edge_idx(&self, id: &str) -> Result<EdgeIdx, ModelError> {
        self.edge_index
            .get(id)
            .copied()
            .ok_or_else(|| ModelError::UnknownEdge(id.to_string()))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        (0..self.nodes.len()).map(|i| NodeIdx(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        (0..self.edges.len()).map(|i| EdgeIdx(i as u32))
    }

    pub fn start(&self) -> NodeIdx {
        self.start
    }

    /// End nodes in canonical order.
    pub fn ends(&self) -> &[NodeIdx] {
        &self.ends
    }

    pub fn is_end(&self, n: NodeIdx) -> bool {
        self.end_flags[n.as_usize()]
    }

    /// Outgoing edges of a node, ascending by canonical edge order.
    pub fn out_edges(&self, n: NodeIdx) -> &[EdgeIdx] {
        &self.out_adj[n.as_usize()]
    }

    /// Incoming edges of a node, ascending by canonical edge order.
    pub fn in_edges(&self, n: NodeIdx) -> &[EdgeIdx] {
        &self.in_adj[n.as_usize()]
    }

    /// Edges whose priority belongs to the given level's target class, in
    /// canonical order.
    pub fn class_edges(&self, ptl: Ptl) -> Vec<EdgeIdx> {
        self.edges()
            .filter(|&e| ptl.includes(self.edge(e).priority))
            .collect()
    }

    /// Number of edges with the given priority.
    pub fn priority_count(&self, p: Priority) -> usize {
        self.edges.iter().filter(|e| e.priority == p).count()
    }

    /// Whether the graph is simple: no two edges share source and target.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert((e.source, e.target)))
    }

    /// Checks that every node is reachable from the start node and can reach
    /// at least one end node. Generators require an empty report.
    pub fn validate(&self) -> ValidationReport {
        let mut forward = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([self.start]);
        forward[self.start.as_usize()] = true;
        while let Some(n) = queue.pop_front() {
            for &e in self.out_edges(n) {
                let t = self.edge(e).target;
                if !forward[t.as_usize()] {
                    forward[t.as_usize()] = true;
                    queue.push_back(t);
                }
            }
        }

        let mut backward = vec![false; self.nodes.len()];
        let mut queue: VecDeque<NodeIdx> = self.ends.iter().copied().collect();
        for &e in &self.ends {
            backward[e.as_usize()] = true;
        }
        while let Some(n) = queue.pop_front() {
            for &e in self.in_edges(n) {
                let s = self.edge(e).source;
                if !backward[s.as_usize()] {
                    backward[s.as_usize()] = true;
                    queue.push_back(s);
                }
            }
        }

        let mut issues = Vec::new();
        for n in self.nodes() {
            if !forward[n.as_usize()] {
                issues.push(ValidationIssue::UnreachableFromStart(
                    self.node_id(n).to_string(),
                ));
            }
        }
        for n in self.nodes() {
            if !backward[n.as_usize()] {
                issues.push(ValidationIssue::CannotReachEnd(self.node_id(n).to_string()));
            }
        }
        ValidationReport { issues }
    }

    /// Rewrites parallel edge bundles into a simple graph. For each bundle of
    /// edges sharing source and target, the canonically first edge is kept;
    /// every further edge `e: u -> v` is replaced by a fresh node and the
    /// two-edge detour `u -> <e>__split -> v`. Returns the rewritten model
    /// and the mapping needed to translate paths back. A model that is
    /// already simple is returned unchanged with an empty map.
    pub fn split_parallel_edges(&self) -> (SutModel, SplitMap) {
        let mut node_defs: Vec<NodeDef> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| NodeDef {
                id: n.id.clone(),
                start: self.start.as_usize() == i,
                end: self.end_flags[i],
            })
            .collect();
        let mut taken_nodes: HashSet<String> =
            self.nodes.iter().map(|n| n.id.clone()).collect();
        let mut taken_edges: HashSet<String> =
            self.edges.iter().map(|e| e.id.clone()).collect();

        let mut seen_pairs: HashSet<(NodeIdx, NodeIdx)> = HashSet::new();
        let mut edge_defs = Vec::with_capacity(self.edges.len());
        let mut entries = BTreeMap::new();
        for e in &self.edges {
            if seen_pairs.insert((e.source, e.target)) {
                edge_defs.push(EdgeDef {
                    id: e.id.clone(),
                    source: self.node_id(e.source).to_string(),
                    target: self.node_id(e.target).to_string(),
                    priority: e.priority,
                });
                continue;
            }
            let node_id = fresh_id(format!("{}__split", e.id), &taken_nodes);
            taken_nodes.insert(node_id.clone());
            let in_id = fresh_id(format!("{}__in", e.id), &taken_edges);
            taken_edges.insert(in_id.clone());
            let out_id = fresh_id(format!("{}__out", e.id), &taken_edges);
            taken_edges.insert(out_id.clone());

            node_defs.push(NodeDef {
                id: node_id.clone(),
                start: false,
                end: false,
            });
            edge_defs.push(EdgeDef {
                id: in_id.clone(),
                source: self.node_id(e.source).to_string(),
                target: node_id.clone(),
                priority: e.priority,
            });
            edge_defs.push(EdgeDef {
                id: out_id.clone(),
                source: node_id.clone(),
                target: self.node_id(e.target).to_string(),
                priority: e.priority,
            });
            entries.insert(
                node_id,
                SplitEntry {
                    original_edge: e.id.clone(),
                    in_edge: in_id,
                    out_edge: out_id,
                },
            );
        }

        let model = SutModel::from_parts(node_defs, edge_defs)
            .expect("splitting preserves structural validity");
        (model, SplitMap { entries })
    }
}

fn fresh_id(base: String, taken: &HashSet<String>) -> String {
    let mut id = base;
    while taken.contains(&id) {
        id.push('_');
    }
    id
}

/// One rewritten parallel edge: the synthetic node and the detour edge pair
/// that replaced the original edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEntry {
    pub original_edge: String,
    pub in_edge: String,
    pub out_edge: String,
}

/// Mapping from synthetic split nodes back to the multigraph edges they
/// replaced, keyed by split node id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitMap {
    pub entries: BTreeMap<String, SplitEntry>,
}

impl SplitMap {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Maps a path of the original multigraph into the split graph by
    /// replacing each rewritten edge with its two-edge detour.
    pub fn split_image(&self, path: &[String]) -> Vec<String> {
        let by_original: HashMap<&str, &SplitEntry> = self
            .entries
            .values()
            .map(|s| (s.original_edge.as_str(), s))
            .collect();
        let mut out = Vec::with_capacity(path.len());
        for id in path {
            match by_original.get(id.as_str()) {
                Some(entry) => {
                    out.push(entry.in_edge.clone());
                    out.push(entry.out_edge.clone());
                }
                None => out.push(id.clone()),
            }
        }
        out
    }
}

/// Translates paths found in a split graph back to the original multigraph:
/// each `__in`/`__out` detour pair collapses to the edge it replaced. Fails
/// if a path enters a split node without leaving through its paired edge.
pub fn translate_paths(
    paths: &[Vec<String>],
    map: &SplitMap,
) -> Result<Vec<Vec<String>>, TranslateError> {
    let mut by_in: HashMap<&str, &SplitEntry> = HashMap::new();
    let mut by_out: HashMap<&str, &SplitEntry> = HashMap::new();
    for entry in map.entries.values() {
        by_in.insert(entry.in_edge.as_str(), entry);
        by_out.insert(entry.out_edge.as_str(), entry);
    }

    let mut result = Vec::with_capacity(paths.len());
    for path in paths {
        let mut translated = Vec::with_capacity(path.len());
        let mut i = 0;
        while i < path.len() {
            let id = &path[i];
            if let Some(entry) = by_in.get(id.as_str()) {
                if path.get(i + 1) != Some(&entry.out_edge) {
                    return Err(TranslateError::EntersWithoutExit {
                        original: entry.original_edge.clone(),
                        in_edge: entry.in_edge.clone(),
                        out_edge: entry.out_edge.clone(),
                    });
                }
                translated.push(entry.original_edge.clone());
                i += 2;
            } else if let Some(entry) = by_out.get(id.as_str()) {
                return Err(TranslateError::ExitsWithoutEnter {
                    out_edge: entry.out_edge.clone(),
                    in_edge: entry.in_edge.clone(),
                });
            } else {
                translated.push(id.clone());
                i += 1;
            }
        }
        result.push(translated);
    }
    Ok(result)
}

/// A sequence of edges of one model. Producers in this crate only build
/// contiguous sequences (each edge starts where the previous one ended);
/// [`Path::is_path`] re-checks that for sequences loaded from files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<EdgeIdx>,
}

impl Path {
    pub(crate) fn new(edges: Vec<EdgeIdx>) -> Self {
        Path { edges }
    }

    /// Resolves a sequence of edge ids against a model. Unknown ids fail;
    /// contiguity is not enforced here (see [`Path::is_path`]).
    pub fn from_edge_ids<S: AsRef<str>>(model: &SutModel, ids: &[S]) -> Result<Self, ModelError> {
        let edges = ids
            .iter()
            .map(|id| model.edge_idx(id.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Path { edges })
    }

    pub fn edges(&self) -> &[EdgeIdx] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first_edge(&self) -> Option<EdgeIdx> {
        self.edges.first().copied()
    }

    /// Whether consecutive edges are adjacent (each edge leaves the node the
    /// previous edge entered). Empty sequences count as paths.
    pub fn is_path(&self, model: &SutModel) -> bool {
        self.edges
            .windows(2)
            .all(|w| model.edge(w[0]).target == model.edge(w[1]).source)
    }

    /// Whether the path runs from the start node to an end node.
    pub fn is_test_case(&self, model: &SutModel) -> bool {
        match (self.edges.first(), self.edges.last()) {
            (Some(&first), Some(&last)) => {
                self.is_path(model)
                    && model.edge(first).source == model.start()
                    && model.is_end(model.edge(last).target)
            }
            _ => false,
        }
    }

    /// Node sequence visited by the path: one node more than edges. Empty
    /// paths yield an empty sequence.
    pub fn nodes(&self, model: &SutModel) -> Vec<NodeIdx> {
        let Some(&first) = self.edges.first() else {
            return Vec::new();
        };
        let mut nodes = Vec::with_capacity(self.edges.len() + 1);
        nodes.push(model.edge(first).source);
        for &e in &self.edges {
            nodes.push(model.edge(e).target);
        }
        nodes
    }

    /// Whether `sub` occurs as a contiguous edge subsequence.
    pub fn contains_subpath(&self, sub: &Path) -> bool {
        if sub.edges.is_empty() {
            return true;
        }
        if sub.edges.len() > self.edges.len() {
            return false;
        }
        self.edges
            .windows(sub.edges.len())
            .any(|w| w == sub.edges.as_slice())
    }

    pub fn to_ids(&self, model: &SutModel) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| model.edge_id(e).to_string())
            .collect()
    }

    /// Shortlex comparison: shorter paths first, equal lengths by canonical
    /// edge order. This is the canonical order for every path pool in the
    /// crate.
    pub fn shortlex(&self, other: &Path) -> std::cmp::Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
    }
}

/// Provenance stamped on every generated suite: which algorithm produced it
/// under which configuration. Verification reads the applicable consistency
/// checks from here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tdl: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ptl: Option<Ptl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conversion: Option<Conversion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requirements: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct TestSetFile {
    algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tdl: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ptl: Option<Ptl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conversion: Option<Conversion>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    requirements: Option<String>,
    cases: Vec<Vec<String>>,
}

/// An ordered suite of test cases with the configuration that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSet {
    pub cases: Vec<Path>,
    pub provenance: Provenance,
}

impl TestSet {
    pub fn new(cases: Vec<Path>, provenance: Provenance) -> Self {
        TestSet { cases, provenance }
    }

    /// Serializes the suite to JSON with edge ids.
    pub fn to_json(&self, model: &SutModel) -> String {
        let file = TestSetFile {
            algorithm: self.provenance.algorithm,
            tdl: self.provenance.tdl,
            ptl: self.provenance.ptl,
            conversion: self.provenance.conversion,
            requirements: self.provenance.requirements.clone(),
            cases: self.cases.iter().map(|c| c.to_ids(model)).collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("test set serialization");
        out.push('\n');
        out
    }

    /// Loads a suite from JSON, resolving edge ids against the model.
    /// Contiguity and start/end placement are left to verification.
    pub fn from_json(model: &SutModel, text: &str) -> Result<Self, ModelError> {
        let file: TestSetFile = serde_json::from_str(text)?;
        let cases = file
            .cases
            .iter()
            .map(|ids| Path::from_edge_ids(model, ids))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TestSet {
            cases,
            provenance: Provenance {
                algorithm: file.algorithm,
                tdl: file.tdl,
                ptl: file.ptl,
                conversion: file.conversion,
                requirements: file.requirements,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_model() -> SutModel {
        SutModel::from_json(
            r#"{
              "nodes": [
                {"id": "s", "start": true},
                {"id": "a"},
                {"id": "e", "end": true}
              ],
              "edges": [
                {"id": "1", "source": "s", "target": "a", "priority": "high"},
                {"id": "2", "source": "a", "target": "e"},
                {"id": "3", "source": "a", "target": "e", "priority": "medium"}
              ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn parse_assigns_default_priority_and_flags() {
        let m = tiny_model();
        assert_eq!(m.node_count(), 3);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.node_id(m.start()), "s");
        assert_eq!(m.ends().len(), 1);
        let e2 = m.edge_idx("2").unwrap();
        assert_eq!(m.edge(e2).priority, Priority::Low);
        assert!(!m.is_simple());
    }

    #[test]
    fn json_round_trip_preserves_model() {
        let m = tiny_model();
        let again = SutModel::from_json(&m.to_json()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn parse_rejects_structural_defects() {
        let no_start = r#"{"nodes":[{"id":"a","end":true}],"edges":[]}"#;
        assert!(matches!(
            SutModel::from_json(no_start),
            Err(ModelError::NoStart)
        ));

        let no_end = r#"{"nodes":[{"id":"a","start":true}],"edges":[]}"#;
        assert!(matches!(SutModel::from_json(no_end), Err(ModelError::NoEnds)));

        let dup = r#"{
          "nodes":[{"id":"a","start":true,"end":true}],
          "edges":[
            {"id":"1","source":"a","target":"a"},
            {"id":"1","source":"a","target":"a"}
          ]
        }"#;
        assert!(matches!(
            SutModel::from_json(dup),
            Err(ModelError::DuplicateEdge(id)) if id == "1"
        ));

        let unknown = r#"{
          "nodes":[{"id":"a","start":true,"end":true}],
          "edges":[{"id":"1","source":"a","target":"b"}]
        }"#;
        assert!(matches!(
            SutModel::from_json(unknown),
            Err(ModelError::UnknownNode { node, .. }) if node == "b"
        ));

        let syntax = SutModel::from_json("{not json");
        assert!(matches!(syntax, Err(ModelError::Syntax { .. })));
    }

    #[test]
    fn edges_are_stored_in_natural_order() {
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"e","end":true}],
              "edges": [
                {"id": "10", "source": "s", "target": "e"},
                {"id": "2", "source": "s", "target": "e"},
                {"id": "1", "source": "s", "target": "e"}
              ]
            }"#,
        )
        .unwrap();
        let ids: Vec<&str> = m.edges().map(|e| m.edge_id(e)).collect();
        assert_eq!(ids, vec!["1", "2", "10"]);
    }

    #[test]
    fn validate_reports_reachability_issues() {
        let m = SutModel::from_json(
            r#"{
              "nodes": [
                {"id":"s","start":true},
                {"id":"a"},
                {"id":"orphan"},
                {"id":"trap"},
                {"id":"e","end":true}
              ],
              "edges": [
                {"id":"1","source":"s","target":"a"},
                {"id":"2","source":"a","target":"e"},
                {"id":"3","source":"s","target":"trap"},
                {"id":"4","source":"orphan","target":"e"}
              ]
            }"#,
        )
        .unwrap();
        let report = m.validate();
        assert_eq!(
            report.issues,
            vec![
                ValidationIssue::UnreachableFromStart("orphan".to_string()),
                ValidationIssue::CannotReachEnd("trap".to_string()),
            ]
        );
        assert!(tiny_model().validate().is_empty());
    }

    #[test]
    fn split_rewrites_every_surplus_parallel_edge() {
        let m = tiny_model();
        let (split, map) = m.split_parallel_edges();
        assert!(split.is_simple());
        assert_eq!(split.node_count(), 4);
        assert_eq!(split.edge_count(), 4);
        assert_eq!(map.entries.len(), 1);
        let entry = &map.entries["3__split"];
        assert_eq!(entry.original_edge, "3");
        assert_eq!(entry.in_edge, "3__in");
        assert_eq!(entry.out_edge, "3__out");
        // Priority carries over to both detour edges.
        let e_in = split.edge_idx("3__in").unwrap();
        assert_eq!(split.edge(e_in).priority, Priority::Medium);
    }

    #[test]
    fn split_on_simple_model_is_identity() {
        let m = SutModel::from_json(
            r#"{
              "nodes": [{"id":"s","start":true},{"id":"e","end":true}],
              "edges": [{"id":"1","source":"s","target":"e"}]
            }"#,
        )
        .unwrap();
        let (split, map) = m.split_parallel_edges();
        assert_eq!(split, m);
        assert!(map.is_empty());
    }

    #[test]
    fn translate_collapses_detours_and_rejects_partial_traversal() {
        let m = tiny_model();
        let (_, map) = m.split_parallel_edges();
        let paths = vec![vec!["1".to_string(), "3__in".to_string(), "3__out".to_string()]];
        let translated = translate_paths(&paths, &map).unwrap();
        assert_eq!(translated, vec![vec!["1".to_string(), "3".to_string()]]);

        let broken = vec![vec!["1".to_string(), "3__in".to_string()]];
        assert!(matches!(
            translate_paths(&broken, &map),
            Err(TranslateError::EntersWithoutExit { .. })
        ));
        let orphan_exit = vec![vec!["3__out".to_string()]];
        assert!(matches!(
            translate_paths(&orphan_exit, &map),
            Err(TranslateError::ExitsWithoutEnter { .. })
        ));
    }

    #[test]
    fn split_image_and_translate_round_trip() {
        let m = tiny_model();
        let (_, map) = m.split_parallel_edges();
        let original = vec!["1".to_string(), "3".to_string()];
        let image = map.split_image(&original);
        assert_eq!(image, vec!["1", "3__in", "3__out"]);
        let back = translate_paths(&[image], &map).unwrap();
        assert_eq!(back[0], original);
    }

    #[test]
    fn path_predicates_detect_test_cases() {
        let m = tiny_model();
        let tc = Path::from_edge_ids(&m, &["1", "2"]).unwrap();
        assert!(tc.is_path(&m));
        assert!(tc.is_test_case(&m));
        assert_eq!(
            tc.nodes(&m),
            vec![m.node_idx("s").unwrap(), m.node_idx("a").unwrap(), m.node_idx("e").unwrap()]
        );

        let fragment = Path::from_edge_ids(&m, &["2"]).unwrap();
        assert!(fragment.is_path(&m));
        assert!(!fragment.is_test_case(&m));

        let gap = Path::from_edge_ids(&m, &["2", "1"]).unwrap();
        assert!(!gap.is_path(&m));

        assert!(tc.contains_subpath(&fragment));
        assert!(!fragment.contains_subpath(&tc));
    }

    #[test]
    fn shortlex_orders_by_length_then_edges() {
        let m = tiny_model();
        let short = Path::from_edge_ids(&m, &["2"]).unwrap();
        let long = Path::from_edge_ids(&m, &["1", "2"]).unwrap();
        let long2 = Path::from_edge_ids(&m, &["1", "3"]).unwrap();
        assert_eq!(short.shortlex(&long), std::cmp::Ordering::Less);
        assert_eq!(long.shortlex(&long2), std::cmp::Ordering::Less);
    }

    #[test]
    fn test_set_json_round_trip() {
        let m = tiny_model();
        let set = TestSet::new(
            vec![Path::from_edge_ids(&m, &["1", "2"]).unwrap()],
            Provenance {
                algorithm: Algorithm::Ppt,
                tdl: Some(1),
                ptl: Some(Ptl::High),
                conversion: None,
                requirements: None,
            },
        );
        let text = set.to_json(&m);
        let again = TestSet::from_json(&m, &text).unwrap();
        assert_eq!(set, again);
        assert!(text.contains("\"algorithm\": \"ppt\""));
        assert!(!text.contains("conversion"));
    }
}
