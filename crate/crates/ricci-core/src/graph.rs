//! Directed weighted graph representation, ingestion, connectivity
//! decomposition, shortest-path distances, and summary statistics.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};

/// Dense node index, `0..n`. Labels from the input are kept alongside.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub src: NodeId,
    pub dst: NodeId,
}

/// A directed graph with positive edge weights and per-edge artificial flags.
///
/// Edge order is deterministic: input order, then insertion order for edges
/// added later. All tie-breaks downstream refer to this order. Values are
/// immutable in normal use; reweighting produces snapshots via
/// [`WeightedDigraph::with_weights`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    label_index: HashMap<String, NodeId>,
    edges: Vec<DirectedEdge>,
    weights: Vec<f64>,
    artificial: Vec<bool>,
    edge_index: HashMap<(NodeId, NodeId), usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

/// Counts of lines dropped while loading an edge list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// 2m/n, matching the undirected-style convention of common dataset tables.
    pub avg_degree: f64,
    /// Max finite hop distance over ordered reachable pairs.
    pub diameter: u32,
    /// m / (n(n-1)).
    pub density: f64,
}

/// Which edge lengths a distance query uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lengths {
    Weighted,
    UnitHop,
}

impl WeightedDigraph {
    pub fn new() -> Self {
        WeightedDigraph {
            labels: Vec::new(),
            label_index: HashMap::new(),
            edges: Vec::new(),
            weights: Vec::new(),
            artificial: Vec::new(),
            edge_index: HashMap::new(),
            out_edges: Vec::new(),
            in_edges: Vec::new(),
        }
    }

    /// Returns the node for `label`, interning it if new.
    pub fn intern_node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.label_index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.label_index.insert(label.to_owned(), id);
        self.out_edges.push(Vec::new());
        self.in_edges.push(Vec::new());
        id
    }

    /// Adds an edge. Rejects self-loops, duplicates, and nonpositive weights.
    pub fn add_edge(
        &mut self,
        src: NodeId,
        dst: NodeId,
        weight: f64,
        artificial: bool,
    ) -> Result<usize> {
        if src >= self.labels.len() {
            return Err(GraphError::UnknownNode(src));
        }
        if dst >= self.labels.len() {
            return Err(GraphError::UnknownNode(dst));
        }
        if src == dst {
            return Err(GraphError::SelfLoop(src));
        }
        if !(weight > 0.0) {
            return Err(GraphError::NonpositiveEdgeWeight(weight));
        }
        if self.edge_index.contains_key(&(src, dst)) {
            return Err(GraphError::DuplicateEdge { src, dst });
        }
        let idx = self.edges.len();
        self.edges.push(DirectedEdge { src, dst });
        self.weights.push(weight);
        self.artificial.push(artificial);
        self.edge_index.insert((src, dst), idx);
        self.out_edges[src].push(idx);
        self.in_edges[dst].push(idx);
        Ok(idx)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_index.get(label).copied()
    }

    pub fn edge(&self, idx: usize) -> DirectedEdge {
        self.edges[idx]
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn weight(&self, idx: usize) -> f64 {
        self.weights[idx]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_artificial(&self, idx: usize) -> bool {
        self.artificial[idx]
    }

    pub fn edge_between(&self, src: NodeId, dst: NodeId) -> Option<usize> {
        self.edge_index.get(&(src, dst)).copied()
    }

    /// Edge indices leaving `u`.
    pub fn out_edges(&self, u: NodeId) -> &[usize] {
        &self.out_edges[u]
    }

    /// Edge indices entering `u`.
    pub fn in_edges(&self, u: NodeId) -> &[usize] {
        &self.in_edges[u]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_edges[u].len()
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_edges[u].len()
    }

    /// Same topology with a replacement weight vector.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<WeightedDigraph> {
        if weights.len() != self.edges.len() {
            return Err(GraphError::WeightLengthMismatch {
                got: weights.len(),
                expected: self.edges.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(GraphError::NonpositiveEdgeWeight(w));
        }
        let mut g = self.clone();
        g.weights = weights;
        Ok(g)
    }

    /// Induced subgraph on `nodes` (deduplicated, sorted by original index).
    /// Labels are preserved; edge order follows the original edge order.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> WeightedDigraph {
        let mut keep = vec![false; self.node_count()];
        for &u in nodes {
            keep[u] = true;
        }
        let mut g = WeightedDigraph::new();
        let mut remap = vec![usize::MAX; self.node_count()];
        for u in 0..self.node_count() {
            if keep[u] {
                remap[u] = g.intern_node(&self.labels[u]);
            }
        }
        for (idx, e) in self.edges.iter().enumerate() {
            if keep[e.src] && keep[e.dst] {
                g.add_edge(remap[e.src], remap[e.dst], self.weights[idx], self.artificial[idx])
                    .expect("induced edge must be valid");
            }
        }
        g
    }
}

impl Default for WeightedDigraph {
    fn default() -> Self {
        WeightedDigraph::new()
    }
}

/// Parses whitespace-separated `src dst [weight]` lines. `#` starts a comment,
/// blank lines are skipped, missing weight defaults to 1.0. Self-loops and
/// duplicate edges are dropped and counted (first occurrence wins).
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(WeightedDigraph, LoadReport)> {
    let mut g = WeightedDigraph::new();
    let mut report = LoadReport::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| GraphError::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?;
        let content = line.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(src) = tokens.next() else { continue };
        let Some(dst) = tokens.next() else {
            return Err(GraphError::Parse {
                line: lineno + 1,
                message: "expected \"src dst [weight]\"".to_owned(),
            });
        };
        let weight = match tokens.next() {
            Some(tok) => tok.parse::<f64>().map_err(|_| GraphError::Parse {
                line: lineno + 1,
                message: format!("invalid weight {tok:?}"),
            })?,
            None => 1.0,
        };
        if tokens.next().is_some() {
            return Err(GraphError::Parse {
                line: lineno + 1,
                message: "trailing tokens after weight".to_owned(),
            });
        }
        if !(weight > 0.0) {
            return Err(GraphError::NonpositiveWeight {
                line: lineno + 1,
                weight,
            });
        }
        let s = g.intern_node(src);
        let d = g.intern_node(dst);
        if s == d {
            report.self_loops_dropped += 1;
            continue;
        }
        match g.add_edge(s, d, weight, false) {
            Ok(_) => {}
            Err(GraphError::DuplicateEdge { .. }) => report.duplicates_dropped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((g, report))
}

pub fn load_edge_list_str(text: &str) -> Result<(WeightedDigraph, LoadReport)> {
    load_edge_list(text.as_bytes())
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct JsonEdge {
    src: String,
    dst: String,
    weight: f64,
    artificial: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<String>,
    edges: Vec<JsonEdge>,
}

pub fn graph_to_json(g: &WeightedDigraph) -> serde_json::Value {
    let json = JsonGraph {
        nodes: g.labels.clone(),
        edges: g
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| JsonEdge {
                src: g.labels[e.src].clone(),
                dst: g.labels[e.dst].clone(),
                weight: g.weights[i],
                artificial: g.artificial[i],
            })
            .collect(),
    };
    serde_json::to_value(json).expect("graph serialization cannot fail")
}

pub fn graph_from_json(value: &serde_json::Value) -> Result<WeightedDigraph> {
    let json: JsonGraph = serde_json::from_value(value.clone()).map_err(|e| GraphError::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let mut g = WeightedDigraph::new();
    for label in &json.nodes {
        g.intern_node(label);
    }
    for e in &json.edges {
        let s = g
            .node_by_label(&e.src)
            .ok_or_else(|| GraphError::UnknownLabel(e.src.clone()))?;
        let d = g
            .node_by_label(&e.dst)
            .ok_or_else(|| GraphError::UnknownLabel(e.dst.clone()))?;
        g.add_edge(s, d, e.weight, e.artificial)?;
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Connectivity
// ---------------------------------------------------------------------------

/// Weak components (directions ignored), each sorted by node index, listed in
/// order of their smallest node index.
pub fn weak_components(g: &WeightedDigraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &ei in g.out_edges(u).iter().chain(g.in_edges(u)) {
                let e = g.edge(ei);
                let v = if e.src == u { e.dst } else { e.src };
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Induced subgraph on the largest weak component; ties broken by the
/// component containing the smallest node index. Empty graph maps to itself.
pub fn largest_weakly_connected_component(g: &WeightedDigraph) -> WeightedDigraph {
    let comps = weak_components(g);
    match comps.iter().max_by_key(|c| (c.len(), Reverse(c[0]))) {
        Some(best) => g.induced_subgraph(best),
        None => WeightedDigraph::new(),
    }
}

/// Tarjan's algorithm, iterative. Components are emitted in reverse
/// topological order of the condensation; members sorted by node index.
pub fn strongly_connected_components(g: &WeightedDigraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<NodeId> = Vec::new();
    let mut comps: Vec<Vec<NodeId>> = Vec::new();
    let mut counter = 0usize;

    // Explicit DFS frames: (node, next out-edge position).
    let mut frames: Vec<(NodeId, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut pos)) = frames.last_mut() {
            if *pos < g.out_degree(u) {
                let ei = g.out_edges(u)[*pos];
                *pos += 1;
                let v = g.edge(ei).dst;
                if index[v] == usize::MAX {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    frames.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == u {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// True for the empty graph by convention.
pub fn is_strongly_connected(g: &WeightedDigraph) -> bool {
    g.node_count() == 0 || strongly_connected_components(g).len() == 1
}

/// True for the empty graph by convention.
pub fn is_weakly_connected(g: &WeightedDigraph) -> bool {
    g.node_count() == 0 || weak_components(g).len() == 1
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

#[derive(PartialEq)]
struct HeapEntry(f64, NodeId);

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Min-heap on distance, node index as tie-break.
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over the current weights. Unreachable nodes get `f64::INFINITY`.
pub fn weighted_distances_from(g: &WeightedDigraph, src: NodeId) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[src] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry(0.0, src));
    while let Some(HeapEntry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &ei in g.out_edges(u) {
            let v = g.edge(ei).dst;
            let nd = d + g.weight(ei);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapEntry(nd, v));
            }
        }
    }
    dist
}

/// BFS hop distances. `None` for unreachable nodes.
pub fn hop_distances_from(g: &WeightedDigraph, src: NodeId) -> Vec<Option<u32>> {
    let n = g.node_count();
    let mut dist = vec![None; n];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued node has a distance");
        for &ei in g.out_edges(u) {
            let v = g.edge(ei).dst;
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn single_source_distances(g: &WeightedDigraph, src: NodeId, lengths: Lengths) -> Result<Vec<f64>> {
    if src >= g.node_count() {
        return Err(GraphError::UnknownNode(src));
    }
    Ok(match lengths {
        Lengths::Weighted => weighted_distances_from(g, src),
        Lengths::UnitHop => hop_distances_from(g, src)
            .into_iter()
            .map(|d| d.map_or(f64::INFINITY, f64::from))
            .collect(),
    })
}

/// `d(u,v)`; `+inf` when no directed path exists.
pub fn shortest_path_distance(
    g: &WeightedDigraph,
    u: NodeId,
    v: NodeId,
    lengths: Lengths,
) -> Result<f64> {
    if v >= g.node_count() {
        return Err(GraphError::UnknownNode(v));
    }
    Ok(single_source_distances(g, u, lengths)?[v])
}

pub fn all_pairs_hop_distances(g: &WeightedDigraph) -> Vec<Vec<Option<u32>>> {
    use rayon::prelude::*;
    (0..g.node_count())
        .into_par_iter()
        .map(|u| hop_distances_from(g, u))
        .collect()
}

/// Weighted all-pairs distance matrix, one Dijkstra per source.
pub fn all_pairs_weighted_distances(g: &WeightedDigraph) -> Vec<Vec<f64>> {
    use rayon::prelude::*;
    (0..g.node_count())
        .into_par_iter()
        .map(|u| weighted_distances_from(g, u))
        .collect()
}

/// Summary statistics; diameter over ordered reachable pairs of the largest
/// weak component when the graph is not weakly connected.
pub fn graph_stats(g: &WeightedDigraph) -> GraphStats {
    let component;
    let g = if is_weakly_connected(g) {
        g
    } else {
        component = largest_weakly_connected_component(g);
        &component
    };
    let n = g.node_count();
    let m = g.edge_count();
    let diameter = all_pairs_hop_distances(g)
        .iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .unwrap_or(0);
    GraphStats {
        vertices: n,
        edges: m,
        avg_degree: if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 },
        diameter,
        density: if n <= 1 {
            0.0
        } else {
            m as f64 / (n as f64 * (n as f64 - 1.0))
        },
    }
}
