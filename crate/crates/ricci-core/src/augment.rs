//! Strong-connectivity augmentation: add a minimum-cardinality set of
//! artificial edges with a large weight `A` to a weakly connected digraph.

use crate::error::{GraphError, Result};
use crate::graph::{
    is_weakly_connected, strongly_connected_components, DirectedEdge, NodeId, WeightedDigraph,
};

#[derive(Debug, Clone)]
pub struct AugmentationResult {
    pub graph: WeightedDigraph,
    pub added_edges: Vec<DirectedEdge>,
    pub artificial_weight: f64,
}

/// `100 * max(1, max initial edge weight)`.
pub fn default_artificial_weight(g: &WeightedDigraph) -> f64 {
    100.0 * g.weights().iter().copied().fold(1.0f64, f64::max)
}

/// Makes `g` strongly connected by adding exactly `max(#source components,
/// #sink components)` artificial edges of weight `a`, the Eswaran-Tarjan
/// minimum. Already-strong graphs come back unchanged.
///
/// Construction: condense to SCCs, greedily match source components
/// (ascending representative) to reachable sink components (preferring the
/// largest representative), chain the matched pairs into a directed cycle
/// `v_1 -> w_1 -> v_2 -> ... -> w_k -> v_1` via added sink->source edges, then
/// attach unmatched sinks/sources to the cycle. Representatives are the
/// smallest node index per component, so the result is deterministic.
pub fn augment_to_strong(g: &WeightedDigraph, a: f64) -> Result<AugmentationResult> {
    if !(a > 0.0) {
        return Err(GraphError::InvalidArtificialWeight(a));
    }
    if !is_weakly_connected(g) {
        return Err(GraphError::NotWeaklyConnected);
    }
    let comps = strongly_connected_components(g);
    if comps.len() <= 1 {
        return Ok(AugmentationResult {
            graph: g.clone(),
            added_edges: Vec::new(),
            artificial_weight: a,
        });
    }

    let n = g.node_count();
    let c = comps.len();
    let mut comp_of = vec![usize::MAX; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &u in comp {
            comp_of[u] = ci;
        }
    }
    // Representative = smallest node index (components are sorted).
    let rep: Vec<NodeId> = comps.iter().map(|comp| comp[0]).collect();

    // Condensation adjacency and degrees.
    let mut cond_out: Vec<Vec<usize>> = vec![Vec::new(); c];
    let mut has_in = vec![false; c];
    let mut has_out = vec![false; c];
    for e in g.edges() {
        let (cs, cd) = (comp_of[e.src], comp_of[e.dst]);
        if cs != cd {
            cond_out[cs].push(cd);
            has_out[cs] = true;
            has_in[cd] = true;
        }
    }
    for adj in &mut cond_out {
        adj.sort_unstable();
        adj.dedup();
    }

    let mut sources: Vec<usize> = (0..c).filter(|&ci| !has_in[ci]).collect();
    let mut sinks: Vec<usize> = (0..c).filter(|&ci| !has_out[ci]).collect();
    sources.sort_by_key(|&ci| rep[ci]);
    sinks.sort_by_key(|&ci| rep[ci]);

    // Sink components reachable from each source, by DFS on the condensation.
    let reachable_sinks = |src: usize| -> Vec<usize> {
        let mut seen = vec![false; c];
        let mut stack = vec![src];
        seen[src] = true;
        let mut found = Vec::new();
        while let Some(u) = stack.pop() {
            if !has_out[u] {
                found.push(u);
            }
            for &v in &cond_out[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        found
    };

    // Greedy maximal matching. Preferring the sink with the largest
    // representative reproduces the textbook pairing on the condensations
    // that arise from fan-out/fan-in graphs.
    let mut sink_taken = vec![false; c];
    let mut matched_sources: Vec<usize> = Vec::new();
    let mut matched_sinks: Vec<usize> = Vec::new();
    for &src in &sources {
        let mut candidates = reachable_sinks(src);
        candidates.sort_by_key(|&ci| std::cmp::Reverse(rep[ci]));
        if let Some(&sink) = candidates.iter().find(|&&ci| !sink_taken[ci]) {
            sink_taken[sink] = true;
            matched_sources.push(src);
            matched_sinks.push(sink);
        }
    }
    let k = matched_sources.len();
    debug_assert!(k >= 1, "every source of a DAG reaches a sink");
    let unmatched_sources: Vec<usize> = sources
        .iter()
        .copied()
        .filter(|s| !matched_sources.contains(s))
        .collect();
    let unmatched_sinks: Vec<usize> = sinks
        .iter()
        .copied()
        .filter(|s| !sink_taken[*s])
        .collect();

    // Cycle over matched pairs, then attach the rest.
    let mut added: Vec<DirectedEdge> = Vec::new();
    for i in 0..k {
        added.push(DirectedEdge {
            src: rep[matched_sinks[i]],
            dst: rep[matched_sources[(i + 1) % k]],
        });
    }
    let paired = unmatched_sources.len().min(unmatched_sinks.len());
    for i in 0..paired {
        added.push(DirectedEdge {
            src: rep[unmatched_sinks[i]],
            dst: rep[unmatched_sources[i]],
        });
    }
    for &src_comp in &unmatched_sources[paired..] {
        added.push(DirectedEdge {
            src: rep[matched_sinks[0]],
            dst: rep[src_comp],
        });
    }
    for &sink_comp in &unmatched_sinks[paired..] {
        added.push(DirectedEdge {
            src: rep[sink_comp],
            dst: rep[matched_sources[0]],
        });
    }
    debug_assert_eq!(added.len(), sources.len().max(sinks.len()));

    let mut graph = g.clone();
    for e in &added {
        graph.add_edge(e.src, e.dst, a, true)?;
    }
    debug_assert!(crate::graph::is_strongly_connected(&graph));
    Ok(AugmentationResult {
        graph,
        added_edges: added,
        artificial_weight: a,
    })
}

/// Removes all artificial edges; node set unchanged, real edges keep their
/// order and current weights.
pub fn strip_artificial(g: &WeightedDigraph) -> WeightedDigraph {
    let mut out = WeightedDigraph::new();
    for label in g.labels() {
        out.intern_node(label);
    }
    for (idx, e) in g.edges().iter().enumerate() {
        if !g.is_artificial(idx) {
            out.add_edge(e.src, e.dst, g.weight(idx), false)
                .expect("real edge must remain valid");
        }
    }
    out
}
