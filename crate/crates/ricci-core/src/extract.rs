//! Core subgraph extraction: evolve weights under the curvature flow, drop
//! the heaviest fraction of surviving real edges, induce the remaining nodes
//! on the original graph, and keep its largest strongly connected component.

use serde::{Deserialize, Serialize};

use crate::augment::{augment_to_strong, default_artificial_weight, strip_artificial};
use crate::error::{GraphError, Result};
use crate::flow::{run_flow, FlowConfig, FlowTrace};
use crate::graph::{
    is_strongly_connected, largest_weakly_connected_component, strongly_connected_components,
    DirectedEdge, NodeId, WeightedDigraph,
};

/// What to do when several strongly connected components tie for the largest
/// size in the candidate subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TiePolicy {
    /// Keep the union of all maximum-size components.
    #[default]
    KeepAllMaximal,
    /// Keep only the tied component containing the smallest node index.
    SingleLargest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExtractionConfig {
    /// Fraction of surviving real edges to delete, heaviest first; in (0, 1).
    pub tau: f64,
    pub tie_policy: TiePolicy,
    /// Weight for artificial connectivity edges; `None` uses
    /// `100 * max(1, max initial weight)`.
    pub artificial_weight: Option<f64>,
    pub flow: FlowConfig,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        ExtractionConfig {
            tau: 0.3,
            tie_policy: TiePolicy::default(),
            artificial_weight: None,
            flow: FlowConfig::default(),
        }
    }
}

impl ExtractionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(GraphError::InvalidRemovalRatio(self.tau));
        }
        if let Some(a) = self.artificial_weight {
            if !(a > 0.0) {
                return Err(GraphError::InvalidArtificialWeight(a));
            }
        }
        self.flow.validate()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoreResult {
    /// Core node ids, sorted, in the base graph's indexing.
    pub core_nodes: Vec<NodeId>,
    /// Base-graph indices of edges inside a single selected component.
    pub core_edges: Vec<usize>,
    /// Base-graph indices of the edges that survived the cut (or, for
    /// rank-based selection, the edges induced by the candidate node set).
    pub retained_edges: Vec<usize>,
    /// True when exactly one component attains the maximum size.
    pub is_single_scc: bool,
    /// True when the largest component is a single node: the candidate
    /// subgraph has no nontrivial strongly connected structure.
    pub degenerate: bool,
}

/// Everything produced by one end-to-end extraction run.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    /// The graph extraction actually ran on: the largest weakly connected
    /// component of the input, original weights, no artificial edges.
    pub base: WeightedDigraph,
    pub added_edges: Vec<DirectedEdge>,
    pub artificial_weight: f64,
    pub trace: FlowTrace,
    /// Real edges of `base` carrying their post-flow weights.
    pub flowed: WeightedDigraph,
    pub core: CoreResult,
}

/// Edge indices that survive deleting the heaviest `tau` fraction: the
/// `ceil((1 - tau) * m)` lightest edges, ties broken by edge order. Returned
/// ascending by index.
pub fn cut_heaviest_edges(g: &WeightedDigraph, tau: f64) -> Result<Vec<usize>> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(GraphError::InvalidRemovalRatio(tau));
    }
    let m = g.edge_count();
    let retain = ((1.0 - tau) * m as f64).ceil() as usize;
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| g.weight(a).total_cmp(&g.weight(b)).then(a.cmp(&b)));
    let mut kept: Vec<usize> = order.into_iter().take(retain).collect();
    kept.sort_unstable();
    Ok(kept)
}

/// Largest strongly connected component(s) of `g` induced on `nodes`,
/// reported in `g`'s indexing. Returns `(core_nodes, core_edges,
/// is_single_scc, degenerate)`; `core_edges` are edges of `g` whose endpoints
/// lie in the same selected component.
pub(crate) fn core_from_node_set(
    g: &WeightedDigraph,
    nodes: &[NodeId],
    policy: TiePolicy,
) -> Result<(Vec<NodeId>, Vec<usize>, bool, bool)> {
    let mut sorted: Vec<NodeId> = nodes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return Err(GraphError::EmptyCore);
    }
    let sub = g.induced_subgraph(&sorted);
    let comps = strongly_connected_components(&sub);
    let max_size = comps.iter().map(Vec::len).max().unwrap_or(0);
    // Subgraph node i is the i-th kept node, so `sorted` maps ids back.
    let mut maximal: Vec<Vec<NodeId>> = comps
        .iter()
        .filter(|c| c.len() == max_size)
        .map(|c| c.iter().map(|&u| sorted[u]).collect())
        .collect();
    maximal.sort_by_key(|c| c[0]);
    let is_single_scc = maximal.len() == 1;
    if policy == TiePolicy::SingleLargest {
        maximal.truncate(1);
    }
    let mut comp_of = vec![usize::MAX; g.node_count()];
    for (ci, comp) in maximal.iter().enumerate() {
        for &u in comp {
            comp_of[u] = ci;
        }
    }
    let mut core_nodes: Vec<NodeId> = maximal.concat();
    core_nodes.sort_unstable();
    let core_edges: Vec<usize> = (0..g.edge_count())
        .filter(|&ei| {
            let e = g.edge(ei);
            comp_of[e.src] != usize::MAX && comp_of[e.src] == comp_of[e.dst]
        })
        .collect();
    Ok((core_nodes, core_edges, is_single_scc, max_size <= 1))
}

/// Builds the core from a base graph and the post-cut retained edge indices:
/// nodes incident to a retained edge are induced on the base graph, and the
/// largest strongly connected component(s) of that induced subgraph form the
/// core.
pub fn extract_core(
    base: &WeightedDigraph,
    retained: &[usize],
    policy: TiePolicy,
) -> Result<CoreResult> {
    let mut nodes: Vec<NodeId> = retained
        .iter()
        .flat_map(|&ei| {
            let e = base.edge(ei);
            [e.src, e.dst]
        })
        .collect();
    nodes.sort_unstable();
    nodes.dedup();
    let (core_nodes, core_edges, is_single_scc, degenerate) =
        core_from_node_set(base, &nodes, policy)?;
    Ok(CoreResult {
        core_nodes,
        core_edges,
        retained_edges: retained.to_vec(),
        is_single_scc,
        degenerate,
    })
}

/// End-to-end extraction: restrict to the largest weakly connected component,
/// add artificial edges until strongly connected, run the flow, drop the
/// artificial edges, cut the heaviest real edges, and take the largest
/// strongly connected component(s) of the induced subgraph.
pub fn run_pipeline(g: &WeightedDigraph, config: &ExtractionConfig) -> Result<PipelineResult> {
    config.validate()?;
    let base = largest_weakly_connected_component(g);
    if base.edge_count() == 0 {
        return Err(GraphError::EmptyCore);
    }
    let a = config
        .artificial_weight
        .unwrap_or_else(|| default_artificial_weight(&base));
    let augmented = if is_strongly_connected(&base) {
        None
    } else {
        Some(augment_to_strong(&base, a)?)
    };
    let (flow_input, added_edges) = match &augmented {
        Some(res) => (res.graph.clone(), res.added_edges.clone()),
        None => (base.clone(), Vec::new()),
    };
    let trace = run_flow(&flow_input, &config.flow)?;
    // Artificial edges sit at the tail of the edge list, so real edge indices
    // are shared between `base`, the augmented graph, and the strip result.
    let flowed = strip_artificial(&flow_input.with_weights(trace.final_weights().to_vec())?);
    debug_assert_eq!(flowed.edges(), base.edges());
    let retained = cut_heaviest_edges(&flowed, config.tau)?;
    let core = extract_core(&base, &retained, config.tie_policy)?;
    Ok(PipelineResult {
        base,
        added_edges,
        artificial_weight: a,
        trace,
        flowed,
        core,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list_str;

    fn labels(g: &WeightedDigraph, nodes: &[NodeId]) -> Vec<String> {
        nodes.iter().map(|&u| g.label(u).to_owned()).collect()
    }

    fn edge_labels(g: &WeightedDigraph, edges: &[usize]) -> Vec<(String, String)> {
        edges
            .iter()
            .map(|&ei| {
                let e = g.edge(ei);
                (g.label(e.src).to_owned(), g.label(e.dst).to_owned())
            })
            .collect()
    }

    #[test]
    fn cut_retains_lightest_edges() {
        let (g, _) = load_edge_list_str("a b 5\nb c 1\nc a 3\na c 2").unwrap();
        let kept = cut_heaviest_edges(&g, 0.5).unwrap();
        // ceil(0.5 * 4) = 2 lightest: b->c (1) and a->c (2).
        assert_eq!(edge_labels(&g, &kept), vec![
            ("b".to_owned(), "c".to_owned()),
            ("a".to_owned(), "c".to_owned()),
        ]);
    }

    #[test]
    fn cut_breaks_weight_ties_by_edge_order() {
        let (g, _) = load_edge_list_str("a b 1\nb c 1\nc a 1").unwrap();
        let kept = cut_heaviest_edges(&g, 0.4).unwrap();
        assert_eq!(kept, vec![0, 1]);
    }

    #[test]
    fn cut_rejects_out_of_range_tau() {
        let (g, _) = load_edge_list_str("a b").unwrap();
        assert!(cut_heaviest_edges(&g, 0.0).is_err());
        assert!(cut_heaviest_edges(&g, 1.0).is_err());
    }

    #[test]
    fn two_cycles_sharing_a_node_yield_one_triangle() {
        // Triangle x1x2x3 plus 2-cycle x4x5 hanging off x3, closed by a heavy
        // return edge. Cutting half the real edges after the flow keeps the
        // light triangle edges and one cycle edge; the induced subgraph is
        // the full graph and its largest component is the triangle.
        let (g, _) =
            load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x4").unwrap();
        let config = ExtractionConfig {
            tau: 0.5,
            ..Default::default()
        };
        let res = run_pipeline(&g, &config).unwrap();
        assert_eq!(res.added_edges.len(), 1);
        assert_eq!(labels(&res.base, &res.core.core_nodes), ["x1", "x2", "x3"]);
        assert_eq!(
            edge_labels(&res.base, &res.core.core_edges),
            vec![
                ("x1".to_owned(), "x2".to_owned()),
                ("x2".to_owned(), "x3".to_owned()),
                ("x3".to_owned(), "x1".to_owned()),
            ]
        );
        assert!(res.core.is_single_scc);
        assert!(!res.core.degenerate);
    }

    #[test]
    fn tied_triangles_are_both_kept_by_default() {
        // Two triangles joined by x3 -> x4; the flow stretches the bridge and
        // the cut leaves two tied components of size 3.
        let (g, _) =
            load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x6\nx6 x4").unwrap();
        let config = ExtractionConfig {
            tau: 0.3,
            ..Default::default()
        };
        let res = run_pipeline(&g, &config).unwrap();
        assert_eq!(res.core.core_nodes.len(), 6);
        assert_eq!(res.core.core_edges.len(), 6);
        assert!(!res.core.is_single_scc);
        // The bridge x3 -> x4 crosses components, so it is not a core edge.
        assert!(!edge_labels(&res.base, &res.core.core_edges)
            .contains(&("x3".to_owned(), "x4".to_owned())));
    }

    #[test]
    fn single_largest_policy_keeps_one_component() {
        let (g, _) =
            load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x6\nx6 x4").unwrap();
        let config = ExtractionConfig {
            tau: 0.3,
            tie_policy: TiePolicy::SingleLargest,
            ..Default::default()
        };
        let res = run_pipeline(&g, &config).unwrap();
        assert_eq!(labels(&res.base, &res.core.core_nodes), ["x1", "x2", "x3"]);
        assert_eq!(res.core.core_edges.len(), 3);
    }

    #[test]
    fn degenerate_core_is_flagged() {
        let (g, _) = load_edge_list_str("a b\nb c").unwrap();
        let (nodes, edges, _, degenerate) =
            core_from_node_set(&g, &[0, 1, 2], TiePolicy::KeepAllMaximal).unwrap();
        assert!(degenerate);
        assert!(edges.is_empty());
        assert_eq!(nodes, vec![0, 1, 2]);
    }

    #[test]
    fn pipeline_runs_on_largest_weak_component() {
        // Disconnected noise next to the main structure is ignored.
        let (g, _) = load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x4\nq r").unwrap();
        let res = run_pipeline(
            &g,
            &ExtractionConfig {
                tau: 0.5,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res.base.node_count(), 5);
        assert_eq!(labels(&res.base, &res.core.core_nodes), ["x1", "x2", "x3"]);
    }

    #[test]
    fn retained_edges_reference_base_indexing() {
        let (g, _) =
            load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x4").unwrap();
        let res = run_pipeline(
            &g,
            &ExtractionConfig {
                tau: 0.5,
                ..Default::default()
            },
        )
        .unwrap();
        let kept = edge_labels(&res.base, &res.core.retained_edges);
        assert_eq!(kept.len(), 3);
        assert!(kept.contains(&("x1".to_owned(), "x2".to_owned())));
        assert!(kept.contains(&("x2".to_owned(), "x3".to_owned())));
        assert!(kept.contains(&("x4".to_owned(), "x5".to_owned())));
    }
}
