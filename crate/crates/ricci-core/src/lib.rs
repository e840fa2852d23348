//! Core-subgraph discovery on directed weighted graphs via curvature flow.
//!
//! The pipeline: make the graph strongly connected with heavy artificial
//! edges, evolve edge weights under a discrete curvature flow that shrinks
//! tightly coupled edges and stretches loose ones, cut the heaviest surviving
//! edges, and keep the largest strongly connected component of what remains.
//! Companion modules provide the evaluation metrics, centrality baselines,
//! and experiment drivers. See the `examples/` directory for one runnable
//! walkthrough per capability.

pub mod augment;
pub mod baselines;
pub mod curvature;
pub mod error;
pub mod experiments;
pub mod extract;
pub mod flow;
pub mod graph;
pub mod metrics;
mod simplex;
mod transport;

pub use augment::{augment_to_strong, default_artificial_weight, strip_artificial};
pub use baselines::{baseline_core, centrality, CentralityMethod, CentralityScores};
pub use curvature::{all_edge_curvatures, edge_curvature, out_measure, EdgeCurvature, ProbMeasure};
pub use error::{GraphError, Result};
pub use experiments::{
    alpha_sweep, compare_methods, robustness_deletion, ExperimentConfig,
};
pub use extract::{
    cut_heaviest_edges, extract_core, run_pipeline, CoreResult, ExtractionConfig, PipelineResult,
    TiePolicy,
};
pub use flow::{flow_step, run_flow, FlowConfig, FlowTrace};
pub use graph::{
    graph_stats, load_edge_list, load_edge_list_str, DirectedEdge, GraphStats, NodeId,
    WeightedDigraph,
};
pub use metrics::{evaluate_core, MetricsReport, PairOrientation};
