//! Experiment drivers: laziness-parameter sweep, method comparison at equal
//! core size, and robustness of metrics under random core-edge deletion.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{baseline_core, CentralityMethod};
use crate::error::{GraphError, Result};
use crate::extract::{run_pipeline, CoreResult, ExtractionConfig, PipelineResult};
use crate::metrics::{evaluate_core_with, MetricsReport, PairOrientation};
use crate::graph::WeightedDigraph;

fn default_alpha_grid() -> Vec<f64> {
    (0..10).map(|i| i as f64 / 10.0).collect()
}

fn default_ratios() -> Vec<f64> {
    (1..10).map(|i| i as f64 / 10.0).collect()
}

fn default_trials() -> usize {
    10
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub extraction: ExtractionConfig,
    pub alpha_grid: Vec<f64>,
    pub methods: Vec<CentralityMethod>,
    pub deletion_ratios: Vec<f64>,
    pub rng_seed: u64,
    pub trials: usize,
    pub pair_orientation: PairOrientation,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            extraction: ExtractionConfig::default(),
            alpha_grid: default_alpha_grid(),
            methods: CentralityMethod::ALL.to_vec(),
            deletion_ratios: default_ratios(),
            rng_seed: 0,
            trials: default_trials(),
            pair_orientation: PairOrientation::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.extraction.validate()?;
        if let Some(&a) = self
            .alpha_grid
            .iter()
            .find(|a| !(0.0..1.0).contains(*a))
        {
            return Err(GraphError::InvalidAlpha(a));
        }
        if let Some(&p) = self
            .deletion_ratios
            .iter()
            .find(|p| !(**p > 0.0 && **p < 1.0))
        {
            return Err(GraphError::InvalidRemovalRatio(p));
        }
        if self.trials == 0 {
            return Err(GraphError::InvalidIterations);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaSweepRow {
    pub alpha: f64,
    pub core_node_count: usize,
    pub core_edge_count: usize,
    pub metrics: MetricsReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub method: String,
    pub core_node_count: usize,
    pub core_edge_count: usize,
    pub metrics: MetricsReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobustnessRow {
    pub method: String,
    pub ratio: f64,
    pub deleted_edges: usize,
    pub trials: usize,
    pub r_d_in: f64,
    pub r_d_out: f64,
    pub r_s: Option<f64>,
}

/// One pipeline run per grid value, all other parameters fixed.
pub fn alpha_sweep(g: &WeightedDigraph, config: &ExperimentConfig) -> Result<Vec<AlphaSweepRow>> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.alpha_grid.len());
    for &alpha in &config.alpha_grid {
        let mut extraction = config.extraction;
        extraction.flow.alpha = alpha;
        let res = run_pipeline(g, &extraction)?;
        let metrics = evaluate_core_with(&res.base, &res.core, config.pair_orientation)?;
        rows.push(AlphaSweepRow {
            alpha,
            core_node_count: res.core.core_nodes.len(),
            core_edge_count: res.core.core_edges.len(),
            metrics,
        });
    }
    Ok(rows)
}

/// The flow pipeline followed by every configured baseline at the same core
/// size `k`, all evaluated with identical metric code on the same base graph.
/// The pipeline row comes first.
pub fn compare_methods(
    g: &WeightedDigraph,
    config: &ExperimentConfig,
) -> Result<(PipelineResult, Vec<ComparisonRow>)> {
    config.validate()?;
    let res = run_pipeline(g, &config.extraction)?;
    let k = res.core.core_nodes.len();
    let mut rows = vec![ComparisonRow {
        method: "ricci-flow".to_owned(),
        core_node_count: k,
        core_edge_count: res.core.core_edges.len(),
        metrics: evaluate_core_with(&res.base, &res.core, config.pair_orientation)?,
    }];
    for &method in &config.methods {
        let core = baseline_core(&res.base, method, k, config.extraction.tie_policy)?;
        rows.push(ComparisonRow {
            method: method.to_string(),
            core_node_count: core.core_nodes.len(),
            core_edge_count: core.core_edges.len(),
            metrics: evaluate_core_with(&res.base, &core, config.pair_orientation)?,
        });
    }
    Ok((res, rows))
}

/// Damaged copy of `core`: same node set, `floor(ratio * |E'|)` core edges
/// removed uniformly without replacement.
pub fn delete_core_edges(core: &CoreResult, ratio: f64, rng: &mut ChaCha8Rng) -> CoreResult {
    let m = core.core_edges.len();
    let delete = (ratio * m as f64).floor() as usize;
    let mut edges = core.core_edges.clone();
    // Partial Fisher-Yates: the shuffled prefix is the deletion sample.
    let (deleted, _) = edges.partial_shuffle(rng, delete);
    let deleted: Vec<usize> = deleted.to_vec();
    let mut kept: Vec<usize> = core
        .core_edges
        .iter()
        .copied()
        .filter(|e| !deleted.contains(e))
        .collect();
    kept.sort_unstable();
    CoreResult {
        core_nodes: core.core_nodes.clone(),
        core_edges: kept,
        retained_edges: core.retained_edges.clone(),
        is_single_scc: core.is_single_scc,
        degenerate: core.degenerate,
    }
}

/// Splitmix-style combine so each (method, ratio, trial) cell gets an
/// independent, reproducible stream.
fn cell_seed(seed: u64, method_idx: usize, ratio_idx: usize, trial: usize) -> u64 {
    let mut z = seed
        ^ (method_idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (ratio_idx as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9)
        ^ (trial as u64).wrapping_mul(0x94D0_49BB_1331_11EB);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// For every method's core and every deletion ratio, delete a random edge
/// sample, re-evaluate metrics against the original graph with the node set
/// fixed, and average over trials.
pub fn robustness_deletion(
    g: &WeightedDigraph,
    config: &ExperimentConfig,
) -> Result<Vec<RobustnessRow>> {
    config.validate()?;
    let res = run_pipeline(g, &config.extraction)?;
    let k = res.core.core_nodes.len();
    let mut cores: Vec<(String, CoreResult)> = vec![("ricci-flow".to_owned(), res.core.clone())];
    for &method in &config.methods {
        cores.push((
            method.to_string(),
            baseline_core(&res.base, method, k, config.extraction.tie_policy)?,
        ));
    }
    let mut rows = Vec::new();
    for (mi, (name, core)) in cores.iter().enumerate() {
        for (ri, &ratio) in config.deletion_ratios.iter().enumerate() {
            let delete = (ratio * core.core_edges.len() as f64).floor() as usize;
            let (mut sum_in, mut sum_out) = (0.0, 0.0);
            let mut sum_rs = Some(0.0);
            for trial in 0..config.trials {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(cell_seed(config.rng_seed, mi, ri, trial));
                let damaged = delete_core_edges(core, ratio, &mut rng);
                let report = evaluate_core_with(&res.base, &damaged, config.pair_orientation)?;
                sum_in += report.r_d_in;
                sum_out += report.r_d_out;
                sum_rs = match (sum_rs, report.r_s) {
                    (Some(acc), Some(rs)) => Some(acc + rs),
                    _ => None,
                };
            }
            let t = config.trials as f64;
            rows.push(RobustnessRow {
                method: name.clone(),
                ratio,
                deleted_edges: delete,
                trials: config.trials,
                r_d_in: sum_in / t,
                r_d_out: sum_out / t,
                r_s: sum_rs.map(|s| s / t),
            });
        }
    }
    Ok(rows)
}
