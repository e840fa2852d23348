//! Discrete Ricci flow on edge weights: each step replaces `w_e` with
//! `w_e - s * kappa_e * rho_e`, where curvatures and shortest-path distances
//! are recomputed from the current weights and all edges update together.

use serde::{Deserialize, Serialize};

use crate::curvature::{all_edge_curvatures_with_distances, EdgeCurvature};
use crate::error::{GraphError, Result};
use crate::graph::{all_pairs_weighted_distances, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    /// Laziness of the out-measures, in `[0, 1]`.
    pub alpha: f64,
    /// Step size `s`, in `(0, 1)`.
    pub step_size: f64,
    /// Number of flow steps `N >= 1`.
    pub iterations: usize,
    /// Verify the per-step weight envelope
    /// `(1-s)^j w_e(0) <= w_e(j) <= (1+ms)^j sum_f w_f(0)` as the flow runs.
    pub bound_check: bool,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            alpha: 0.1,
            step_size: 0.1,
            iterations: 5,
            bound_check: true,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(GraphError::InvalidAlpha(self.alpha));
        }
        if !(self.step_size > 0.0 && self.step_size < 1.0) {
            return Err(GraphError::InvalidStepSize(self.step_size));
        }
        if self.iterations == 0 {
            return Err(GraphError::InvalidIterations);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowTrace {
    /// `iterations + 1` weight vectors; index 0 is the input.
    pub weights_per_step: Vec<Vec<f64>>,
    /// Curvatures computed at the start of each step, `iterations` entries.
    pub curvature_per_step: Vec<Vec<EdgeCurvature>>,
    pub config: FlowConfig,
}

impl FlowTrace {
    pub fn final_weights(&self) -> &[f64] {
        self.weights_per_step.last().expect("trace is never empty")
    }
}

/// One synchronous flow step. Returns the updated weights together with the
/// curvatures they were derived from.
pub fn flow_step(
    g: &WeightedDigraph,
    alpha: f64,
    step_size: f64,
) -> Result<(Vec<f64>, Vec<EdgeCurvature>)> {
    let dist = all_pairs_weighted_distances(g);
    let curvatures = all_edge_curvatures_with_distances(g, alpha, &dist)?;
    let weights: Vec<f64> = curvatures
        .iter()
        .enumerate()
        .map(|(ei, c)| {
            let w = g.weight(ei) - step_size * c.kappa * c.rho;
            // Equivalent form w + s (W - d); both must agree.
            debug_assert!((w - (g.weight(ei) + step_size * (c.wasserstein - c.rho))).abs() < 1e-12);
            w
        })
        .collect();
    Ok((weights, curvatures))
}

/// Runs the flow for `config.iterations` steps on a strongly connected graph,
/// recording every intermediate weight vector and curvature vector.
pub fn run_flow(g: &WeightedDigraph, config: &FlowConfig) -> Result<FlowTrace> {
    config.validate()?;
    if !crate::graph::is_strongly_connected(g) {
        return Err(GraphError::NotStronglyConnected);
    }
    let m = g.edge_count();
    let initial = g.weights().to_vec();
    let total0: f64 = initial.iter().sum();
    let s = config.step_size;

    let mut current = g.clone();
    let mut weights_per_step = vec![initial.clone()];
    let mut curvature_per_step = Vec::with_capacity(config.iterations);
    for step in 1..=config.iterations {
        let (next, curvatures) = flow_step(&current, config.alpha, s)?;
        if config.bound_check {
            let lower_factor = (1.0 - s).powi(step as i32);
            let upper = (1.0 + m as f64 * s).powi(step as i32) * total0;
            for (ei, &w) in next.iter().enumerate() {
                let lower = lower_factor * initial[ei];
                if w < lower - 1e-9 || w > upper + 1e-9 {
                    return Err(GraphError::BoundViolation {
                        step,
                        edge: ei,
                        weight: w,
                        lower,
                        upper,
                    });
                }
            }
        }
        assert!(
            next.iter().all(|&w| w > 0.0),
            "flow weights stayed positive"
        );
        current = current.with_weights(next.clone())?;
        weights_per_step.push(next);
        curvature_per_step.push(curvatures);
    }
    Ok(FlowTrace {
        weights_per_step,
        curvature_per_step,
        config: *config,
    })
}
