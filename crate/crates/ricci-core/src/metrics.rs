//! Core-quality metrics: in/out degree cohesion of the core against the full
//! graph, and the average shortest-path stretch among residual nodes once the
//! core is removed. Internals use exact rationals; reports carry f64.

use std::collections::HashMap;

use num::rational::Ratio;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::extract::CoreResult;
use crate::graph::{all_pairs_hop_distances, hop_distances_from, NodeId, WeightedDigraph};

/// How residual node pairs are counted in the distance stretch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairOrientation {
    /// Each ordered pair `(u, v)` with a finite residual distance counts once.
    #[default]
    Ordered,
    /// Each unordered pair counts once, contributing the mean of the ratios
    /// over its finitely-connected directions.
    Unordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub r_d_in: f64,
    pub r_d_out: f64,
    /// Mean residual stretch; `None` when no residual pair stays connected.
    pub r_s: Option<f64>,
    /// Number of residual pairs contributing to `r_s`.
    pub xi: usize,
    /// Core nodes excluded from a cohesion mean because their full-graph
    /// degree was zero.
    pub skipped_zero_degree_terms: usize,
    pub pair_orientation: PairOrientation,
}

/// Sum of `count * ratio` terms, collected exactly. Ratios repeat heavily on
/// real graphs, so bucketing by reduced fraction keeps bignum work small.
fn rational_mean(buckets: &HashMap<Ratio<u64>, usize>, terms: usize) -> BigRational {
    let mut sum = BigRational::zero();
    for (ratio, &count) in buckets {
        sum += BigRational::new(
            BigInt::from(*ratio.numer() * count as u64),
            BigInt::from(*ratio.denom()),
        );
    }
    sum / BigRational::from(BigInt::from(terms as u64))
}

/// Exact degree cohesion: mean over core nodes of (core degree / full-graph
/// degree), separately for in- and out-degrees. Returns
/// `(r_d_in, r_d_out, skipped_zero_degree_terms)`.
pub fn degree_cohesion_exact(
    g: &WeightedDigraph,
    core: &CoreResult,
) -> Result<(BigRational, BigRational, usize)> {
    if core.core_nodes.is_empty() {
        return Err(GraphError::EmptyCore);
    }
    let mut core_in = vec![0u64; g.node_count()];
    let mut core_out = vec![0u64; g.node_count()];
    for &ei in &core.core_edges {
        let e = g.edge(ei);
        core_out[e.src] += 1;
        core_in[e.dst] += 1;
    }
    let mut in_buckets: HashMap<Ratio<u64>, usize> = HashMap::new();
    let mut out_buckets: HashMap<Ratio<u64>, usize> = HashMap::new();
    let (mut in_terms, mut out_terms, mut skipped) = (0usize, 0usize, 0usize);
    for &x in &core.core_nodes {
        let din = g.in_degree(x) as u64;
        if din > 0 {
            *in_buckets.entry(Ratio::new(core_in[x], din)).or_default() += 1;
            in_terms += 1;
        } else {
            skipped += 1;
        }
        let dout = g.out_degree(x) as u64;
        if dout > 0 {
            *out_buckets.entry(Ratio::new(core_out[x], dout)).or_default() += 1;
            out_terms += 1;
        } else {
            skipped += 1;
        }
    }
    if in_terms == 0 || out_terms == 0 {
        return Err(GraphError::EmptyCore);
    }
    Ok((
        rational_mean(&in_buckets, in_terms),
        rational_mean(&out_buckets, out_terms),
        skipped,
    ))
}

pub fn degree_cohesion(g: &WeightedDigraph, core: &CoreResult) -> Result<(f64, f64, usize)> {
    let (rin, rout, skipped) = degree_cohesion_exact(g, core)?;
    Ok((
        rin.to_f64().expect("cohesion fits in f64"),
        rout.to_f64().expect("cohesion fits in f64"),
        skipped,
    ))
}

/// Exact distance stretch: remove the core nodes, induce the residual graph,
/// and average `dist_residual(u, v) / dist_full(u, v)` over residual pairs
/// that stay connected (unit-hop distances on both sides). `None` with
/// `xi = 0` when nothing remains connected.
pub fn distance_stretch_exact(
    g: &WeightedDigraph,
    core: &CoreResult,
    orientation: PairOrientation,
) -> (Option<BigRational>, usize) {
    let mut is_core = vec![false; g.node_count()];
    for &u in &core.core_nodes {
        is_core[u] = true;
    }
    let residual: Vec<NodeId> = (0..g.node_count()).filter(|&u| !is_core[u]).collect();
    if residual.len() < 2 {
        return (None, 0);
    }
    let sub = g.induced_subgraph(&residual);
    let d_res = all_pairs_hop_distances(&sub);
    // Full-graph rows only for residual sources.
    let d_full: Vec<Vec<Option<u32>>> = residual
        .par_iter()
        .map(|&u| hop_distances_from(g, u))
        .collect();

    let k = residual.len();
    let ratio_of = |i: usize, j: usize| -> Option<Ratio<u64>> {
        let num = d_res[i][j]?;
        let den = d_full[i][residual[j]].expect("residual path exists in the full graph");
        Some(Ratio::new(num as u64, den as u64))
    };
    let mut buckets: HashMap<Ratio<u64>, usize> = HashMap::new();
    let mut halved: HashMap<Ratio<u64>, usize> = HashMap::new();
    let mut xi = 0usize;
    match orientation {
        PairOrientation::Ordered => {
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        if let Some(r) = ratio_of(i, j) {
                            *buckets.entry(r).or_default() += 1;
                            xi += 1;
                        }
                    }
                }
            }
        }
        PairOrientation::Unordered => {
            for i in 0..k {
                for j in i + 1..k {
                    match (ratio_of(i, j), ratio_of(j, i)) {
                        (Some(a), Some(b)) => {
                            *halved.entry(a).or_default() += 1;
                            *halved.entry(b).or_default() += 1;
                            xi += 1;
                        }
                        (Some(r), None) | (None, Some(r)) => {
                            *buckets.entry(r).or_default() += 1;
                            xi += 1;
                        }
                        (None, None) => {}
                    }
                }
            }
        }
    }
    if xi == 0 {
        return (None, 0);
    }
    let mut sum = BigRational::zero();
    for (ratio, count) in buckets {
        sum += BigRational::new(
            BigInt::from(*ratio.numer() * count as u64),
            BigInt::from(*ratio.denom()),
        );
    }
    for (ratio, count) in halved {
        sum += BigRational::new(
            BigInt::from(*ratio.numer() * count as u64),
            BigInt::from(*ratio.denom() * 2),
        );
    }
    (Some(sum / BigRational::from(BigInt::from(xi as u64))), xi)
}

pub fn distance_stretch(
    g: &WeightedDigraph,
    core: &CoreResult,
    orientation: PairOrientation,
) -> (Option<f64>, usize) {
    let (rs, xi) = distance_stretch_exact(g, core, orientation);
    (rs.map(|r| r.to_f64().expect("stretch fits in f64")), xi)
}

pub fn evaluate_core(g: &WeightedDigraph, core: &CoreResult) -> Result<MetricsReport> {
    evaluate_core_with(g, core, PairOrientation::default())
}

pub fn evaluate_core_with(
    g: &WeightedDigraph,
    core: &CoreResult,
    orientation: PairOrientation,
) -> Result<MetricsReport> {
    let (r_d_in, r_d_out, skipped_zero_degree_terms) = degree_cohesion(g, core)?;
    let (r_s, xi) = distance_stretch(g, core, orientation);
    Ok(MetricsReport {
        r_d_in,
        r_d_out,
        r_s,
        xi,
        skipped_zero_degree_terms,
        pair_orientation: orientation,
    })
}
