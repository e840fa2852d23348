//! Outward alpha-lazy random-walk measures, exact Wasserstein distance over
//! shortest-path ground costs, and the per-edge Ricci curvature
//! `kappa = 1 - W(mu_x, mu_y) / d(x, y)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::graph::{weighted_distances_from, DirectedEdge, NodeId, WeightedDigraph};
use crate::{simplex, transport};

const MASS_TOL: f64 = 1e-12;

/// Finite probability distribution over nodes; entries sorted by node,
/// strictly positive, summing to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbMeasure {
    entries: Vec<(NodeId, f64)>,
}

impl ProbMeasure {
    pub fn from_entries(mut entries: Vec<(NodeId, f64)>) -> Self {
        entries.retain(|&(_, mass)| mass > 0.0);
        entries.sort_by_key(|&(node, _)| node);
        let total: f64 = entries.iter().map(|&(_, m)| m).sum();
        assert!(
            (total - 1.0).abs() <= 1e-9,
            "probability masses sum to {total}, expected 1"
        );
        ProbMeasure { entries }
    }

    pub fn dirac(node: NodeId) -> Self {
        ProbMeasure {
            entries: vec![(node, 1.0)],
        }
    }

    pub fn entries(&self) -> &[(NodeId, f64)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.iter().map(|&(node, _)| node)
    }

    pub fn mass(&self, node: NodeId) -> f64 {
        self.entries
            .binary_search_by_key(&node, |&(n, _)| n)
            .map_or(0.0, |i| self.entries[i].1)
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.iter().map(|&(_, m)| m).sum()
    }
}

/// Optimal coupling between two measures: `(source, target, mass)` entries
/// with positive mass, plus the total transport cost.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    pub entries: Vec<(NodeId, NodeId, f64)>,
    pub total_cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCurvature {
    pub edge: DirectedEdge,
    /// `d(x, y)`: the shortest weighted path, possibly shorter than the edge.
    pub rho: f64,
    pub wasserstein: f64,
    pub kappa: f64,
}

/// The outward alpha-lazy one-step random walk at `x`: mass `alpha` at `x`
/// and `(1 - alpha) * w_xz / sum w_xu` on each out-neighbor `z`.
pub fn out_measure(g: &WeightedDigraph, x: NodeId, alpha: f64) -> Result<ProbMeasure> {
    if x >= g.node_count() {
        return Err(GraphError::UnknownNode(x));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(GraphError::InvalidAlpha(alpha));
    }
    if alpha == 1.0 {
        return Ok(ProbMeasure::dirac(x));
    }
    if g.out_degree(x) == 0 {
        return Err(GraphError::UndefinedOutMeasure(x));
    }
    let total: f64 = g.out_edges(x).iter().map(|&ei| g.weight(ei)).sum();
    let mut entries = Vec::with_capacity(g.out_degree(x) + 1);
    if alpha > 0.0 {
        entries.push((x, alpha));
    }
    for &ei in g.out_edges(x) {
        entries.push((g.edge(ei).dst, (1.0 - alpha) * g.weight(ei) / total));
    }
    Ok(ProbMeasure::from_entries(entries))
}

/// Exact Wasserstein distance from `mu` to `nu` under `ground_cost`, solved
/// as a dense transportation problem over the two supports.
pub fn wasserstein<F>(ground_cost: F, mu: &ProbMeasure, nu: &ProbMeasure) -> Result<TransportPlan>
where
    F: Fn(NodeId, NodeId) -> f64,
{
    let sources: Vec<NodeId> = mu.support().collect();
    let targets: Vec<NodeId> = nu.support().collect();
    let mut cost = vec![vec![0.0f64; targets.len()]; sources.len()];
    for (i, &u) in sources.iter().enumerate() {
        for (j, &v) in targets.iter().enumerate() {
            let d = if u == v { 0.0 } else { ground_cost(u, v) };
            if !d.is_finite() {
                return Err(GraphError::InfiniteGroundCost);
            }
            cost[i][j] = d;
        }
    }
    let supply: Vec<f64> = mu.entries().iter().map(|&(_, m)| m).collect();
    let demand: Vec<f64> = nu.entries().iter().map(|&(_, m)| m).collect();
    let (plan, total_cost) = transport::solve_transportation(&supply, &demand, &cost)?;
    let mut entries = Vec::new();
    for (i, row) in plan.iter().enumerate() {
        for (j, &mass) in row.iter().enumerate() {
            if mass > 0.0 {
                entries.push((sources[i], targets[j], mass));
            }
        }
    }
    Ok(TransportPlan {
        entries,
        total_cost,
    })
}

/// Kantorovich-Rubinstein dual value: the maximum of
/// `sum psi(u) (mu(u) - nu(u))` over potentials with
/// `psi(u) - psi(v) <= d(u,v)` on the joint support. Solved as a small LP by
/// a route independent of the primal transportation solver; intended as a
/// strong-duality oracle in tests.
pub fn kantorovich_dual_value<F>(ground_cost: F, mu: &ProbMeasure, nu: &ProbMeasure) -> Result<f64>
where
    F: Fn(NodeId, NodeId) -> f64,
{
    let mut support: Vec<NodeId> = mu.support().chain(nu.support()).collect();
    support.sort_unstable();
    support.dedup();
    let k = support.len();
    let mut d = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                d[i][j] = ground_cost(support[i], support[j]);
                if !d[i][j].is_finite() {
                    return Err(GraphError::InfiniteGroundCost);
                }
            }
        }
    }
    if k == 1 {
        return Ok(0.0);
    }
    // Pin psi at the first support point to 0 (translation invariance) and
    // shift the rest to phi_i = psi_i + d(s0, i) >= 0. The pair constraints
    // become phi_i - phi_j <= d(i,j) + d(s0,i) - d(s0,j), whose right side is
    // nonnegative by the triangle inequality, plus box bounds from the pairs
    // involving s0 -- so the slack basis is feasible directly.
    let c_node: Vec<f64> = support
        .iter()
        .map(|&u| mu.mass(u) - nu.mass(u))
        .collect();
    let nvars = k - 1;
    let mut obj = vec![0.0f64; nvars];
    let mut offset = 0.0;
    for i in 1..k {
        obj[i - 1] = c_node[i];
        offset -= c_node[i] * d[0][i];
    }
    let mut a: Vec<Vec<f64>> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    for i in 1..k {
        for j in 1..k {
            if i == j {
                continue;
            }
            let mut row = vec![0.0f64; nvars];
            row[i - 1] = 1.0;
            row[j - 1] = -1.0;
            a.push(row);
            b.push(d[i][j] + d[0][i] - d[0][j]);
        }
        // psi_i - psi_0 <= d(i, 0)  =>  phi_i <= d(i,0) + d(0,i)
        let mut row = vec![0.0f64; nvars];
        row[i - 1] = 1.0;
        a.push(row);
        b.push(d[i][0] + d[0][i]);
    }
    let value = simplex::maximize(&obj, &a, &b)?;
    Ok(value + offset)
}

/// Curvature of the edge at index `edge_idx` in `g`.
pub fn edge_curvature(g: &WeightedDigraph, edge_idx: usize, alpha: f64) -> Result<EdgeCurvature> {
    let e = g.edge(edge_idx);
    let mu = out_measure(g, e.src, alpha)?;
    let nu = out_measure(g, e.dst, alpha)?;
    // Distance rows are only needed from mu's support.
    let rows: Vec<(NodeId, Vec<f64>)> = mu
        .support()
        .map(|u| (u, weighted_distances_from(g, u)))
        .collect();
    let dist = |u: NodeId, v: NodeId| {
        rows.iter()
            .find(|&&(src, _)| src == u)
            .map_or(f64::INFINITY, |(_, row)| row[v])
    };
    let rho = dist(e.src, e.dst);
    curvature_from_parts(e, rho, wasserstein(dist, &mu, &nu)?.total_cost)
}

fn curvature_from_parts(edge: DirectedEdge, rho: f64, w: f64) -> Result<EdgeCurvature> {
    if !rho.is_finite() {
        return Err(GraphError::InfiniteGroundCost);
    }
    Ok(EdgeCurvature {
        edge,
        rho,
        wasserstein: w,
        kappa: 1.0 - w / rho,
    })
}

/// Curvature of every edge, in edge order, sharing one all-pairs distance
/// pass; per-edge transport problems run in parallel.
pub fn all_edge_curvatures(g: &WeightedDigraph, alpha: f64) -> Result<Vec<EdgeCurvature>> {
    let dist = crate::graph::all_pairs_weighted_distances(g);
    all_edge_curvatures_with_distances(g, alpha, &dist)
}

pub(crate) fn all_edge_curvatures_with_distances(
    g: &WeightedDigraph,
    alpha: f64,
    dist: &[Vec<f64>],
) -> Result<Vec<EdgeCurvature>> {
    (0..g.edge_count())
        .into_par_iter()
        .map(|ei| {
            let e = g.edge(ei);
            let mu = out_measure(g, e.src, alpha)?;
            let nu = out_measure(g, e.dst, alpha)?;
            let plan = wasserstein(|u, v| dist[u][v], &mu, &nu)?;
            curvature_from_parts(e, dist[e.src][e.dst], plan.total_cost)
        })
        .collect()
}

/// Upper-bound sanity oracle: a feasible (greedy, generally suboptimal)
/// coupling whose cost bounds the optimum from above.
pub fn greedy_coupling_cost<F>(ground_cost: F, mu: &ProbMeasure, nu: &ProbMeasure) -> f64
where
    F: Fn(NodeId, NodeId) -> f64,
{
    let mut supply: Vec<(NodeId, f64)> = mu.entries().to_vec();
    let mut demand: Vec<(NodeId, f64)> = nu.entries().to_vec();
    let (mut i, mut j) = (0, 0);
    let mut cost = 0.0;
    while i < supply.len() && j < demand.len() {
        let m = supply[i].1.min(demand[j].1);
        let (u, v) = (supply[i].0, demand[j].0);
        cost += m * if u == v { 0.0 } else { ground_cost(u, v) };
        supply[i].1 -= m;
        demand[j].1 -= m;
        if supply[i].1 <= MASS_TOL {
            i += 1;
        }
        if j < demand.len() && demand[j].1 <= MASS_TOL {
            j += 1;
        }
    }
    cost
}
