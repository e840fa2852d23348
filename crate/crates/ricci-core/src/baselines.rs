//! Centrality baselines (degree, betweenness, closeness, pagerank) and the
//! top-k core extraction used to compare them against the flow pipeline.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GraphError, Result};
use crate::extract::{core_from_node_set, CoreResult, TiePolicy};
use crate::graph::{NodeId, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CentralityMethod {
    Degree,
    Betweenness,
    Closeness,
    Pagerank,
}

impl CentralityMethod {
    pub const ALL: [CentralityMethod; 4] = [
        CentralityMethod::Degree,
        CentralityMethod::Betweenness,
        CentralityMethod::Closeness,
        CentralityMethod::Pagerank,
    ];
}

impl fmt::Display for CentralityMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CentralityMethod::Degree => "degree",
            CentralityMethod::Betweenness => "betweenness",
            CentralityMethod::Closeness => "closeness",
            CentralityMethod::Pagerank => "pagerank",
        };
        f.write_str(name)
    }
}

impl FromStr for CentralityMethod {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(CentralityMethod::Degree),
            "betweenness" => Ok(CentralityMethod::Betweenness),
            "closeness" => Ok(CentralityMethod::Closeness),
            "pagerank" => Ok(CentralityMethod::Pagerank),
            other => Err(GraphError::UnknownLabel(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralityScores {
    pub method: CentralityMethod,
    pub scores: Vec<f64>,
}

pub fn centrality(g: &WeightedDigraph, method: CentralityMethod) -> Result<CentralityScores> {
    let scores = match method {
        CentralityMethod::Degree => degree_centrality(g),
        CentralityMethod::Betweenness => betweenness_centrality(g),
        CentralityMethod::Closeness => closeness_centrality(g),
        CentralityMethod::Pagerank => pagerank(g, 0.85, 1e-8, 1000)?,
    };
    Ok(CentralityScores { method, scores })
}

/// `in-degree + out-degree`, unweighted.
pub fn degree_centrality(g: &WeightedDigraph) -> Vec<f64> {
    (0..g.node_count())
        .map(|u| (g.in_degree(u) + g.out_degree(u)) as f64)
        .collect()
}

/// Directed unit-hop betweenness: raw pair-dependency sums over shortest
/// paths, endpoints excluded, no normalization.
pub fn betweenness_centrality(g: &WeightedDigraph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map(|s| {
            // One Brandes pass: BFS tree from s, then dependency accumulation
            // in reverse visitation order.
            let mut sigma = vec![0.0f64; n];
            let mut dist = vec![u32::MAX; n];
            let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
            let mut order: Vec<NodeId> = Vec::new();
            sigma[s] = 1.0;
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &ei in g.out_edges(u) {
                    let v = g.edge(ei).dst;
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                    if dist[v] == dist[u] + 1 {
                        sigma[v] += sigma[u];
                        preds[v].push(u);
                    }
                }
            }
            let mut delta = vec![0.0f64; n];
            let mut partial = vec![0.0f64; n];
            for &w in order.iter().rev() {
                for &u in &preds[w] {
                    delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
                }
                if w != s {
                    partial[w] += delta[w];
                }
            }
            partial
        })
        .reduce(
            || vec![0.0f64; n],
            |mut acc, partial| {
                for (a, p) in acc.iter_mut().zip(&partial) {
                    *a += p;
                }
                acc
            },
        )
}

/// Outward reachability-scaled closeness: with `r` nodes reachable from `v`
/// (excluding `v`) at total hop distance `s`, the score is
/// `(r / (n-1)) * (r / s)`; nodes reaching nothing score 0.
pub fn closeness_centrality(g: &WeightedDigraph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map(|v| {
            let dist = crate::graph::hop_distances_from(g, v);
            let mut reachable = 0u64;
            let mut total = 0u64;
            for (u, d) in dist.iter().enumerate() {
                if u != v {
                    if let Some(d) = d {
                        reachable += 1;
                        total += *d as u64;
                    }
                }
            }
            if reachable == 0 {
                0.0
            } else {
                (reachable as f64 / (n - 1) as f64) * (reachable as f64 / total as f64)
            }
        })
        .collect()
}

/// Power iteration with uniform teleport; dangling mass is redistributed
/// uniformly. Converges when the L1 change drops below `tol`.
pub fn pagerank(g: &WeightedDigraph, damping: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut last_residual = f64::INFINITY;
    for _ in 0..max_iter {
        let dangling: f64 = (0..n)
            .filter(|&u| g.out_degree(u) == 0)
            .map(|u| rank[u])
            .sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        let mut next = vec![base; n];
        for u in 0..n {
            let deg = g.out_degree(u);
            if deg > 0 {
                let share = damping * rank[u] / deg as f64;
                for &ei in g.out_edges(u) {
                    next[g.edge(ei).dst] += share;
                }
            }
        }
        let residual: f64 = rank
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .sum();
        rank = next;
        last_residual = residual;
        if residual < tol {
            return Ok(rank);
        }
    }
    Err(GraphError::PagerankNonConvergence {
        iterations: max_iter,
        residual: last_residual,
    })
}

/// Node ids of the `k` highest-scoring nodes, ties broken by smaller index.
pub fn top_k_nodes(scores: &[f64], k: usize) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let mut top: Vec<NodeId> = order.into_iter().take(k).collect();
    top.sort_unstable();
    top
}

/// Core extraction by centrality ranking: induce the top-`k` nodes on `g` and
/// keep the largest strongly connected component(s). `retained_edges` holds
/// every edge induced by the candidate node set.
pub fn baseline_core(
    g: &WeightedDigraph,
    method: CentralityMethod,
    k: usize,
    policy: TiePolicy,
) -> Result<CoreResult> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(GraphError::InvalidK { k, n });
    }
    let scores = centrality(g, method)?;
    let candidates = top_k_nodes(&scores.scores, k);
    let mut in_set = vec![false; n];
    for &u in &candidates {
        in_set[u] = true;
    }
    let retained_edges: Vec<usize> = (0..g.edge_count())
        .filter(|&ei| {
            let e = g.edge(ei);
            in_set[e.src] && in_set[e.dst]
        })
        .collect();
    let (core_nodes, core_edges, is_single_scc, degenerate) =
        core_from_node_set(g, &candidates, policy)?;
    Ok(CoreResult {
        core_nodes,
        core_edges,
        retained_edges,
        is_single_scc,
        degenerate,
    })
}
