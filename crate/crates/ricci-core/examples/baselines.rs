//! The four centrality baselines and the top-k cores they induce.

use ricci_core::metrics::evaluate_core;
use ricci_core::graph::load_edge_list_str;
use ricci_core::{baseline_core, centrality, CentralityMethod, TiePolicy};

fn main() {
    // Triangle core with a pendant source and a 2-cycle appendage.
    let (g, _) = load_edge_list_str("a b\nb c\nc a\np a\nc d\nd c").expect("valid edge list");

    for method in CentralityMethod::ALL {
        let scores = centrality(&g, method).expect("centrality computes");
        let pretty: Vec<String> = scores
            .scores
            .iter()
            .enumerate()
            .map(|(u, s)| format!("{}={s:.4}", g.label(u)))
            .collect();
        println!("{method}: {}", pretty.join(" "));
    }

    println!("\ntop-3 cores:");
    for method in CentralityMethod::ALL {
        let core = baseline_core(&g, method, 3, TiePolicy::KeepAllMaximal)
            .expect("k within range");
        let nodes: Vec<&str> = core.core_nodes.iter().map(|&u| g.label(u)).collect();
        let report = evaluate_core(&g, &core).expect("non-empty core");
        println!(
            "  {method}: nodes {{{}}}, {} edges, r_d_in = {:.4}, r_d_out = {:.4}",
            nodes.join(", "),
            core.core_edges.len(),
            report.r_d_in,
            report.r_d_out
        );
    }
}
