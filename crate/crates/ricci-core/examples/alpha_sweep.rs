//! Sweep the laziness parameter and compare methods on a toy graph.

use ricci_core::experiments::{alpha_sweep, compare_methods, ExperimentConfig};
use ricci_core::graph::load_edge_list_str;
use ricci_core::ExtractionConfig;

fn main() {
    let (g, _) = load_edge_list_str("x1 x2\nx2 x3\nx3 x1\nx3 x4\nx4 x5\nx5 x4")
        .expect("valid edge list");
    let config = ExperimentConfig {
        extraction: ExtractionConfig {
            tau: 0.5,
            ..Default::default()
        },
        alpha_grid: vec![0.0, 0.1, 0.3, 0.5, 0.7, 0.9],
        ..Default::default()
    };

    println!("{:>6} {:>6} {:>6} {:>8} {:>8} {:>8}", "alpha", "nodes", "edges", "r_d_in", "r_d_out", "r_s");
    for row in alpha_sweep(&g, &config).expect("sweep succeeds") {
        println!(
            "{:>6} {:>6} {:>6} {:>8.4} {:>8.4} {:>8}",
            row.alpha,
            row.core_node_count,
            row.core_edge_count,
            row.metrics.r_d_in,
            row.metrics.r_d_out,
            row.metrics.r_s.map_or("undef".to_owned(), |r| format!("{r:.4}")),
        );
    }

    println!("\nmethod comparison at equal core size:");
    let (_, rows) = compare_methods(&g, &config).expect("comparison succeeds");
    for row in rows {
        println!(
            "  {:<12} {} nodes, {} edges, r_d_in = {:.4}, r_d_out = {:.4}",
            row.method,
            row.core_node_count,
            row.core_edge_count,
            row.metrics.r_d_in,
            row.metrics.r_d_out
        );
    }
}
