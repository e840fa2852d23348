//! Out-measures, Wasserstein distances, and per-edge curvature on a small
//! strongly connected digraph.

use ricci_core::graph::load_edge_list_str;
use ricci_core::{all_edge_curvatures, out_measure};

fn main() {
    // Triangle plus a chord; unit weights.
    let (g, _) = load_edge_list_str("x y\ny z\nz x\nx z").expect("valid edge list");
    let alpha = 0.1;

    let x = g.node_by_label("x").unwrap();
    let mu = out_measure(&g, x, alpha).expect("x has out-edges");
    println!("out-measure of x at alpha = {alpha}:");
    for &(node, mass) in mu.entries() {
        println!("  {}: {mass}", g.label(node));
    }

    println!("\nedge curvatures:");
    for c in all_edge_curvatures(&g, alpha).expect("strongly connected") {
        println!(
            "  {} -> {}: d = {}, W = {:.6}, kappa = {:.6}",
            g.label(c.edge.src),
            g.label(c.edge.dst),
            c.rho,
            c.wasserstein,
            c.kappa
        );
    }

    // On a unit cycle with alpha = 0 every edge is flat.
    let (cycle, _) = load_edge_list_str("a b\nb c\nc a").unwrap();
    println!("\nunit 3-cycle at alpha = 0:");
    for c in all_edge_curvatures(&cycle, 0.0).unwrap() {
        println!(
            "  {} -> {}: kappa = {}",
            cycle.label(c.edge.src),
            cycle.label(c.edge.dst),
            c.kappa
        );
    }
}
