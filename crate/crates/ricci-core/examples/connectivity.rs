//! Classify small digraphs as strongly or only weakly connected and list
//! their strongly connected components.

use ricci_core::graph::{
    is_strongly_connected, is_weakly_connected, load_edge_list_str,
    strongly_connected_components,
};

fn describe(name: &str, edges: &str) {
    let (g, _) = load_edge_list_str(edges).expect("valid edge list");
    println!("{name}: {} nodes, {} edges", g.node_count(), g.edge_count());
    println!("  weakly connected:   {}", is_weakly_connected(&g));
    println!("  strongly connected: {}", is_strongly_connected(&g));
    for comp in strongly_connected_components(&g) {
        let labels: Vec<&str> = comp.iter().map(|&u| g.label(u)).collect();
        println!("  component: {{{}}}", labels.join(", "));
    }
}

fn main() {
    // A directed triangle with a chord: one component.
    describe("G1", "x y\ny z\nz x\nx z");
    // A fan-in/fan-out graph: six singleton components.
    describe("G2", "x y\nz1 x\nz2 x\ny z3\ny z4");
}
