//! Make a weakly connected digraph strongly connected with the minimum
//! number of heavy artificial edges.

use ricci_core::graph::{is_strongly_connected, load_edge_list_str, shortest_path_distance, Lengths};
use ricci_core::{augment_to_strong, strip_artificial};

fn main() {
    let (g, _) = load_edge_list_str("x y\nz1 x\nz2 x\ny z3\ny z4").expect("valid edge list");
    println!("before: strongly connected = {}", is_strongly_connected(&g));

    let res = augment_to_strong(&g, 100.0).expect("weakly connected input");
    println!("added {} artificial edges of weight 100:", res.added_edges.len());
    for e in &res.added_edges {
        println!("  {} -> {}", g.label(e.src), g.label(e.dst));
    }
    println!("after: strongly connected = {}", is_strongly_connected(&res.graph));

    let z3 = g.node_by_label("z3").unwrap();
    let z1 = g.node_by_label("z1").unwrap();
    let d = shortest_path_distance(&res.graph, z3, z1, Lengths::Weighted).unwrap();
    println!("d(z3, z1) in the augmented graph: {d}");

    let stripped = strip_artificial(&res.graph);
    println!(
        "stripping artificial edges restores the original: {}",
        stripped == g
    );
}
