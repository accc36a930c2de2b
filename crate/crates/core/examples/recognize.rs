//! Generates a large tree of cycles and runs the contraction recognizer on
//! it and on a few graphs that are not trees of cycles.
//!
//! ```bash
//! cargo run --release --example recognize
//! ```

use std::time::Instant;

use ripple_gauss::recognition::{generate_tree_of_cycles, is_tree_of_cycles, UGraph};

fn main() {
    let g = generate_tree_of_cycles(2024, 12_000, 3..=14).expect("valid ranges");
    let start = Instant::now();
    let r = is_tree_of_cycles(&g);
    println!(
        "generated: {} vertices {} edges -> accepted {} ({} contractions, {} set ops, {:.2?})",
        g.len(),
        g.edge_count(),
        r.accepted,
        r.trace.len(),
        r.operations,
        start.elapsed()
    );

    let k4: Vec<_> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    let star: Vec<_> = (1..6).map(|v| (0, v)).collect();
    for (name, g) in [
        ("K4", UGraph::new(4, &k4).unwrap()),
        ("star", UGraph::new(6, &star).unwrap()),
    ] {
        let r = is_tree_of_cycles(&g);
        println!(
            "{name}: accepted {} rejected_by {:?} left {}",
            r.accepted, r.rejected_by, r.final_vertices
        );
    }
}
