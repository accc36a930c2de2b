//! Cheapest set of bulbs to touch on a small graph, next to the grid
//! specialist answering the same question on a grid.
//!
//! ```bash
//! cargo run --example bulbs_graph
//! ```

use ripple_gauss::bulbs::{
    solve_graph, solve_grid, BulbGraph, GridSpec, Neighborhood, DEFAULT_FREE_VAR_CAP,
};

fn main() {
    // a 5-cycle with a chord
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)];
    let g = BulbGraph::new(
        5,
        &edges,
        vec![false; 5],
        vec![true; 5],
        vec![3.0, 1.0, 4.0, 1.0, 5.0],
    )
    .expect("valid graph");
    let s = solve_graph(&g, DEFAULT_FREE_VAR_CAP).expect("within budget");
    println!(
        "graph: feasible {} cost {} touch {:?} rank {:?}",
        s.feasible, s.cost, s.x, s.pivot_rank
    );

    for nb in [
        Neighborhood::Orthogonal4,
        Neighborhood::Diagonal4,
        Neighborhood::All8,
    ] {
        let grid = GridSpec::new(4, 5, nb, vec![false; 20], vec![true; 20], vec![1.0; 20])
            .expect("valid grid");
        let fast = solve_grid(&grid);
        let general = solve_graph(&grid.to_graph(), 32).expect("within budget");
        println!(
            "4x5 {nb:?}: specialist cost {} general cost {} (feasible {})",
            fast.cost, general.cost, fast.feasible
        );
    }
}
