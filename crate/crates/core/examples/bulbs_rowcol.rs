//! Row/column toggling and single-point toggling on a bulb matrix.
//!
//! ```bash
//! cargo run --example bulbs_rowcol
//! ```

use ripple_gauss::bulbs::{apply_point_ops, solve_point_toggle, solve_rowcol, RowColInstance};

fn main() {
    let initial = vec![false, true, false, true, false, true];
    let target = vec![true, false, true, true, false, true];
    let inst = RowColInstance::new(
        2,
        3,
        initial.clone(),
        target.clone(),
        vec![3.0, 1.0],
        vec![1.0, 1.0, 1.0],
    )
    .expect("valid instance");
    let s = solve_rowcol(&inst);
    println!("rows {:?} cols {:?} cost {}", s.rows, s.cols, s.cost);

    let unit = RowColInstance::unit(
        2,
        3,
        vec![false; 6],
        vec![false, true, true, true, false, false],
    )
    .expect("valid instance");
    let r = solve_point_toggle(&unit);
    println!(
        "point toggles: feasible {} count {} ops {:?}",
        r.feasible, r.count, r.operations
    );
    if r.feasible {
        assert_eq!(apply_point_ops(&unit, &r.operations), unit.target);
    }
}
