//! Steps the processor array by hand on a small system and prints which
//! rows are locked after every iteration.
//!
//! ```bash
//! cargo run --example simulate_trace
//! ```

use ripple_gauss::{FieldSpec, Machine, MachineConfig, Matrix};

fn main() {
    let field = FieldSpec::real();
    let matrix = Matrix::from_ints(&[[0, 2, 1, 7], [1, 1, 1, 6], [2, 0, 3, 11]], &field);
    let config = MachineConfig::new(3, 4, field).with_sliding_zeros_check(true);
    let mut machine = Machine::load(&matrix, config).expect("shape matches");

    for _ in 0..config.iterations() {
        let record = machine.step().expect("within budget");
        println!(
            "iteration {} states {:?} row 1 holds input row {}",
            record.iteration, record.row_states, record.origin_row_at_processor_row_1
        );
    }
    let run = machine.run();
    for row in run.f_matrix.to_rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        println!("f | {}", cells.join(" "));
    }
    let x: Vec<String> = run
        .solve()
        .expect("nonsingular")
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("solution = [{}]", x.join(", "));
    println!("sliding-zeros violations: {}", run.lemma_violations);
}
