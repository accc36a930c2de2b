//! The same elimination over GF(p): the simulator and the serial eliminator
//! agree on rank and on the determinant up to sign.
//!
//! ```bash
//! cargo run --example modular_elimination -- 10007
//! ```

use ripple_gauss::serial::determinant;
use ripple_gauss::validation::generate_matrix;
use ripple_gauss::{serial_gauss, simulate, DetValue, FieldSpec, PivotPolicy};

fn main() {
    let p = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(10007);
    let field = FieldSpec::prime(p).expect("prime modulus");
    let drawn = generate_matrix(8, 9, 42, -9, 9, &field).expect("nonsingular draw");

    let run = simulate(&drawn.matrix, field).expect("shape matches");
    let serial = serial_gauss(&drawn.matrix, &field, PivotPolicy::max_abs());
    let (DetValue::Residue(par), DetValue::Residue(ser)) =
        (run.determinant(), determinant(&serial, 8))
    else {
        unreachable!("exact field");
    };
    println!("field {field}");
    println!("rank: array {} serial {}", run.rank(), serial.rank);
    println!(
        "det: array {par} serial {ser} (p - serial = {})",
        (p - ser) % p
    );
    let x: Vec<String> = run
        .solve()
        .expect("nonsingular")
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("solution: [{}]", x.join(", "));
}
