//! Counting sequences with forbidden neighbours, three ways.
//!
//! ```bash
//! cargo run --example seqcount -- 1000000
//! ```

use ripple_gauss::seq_count::{count_binary_decomp, count_dp, count_matpow, Transition};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1_000_000);
    let m = 1_000_000_007;
    // no two consecutive 1s: a Fibonacci count
    let t = Transition::new(&[[1u64, 1], [1, 0]]).expect("binary matrix");
    let mp = count_matpow(&t, n, m).expect("valid input");
    println!("n = {n}");
    println!(
        "matrix power:  {} ({} products)",
        mp.value, mp.multiplications
    );
    println!(
        "binary decomp: {}",
        count_binary_decomp(&t, n, m).expect("valid input")
    );
    if n <= 10_000_000 {
        println!(
            "dp:            {}",
            count_dp(&t, n, m).expect("valid input")
        );
    }
}
