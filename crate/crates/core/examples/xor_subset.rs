//! Maximum xor over subsets, with both the re-eliminating and the
//! incremental method, and the work each one spends.
//!
//! ```bash
//! cargo run --example xor_subset -- 9 8 4 3 12
//! ```

use ripple_gauss::xor_max::{max_xor_subset_basic, max_xor_subset_incremental};

fn main() {
    let mut values: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if values.is_empty() {
        values = vec![9, 8, 4, 3, 12];
    }
    let basic = max_xor_subset_basic(&values);
    let incremental = max_xor_subset_incremental(&values);
    println!("values {values:?}");
    println!(
        "max xor {} (basic) / {} (incremental)",
        basic.xm, incremental.xm
    );
    let picked: Vec<u64> = incremental.subset.iter().map(|&i| values[i - 1]).collect();
    println!("subset {:?} -> {:?}", incremental.subset, picked);
    println!(
        "word xors: basic {} incremental {}",
        basic.work, incremental.work
    );
}
