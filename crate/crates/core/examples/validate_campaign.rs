//! Replays the randomized cross-check between the array simulator and the
//! serial eliminator.
//!
//! ```bash
//! cargo run --release --example validate_campaign -- 30 20 7
//! ```
//! Arguments: largest `n`, instances per size, seed.

use ripple_gauss::validation::{run_campaign, CampaignConfig};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let config = CampaignConfig {
        n_max: args.first().copied().unwrap_or(20) as usize,
        per_size: args.get(1).copied().unwrap_or(20) as usize,
        seed: args.get(2).copied().unwrap_or(7),
        ..CampaignConfig::default()
    };
    let start = std::time::Instant::now();
    let summary = run_campaign(&config).expect("campaign runs");
    for size in &summary.sizes {
        println!(
            "n={:>3} pass={:>3} fail={} regenerations={} det_skipped={}",
            size.n, size.pass, size.fail, size.regenerations, size.det_skipped
        );
    }
    println!(
        "total pass={} fail={} in {:.2?}",
        summary.total_pass,
        summary.total_fail,
        start.elapsed()
    );
}
