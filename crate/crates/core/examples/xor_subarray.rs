//! Maximum xor over contiguous runs, without and with a length window.
//!
//! ```bash
//! cargo run --example xor_subarray
//! ```

use ripple_gauss::xor_max::{max_xor_subarray, max_xor_subarray_bounded, CountedTrie};

fn main() {
    let values = [1u64, 2, 3, 4, 9, 7, 6];
    let best = max_xor_subarray(&values).expect("non-empty");
    println!(
        "{values:?}: best run {}..={} xor {}",
        best.i, best.j, best.value
    );
    for (lo, hi) in [(1, 1), (2, 3), (4, 7)] {
        let r = max_xor_subarray_bounded(&values, lo, hi).expect("valid window");
        println!("length {lo}..={hi}: run {}..={} xor {}", r.i, r.j, r.value);
    }

    let mut trie = CountedTrie::new(4);
    for v in [3, 5, 5, 12] {
        trie.insert(v).expect("fits");
    }
    trie.remove(5).expect("present");
    println!(
        "trie holds {} strings in {} nodes; best partner of 6 is {:?}",
        trie.len(),
        trie.node_count(),
        trie.best_partner(6)
    );
}
