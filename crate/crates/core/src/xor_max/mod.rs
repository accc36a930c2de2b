//! Maximum XOR over subsets (GF(2) elimination, bit by bit) and over
//! contiguous subarrays (prefix xors in a counted trie).

mod subarray;
mod subset;
mod trie;

pub use subarray::{
    max_xor_subarray, max_xor_subarray_bits, max_xor_subarray_bounded,
    max_xor_subarray_bounded_bits, prefix_xors, SubarrayMax,
};
pub use subset::{
    max_xor_subset_basic, max_xor_subset_basic_bits, max_xor_subset_incremental,
    max_xor_subset_incremental_bits, XorEchelon, XorMaxResult,
};
pub use trie::{CountedTrie, TrieError};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XorError {
    #[error("bit width must be in 1..=64, got {0}")]
    BadBitWidth(u32),
    #[error("value {value} does not fit in {bits} bits")]
    ValueTooWide { value: u64, bits: u32 },
    #[error("window [{min_len}, {max_len}] is invalid for {len} values")]
    BadWindow {
        min_len: usize,
        max_len: usize,
        len: usize,
    },
    #[error("empty input")]
    Empty,
}

/// Position of the highest set bit across `values`, at least 1.
pub fn bit_width(values: &[u64]) -> u32 {
    let all = values.iter().fold(0u64, |acc, v| acc | v);
    (64 - all.leading_zeros()).max(1)
}

fn check_values(values: &[u64], bits: u32) -> Result<(), XorError> {
    if !(1..=64).contains(&bits) {
        return Err(XorError::BadBitWidth(bits));
    }
    if bits < 64 {
        if let Some(&value) = values.iter().find(|&&v| v >> bits != 0) {
            return Err(XorError::ValueTooWide { value, bits });
        }
    }
    Ok(())
}
