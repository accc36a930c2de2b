use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{bit_width, check_values, CountedTrie, XorError};

/// Best contiguous run `values[i..=j]` (1-based, inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubarrayMax {
    pub value: u64,
    pub i: usize,
    pub j: usize,
}

/// `X(0) = 0`, `X(i) = X(i-1) ^ A(i)`.
pub fn prefix_xors(values: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(values.len() + 1);
    out.push(0);
    for v in values {
        out.push(out.last().unwrap() ^ v);
    }
    out
}

/// Trie of prefix xors plus, for each stored value, the prefix positions
/// holding it in insertion order.
struct PrefixWindow {
    trie: CountedTrie,
    positions: HashMap<u64, VecDeque<usize>>,
}

impl PrefixWindow {
    fn new(bits: u32) -> Self {
        PrefixWindow {
            trie: CountedTrie::new(bits),
            positions: HashMap::new(),
        }
    }

    fn insert(&mut self, x: u64, pos: usize) {
        self.trie.insert(x).expect("prefix fits width");
        self.positions.entry(x).or_default().push_back(pos);
    }

    fn remove(&mut self, x: u64) {
        self.trie.remove(x).expect("prefix was inserted");
        let q = self.positions.get_mut(&x).expect("prefix was inserted");
        q.pop_front();
        if q.is_empty() {
            self.positions.remove(&x);
        }
    }

    /// Best `(value, earliest prefix position)` for a run ending at `j`.
    fn query(&self, x: u64) -> Option<(u64, usize)> {
        let partner = self.trie.best_partner(x)?;
        let pos = *self.positions[&partner].front().unwrap();
        Some((partner ^ x, pos))
    }
}

fn better(cand: SubarrayMax, best: Option<SubarrayMax>) -> bool {
    match best {
        None => true,
        Some(b) => {
            (
                cand.value,
                std::cmp::Reverse(cand.j),
                std::cmp::Reverse(cand.i),
            ) > (b.value, std::cmp::Reverse(b.j), std::cmp::Reverse(b.i))
        }
    }
}

pub fn max_xor_subarray(values: &[u64]) -> Result<SubarrayMax, XorError> {
    max_xor_subarray_bits(values, bit_width(values))
}

/// Ties go to the smallest end, then the smallest start.
pub fn max_xor_subarray_bits(values: &[u64], bits: u32) -> Result<SubarrayMax, XorError> {
    let n = values.len();
    max_xor_subarray_bounded_bits(values, 1, n.max(1), bits)
}

pub fn max_xor_subarray_bounded(
    values: &[u64],
    min_len: usize,
    max_len: usize,
) -> Result<SubarrayMax, XorError> {
    max_xor_subarray_bounded_bits(values, min_len, max_len, bit_width(values))
}

/// Only runs of length `min_len..=max_len`. When the query for end `j`
/// runs, the trie holds exactly `X(j-max_len) ..= X(j-min_len)`, clamped
/// at `X(0)`.
pub fn max_xor_subarray_bounded_bits(
    values: &[u64],
    min_len: usize,
    max_len: usize,
    bits: u32,
) -> Result<SubarrayMax, XorError> {
    let n = values.len();
    if n == 0 {
        return Err(XorError::Empty);
    }
    if min_len < 1 || min_len > max_len || max_len > n {
        return Err(XorError::BadWindow {
            min_len,
            max_len,
            len: n,
        });
    }
    check_values(values, bits)?;
    let x = prefix_xors(values);
    let mut window = PrefixWindow::new(bits);
    window.insert(x[0], 0);
    let mut best = None;
    for j in 1..=n {
        if j > max_len {
            window.remove(x[j - max_len - 1]);
        }
        if j >= min_len {
            let (value, pos) = window.query(x[j]).expect("window is nonempty");
            let cand = SubarrayMax {
                value,
                i: pos + 1,
                j,
            };
            if better(cand, best) {
                best = Some(cand);
            }
            window.insert(x[j - min_len + 1], j - min_len + 1);
        }
    }
    Ok(best.expect("at least one window"))
}
