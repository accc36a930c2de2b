//! Binary trie over fixed-width integers with per-node string counts, so
//! strings can be removed again.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrieError {
    #[error("{0} is not stored in the trie")]
    NotPresent(u64),
    #[error("{value} does not fit in {bits} bits")]
    TooWide { value: u64, bits: u32 },
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    children: [u32; 2],
    count: usize,
}

impl Node {
    const EMPTY: Node = Node {
        children: [NONE, NONE],
        count: 0,
    };
}

/// Most-significant-bit-first binary trie of depth `bits`.
#[derive(Debug, Clone)]
pub struct CountedTrie {
    bits: u32,
    nodes: Vec<Node>,
    free: Vec<u32>,
}

impl CountedTrie {
    pub fn new(bits: u32) -> Self {
        assert!((1..=64).contains(&bits), "trie depth must be 1..=64");
        CountedTrie {
            bits,
            nodes: vec![Node::EMPTY],
            free: Vec::new(),
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of stored strings (with multiplicity).
    pub fn len(&self) -> usize {
        self.nodes[0].count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Live nodes, root included.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    fn check_width(&self, value: u64) -> Result<(), TrieError> {
        if self.bits < 64 && value >> self.bits != 0 {
            return Err(TrieError::TooWide {
                value,
                bits: self.bits,
            });
        }
        Ok(())
    }

    fn bit(&self, value: u64, level: u32) -> usize {
        (value >> (self.bits - 1 - level) & 1) as usize
    }

    fn alloc(&mut self) -> u32 {
        match self.free.pop() {
            Some(idx) => {
                self.nodes[idx as usize] = Node::EMPTY;
                idx
            }
            None => {
                self.nodes.push(Node::EMPTY);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    pub fn insert(&mut self, value: u64) -> Result<(), TrieError> {
        self.check_width(value)?;
        let mut node = 0u32;
        self.nodes[0].count += 1;
        for level in 0..self.bits {
            let b = self.bit(value, level);
            let mut child = self.nodes[node as usize].children[b];
            if child == NONE {
                child = self.alloc();
                self.nodes[node as usize].children[b] = child;
            }
            self.nodes[child as usize].count += 1;
            node = child;
        }
        Ok(())
    }

    pub fn contains(&self, value: u64) -> bool {
        if self.check_width(value).is_err() {
            return false;
        }
        let mut node = 0u32;
        for level in 0..self.bits {
            node = self.nodes[node as usize].children[self.bit(value, level)];
            if node == NONE {
                return false;
            }
        }
        true
    }

    /// Decrements counts along the insertion path and drops edges to
    /// children whose count reaches zero.
    pub fn remove(&mut self, value: u64) -> Result<(), TrieError> {
        if !self.contains(value) {
            return Err(TrieError::NotPresent(value));
        }
        self.nodes[0].count -= 1;
        let mut node = 0u32;
        for level in 0..self.bits {
            let b = self.bit(value, level);
            let child = self.nodes[node as usize].children[b];
            let c = &mut self.nodes[child as usize];
            c.count -= 1;
            if c.count == 0 {
                self.nodes[node as usize].children[b] = NONE;
                self.release(child);
                return Ok(());
            }
            node = child;
        }
        Ok(())
    }

    fn release(&mut self, root: u32) {
        let mut stack = vec![root];
        while let Some(idx) = stack.pop() {
            for c in self.nodes[idx as usize].children {
                if c != NONE {
                    stack.push(c);
                }
            }
            self.nodes[idx as usize] = Node::EMPTY;
            self.free.push(idx);
        }
    }

    /// The stored string `s` maximizing `s ^ query`, found by descending
    /// towards the complement of each query bit whenever that edge exists.
    pub fn best_partner(&self, query: u64) -> Option<u64> {
        if self.is_empty() {
            return None;
        }
        let mut node = 0u32;
        let mut partner = 0u64;
        for level in 0..self.bits {
            let b = self.bit(query, level);
            let children = self.nodes[node as usize].children;
            let (next, taken) = if children[1 - b] != NONE {
                (children[1 - b], 1 - b)
            } else {
                (children[b], b)
            };
            partner = partner << 1 | taken as u64;
            node = next;
        }
        Some(partner)
    }

    /// Preorder listing of `(depth, prefix, count)` for every live node.
    /// Two tries hold the same strings with the same structure iff their
    /// shapes are equal.
    pub fn shape(&self) -> Vec<(u32, u64, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(0u32, 0u32, 0u64)];
        while let Some((idx, depth, prefix)) = stack.pop() {
            let node = self.nodes[idx as usize];
            out.push((depth, prefix, node.count));
            for b in [1usize, 0] {
                let c = node.children[b];
                if c != NONE {
                    stack.push((c, depth + 1, prefix << 1 | b as u64));
                }
            }
        }
        out
    }

    /// Every non-root node has a positive count, and every internal node's
    /// count equals the sum of its children's counts.
    pub fn check_counts(&self) -> bool {
        let mut stack = vec![(0u32, 0u32)];
        while let Some((idx, depth)) = stack.pop() {
            let node = self.nodes[idx as usize];
            if idx != 0 && node.count == 0 {
                return false;
            }
            if depth < self.bits {
                let sum: usize = node
                    .children
                    .iter()
                    .filter(|&&c| c != NONE)
                    .map(|&c| self.nodes[c as usize].count)
                    .sum();
                if sum != node.count {
                    return false;
                }
                for c in node.children {
                    if c != NONE {
                        stack.push((c, depth + 1));
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for CountedTrie {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.shape() == other.shape()
    }
}

impl Eq for CountedTrie {}
