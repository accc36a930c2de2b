//! Packed GF(2) rows and a small row-echelon eliminator over them.

use std::fmt;

const WORD: usize = 64;

/// A fixed-width row of bits packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            row.set(i, b);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of backing words; the cost unit of [`BitRow::xor_assign`].
    pub fn word_len(&self) -> usize {
        self.words.len()
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn swap_bits(&mut self, a: usize, b: usize) {
        let (x, y) = (self.get(a), self.get(b));
        if x != y {
            self.set(a, y);
            self.set(b, x);
        }
    }

    /// Index of the first set bit in `start..end`.
    pub fn first_one_in(&self, start: usize, end: usize) -> Option<usize> {
        let mut i = start;
        while i < end {
            let w = self.words[i / WORD] >> (i % WORD);
            if w == 0 {
                i = (i / WORD + 1) * WORD;
                continue;
            }
            let pos = i + w.trailing_zeros() as usize;
            return (pos < end).then_some(pos);
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "BitRow({s})")
    }
}

/// A GF(2) system `rows x width` brought to row-echelon form.
///
/// The trailing `protected` columns are never swapped; they usually hold
/// the right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Echelon {
    pub rows: Vec<BitRow>,
    pub col_perm: Vec<usize>,
    pub rank: usize,
    /// Word-level xor operations spent during elimination.
    pub work: u64,
    protected: usize,
}

impl Gf2Echelon {
    /// Eliminates with the diagonal kept when it is already 1; otherwise the
    /// pivot comes from further down the column, then from later columns.
    pub fn eliminate(mut rows: Vec<BitRow>, width: usize, protected: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == width));
        let limit = width.saturating_sub(protected);
        let mut col_perm: Vec<usize> = (0..width).collect();
        let mut rank = 0;
        let mut work = 0u64;
        let n = rows.len();
        for i in 0..n.min(limit) {
            let pivot = if rows[i].get(i) {
                Some((i, i))
            } else {
                (i..limit).find_map(|c| (i..n).find(|&r| rows[r].get(c)).map(|r| (r, c)))
            };
            let Some((r, c)) = pivot else { break };
            rows.swap(i, r);
            if c != i {
                for row in rows.iter_mut() {
                    row.swap_bits(i, c);
                }
                col_perm.swap(i, c);
            }
            let (head, tail) = rows.split_at_mut(i + 1);
            let pivot_row = &head[i];
            for row in tail.iter_mut() {
                if row.get(i) {
                    row.xor_assign(pivot_row);
                    work += pivot_row.word_len() as u64;
                }
            }
            rank += 1;
        }
        Gf2Echelon {
            rows,
            col_perm,
            rank,
            work,
            protected,
        }
    }

    /// Whether every all-zero coefficient row also has a zero right-hand side
    /// (the right-hand side is the last column).
    pub fn is_consistent(&self) -> bool {
        let Some(width) = self.rows.first().map(BitRow::len) else {
            return true;
        };
        self.rows[self.rank..].iter().all(|r| !r.get(width - 1))
    }

    /// A solution with every free variable set to zero, in original column
    /// order. Only meaningful when the system is consistent and the last
    /// column is the right-hand side.
    pub fn solve_free_zero(&self) -> Vec<bool> {
        let Some(width) = self.rows.first().map(BitRow::len) else {
            return Vec::new();
        };
        let vars = width - 1;
        debug_assert!(self.protected >= 1);
        let mut y = vec![false; vars];
        for i in (0..self.rank).rev() {
            let row = &self.rows[i];
            let mut v = row.get(vars);
            for (j, &yj) in y.iter().enumerate().take(vars).skip(i + 1) {
                v ^= row.get(j) & yj;
            }
            y[i] = v;
        }
        let mut x = vec![false; vars];
        for (c, v) in y.into_iter().enumerate() {
            x[self.col_perm[c]] = v;
        }
        x
    }
}
