use serde::Serialize;

use super::{bit_width, check_values, XorError};
use crate::gf2::{BitRow, Gf2Echelon};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XorMaxResult {
    pub xm: u64,
    /// `bits[i]` is bit `i` of `xm`.
    #[serde(skip)]
    pub bits: Vec<bool>,
    /// 1-based indices of the chosen values, ascending.
    pub subset: Vec<usize>,
    /// Word-level xor operations spent in elimination.
    #[serde(skip)]
    pub work: u64,
}

fn equation(values: &[u64], level: u32, target: bool) -> BitRow {
    let n = values.len();
    let mut row = BitRow::zeros(n + 1);
    for (q, v) in values.iter().enumerate() {
        if v >> level & 1 == 1 {
            row.set(q, true);
        }
    }
    row.set(n, target);
    row
}

fn finish(bits: Vec<bool>, solution: &[bool], work: u64) -> XorMaxResult {
    let xm = bits
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | (b as u64) << i);
    let subset = solution
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(q, _)| q + 1)
        .collect();
    XorMaxResult {
        xm,
        bits,
        subset,
        work,
    }
}

pub fn max_xor_subset_basic(values: &[u64]) -> XorMaxResult {
    max_xor_subset_basic_bits(values, bit_width(values)).expect("derived width fits")
}

/// Settles bits from the top down, re-eliminating the whole system of the
/// settled bits plus the candidate bit each time.
pub fn max_xor_subset_basic_bits(values: &[u64], bits: u32) -> Result<XorMaxResult, XorError> {
    check_values(values, bits)?;
    let n = values.len();
    let b = bits as usize;
    let mut bv = vec![false; b];
    let mut work = 0u64;
    for i in (0..bits).rev() {
        let rows: Vec<BitRow> = (i..bits)
            .rev()
            .map(|p| equation(values, p, if p > i { bv[p as usize] } else { true }))
            .collect();
        let e = Gf2Echelon::eliminate(rows, n + 1, 1);
        work += e.work;
        bv[i as usize] = e.is_consistent();
    }
    let rows: Vec<BitRow> = (0..bits)
        .rev()
        .map(|p| equation(values, p, bv[p as usize]))
        .collect();
    let e = Gf2Echelon::eliminate(rows, n + 1, 1);
    work += e.work;
    debug_assert!(e.is_consistent());
    Ok(finish(bv, &e.solve_free_zero(), work))
}

/// Row-echelon system grown by one equation per bit level.
///
/// Rows `0..pivot_count` carry a 1 on the diagonal and everything below a
/// diagonal is 0. The last column is the target and is never permuted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorEchelon {
    pub rows: Vec<BitRow>,
    /// Current column -> original 0-based value index.
    pub col_origin: Vec<usize>,
    pub pivot_count: usize,
    /// Bit level -> row currently holding that level's equation.
    pub added_row_index: Vec<Option<usize>>,
    row_level: Vec<u32>,
    pub work: u64,
}

impl XorEchelon {
    pub fn new(n: usize, bits: u32) -> Self {
        XorEchelon {
            rows: Vec::new(),
            col_origin: (0..n).collect(),
            pivot_count: 0,
            added_row_index: vec![None; bits as usize],
            row_level: Vec::new(),
            work: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.col_origin.len() + 1
    }

    /// Negates the target of the equation appended for `level`.
    pub fn flip_target(&mut self, level: u32) {
        let n = self.col_origin.len();
        if let Some(r) = self.added_row_index[level as usize] {
            self.rows[r].flip(n);
        }
    }

    /// Appends the equation "bit `level` of the chosen xor is 1" and restores
    /// echelon form. Returns whether the new row became a pivot row.
    pub fn push_level(&mut self, values: &[u64], level: u32) -> bool {
        let n = self.col_origin.len();
        let mut row = BitRow::zeros(n + 1);
        for (c, &orig) in self.col_origin.iter().enumerate() {
            if values[orig] >> level & 1 == 1 {
                row.set(c, true);
            }
        }
        row.set(n, true);
        for p in 0..self.pivot_count {
            if row.get(p) {
                row.xor_assign(&self.rows[p]);
                self.work += row.word_len() as u64;
            }
        }
        self.rows.push(row);
        self.row_level.push(level);
        let new = self.rows.len() - 1;
        self.added_row_index[level as usize] = Some(new);
        let Some(c) = self.rows[new].first_one_in(self.pivot_count, n) else {
            return false;
        };
        let q = self.pivot_count;
        if new != q {
            self.rows.swap(new, q);
            self.row_level.swap(new, q);
            self.added_row_index[self.row_level[new] as usize] = Some(new);
            self.added_row_index[self.row_level[q] as usize] = Some(q);
        }
        if c != q {
            for r in self.rows.iter_mut() {
                r.swap_bits(q, c);
            }
            self.col_origin.swap(q, c);
        }
        self.pivot_count += 1;
        true
    }

    /// Consistent iff no coefficient-free row demands a 1.
    pub fn is_feasible(&self) -> bool {
        let n = self.col_origin.len();
        self.rows[self.pivot_count..].iter().all(|r| !r.get(n))
    }

    pub fn check_invariants(&self) -> bool {
        let n = self.col_origin.len();
        let mut seen = vec![false; n];
        for &o in &self.col_origin {
            if o >= n || seen[o] {
                return false;
            }
            seen[o] = true;
        }
        self.rows.iter().enumerate().all(|(r, row)| {
            let diag_ok = r >= self.pivot_count || row.get(r);
            let below_ok = row.first_one_in(0, r.min(n)).is_none();
            let zero_row_ok = r < self.pivot_count || row.first_one_in(0, n).is_none();
            diag_ok && below_ok && zero_row_ok
        })
    }

    /// A solution in original value order with free variables at zero.
    pub fn solution(&self) -> Vec<bool> {
        let n = self.col_origin.len();
        let mut y = vec![false; n];
        for i in (0..self.pivot_count).rev() {
            let row = &self.rows[i];
            let mut v = row.get(n);
            let mut j = row.first_one_in(i + 1, n);
            while let Some(c) = j {
                v ^= y[c];
                j = row.first_one_in(c + 1, n);
            }
            y[i] = v;
        }
        let mut x = vec![false; n];
        for (c, v) in y.into_iter().enumerate() {
            x[self.col_origin[c]] = v;
        }
        x
    }
}

pub fn max_xor_subset_incremental(values: &[u64]) -> XorMaxResult {
    max_xor_subset_incremental_bits(values, bit_width(values)).expect("derived width fits")
}

/// Same answer as the basic method, keeping one echelon system and adding
/// one row per bit. A failed bit has its row's target flipped to 0 before
/// the next row is appended.
pub fn max_xor_subset_incremental_bits(
    values: &[u64],
    bits: u32,
) -> Result<XorMaxResult, XorError> {
    run_incremental(values, bits, |_| {})
}

pub(crate) fn run_incremental(
    values: &[u64],
    bits: u32,
    mut observe: impl FnMut(&XorEchelon),
) -> Result<XorMaxResult, XorError> {
    check_values(values, bits)?;
    let mut ech = XorEchelon::new(values.len(), bits);
    let mut bv = vec![false; bits as usize];
    for i in (0..bits).rev() {
        if i + 1 < bits && !bv[i as usize + 1] {
            ech.flip_target(i + 1);
        }
        ech.push_level(values, i);
        observe(&ech);
        bv[i as usize] = ech.is_feasible();
    }
    if !bv[0] {
        ech.flip_target(0);
    }
    debug_assert!(ech.is_feasible());
    Ok(finish(bv, &ech.solution(), ech.work))
}
