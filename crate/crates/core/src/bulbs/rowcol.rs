use serde::Serialize;

use super::{check_costs, cost_in_order, BulbError};

/// `m x n` bulb matrix (row-major) where a whole row or a whole column is
/// toggled at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct RowColInstance {
    pub m: usize,
    pub n: usize,
    pub initial: Vec<bool>,
    pub target: Vec<bool>,
    pub row_costs: Vec<f64>,
    pub col_costs: Vec<f64>,
}

impl RowColInstance {
    pub fn new(
        m: usize,
        n: usize,
        initial: Vec<bool>,
        target: Vec<bool>,
        row_costs: Vec<f64>,
        col_costs: Vec<f64>,
    ) -> Result<Self, BulbError> {
        if m == 0 || n == 0 {
            return Err(BulbError::EmptyGrid);
        }
        for (what, got, expected) in [
            ("initial", initial.len(), m * n),
            ("target", target.len(), m * n),
            ("row_costs", row_costs.len(), m),
            ("col_costs", col_costs.len(), n),
        ] {
            if got != expected {
                return Err(BulbError::LengthMismatch {
                    what,
                    got,
                    expected,
                });
            }
        }
        check_costs(&row_costs)?;
        check_costs(&col_costs)?;
        Ok(RowColInstance {
            m,
            n,
            initial,
            target,
            row_costs,
            col_costs,
        })
    }

    /// Unit costs everywhere.
    pub fn unit(
        m: usize,
        n: usize,
        initial: Vec<bool>,
        target: Vec<bool>,
    ) -> Result<Self, BulbError> {
        Self::new(m, n, initial, target, vec![1.0; m], vec![1.0; n])
    }

    fn diff(&self, i: usize, j: usize) -> bool {
        self.initial[i * self.n + j] != self.target[i * self.n + j]
    }

    /// The toggle pattern with `rows[0] == first_row`, if it reaches the
    /// target.
    fn candidate(&self, first_row: bool) -> Option<(Vec<bool>, Vec<bool>)> {
        let cols: Vec<bool> = (0..self.n).map(|j| self.diff(0, j) ^ first_row).collect();
        let rows: Vec<bool> = (0..self.m).map(|i| self.diff(i, 0) ^ cols[0]).collect();
        let ok = (0..self.m).all(|i| (0..self.n).all(|j| rows[i] ^ cols[j] == self.diff(i, j)));
        ok.then_some((rows, cols))
    }

    pub fn apply(&self, rows: &[bool], cols: &[bool]) -> Vec<bool> {
        (0..self.m * self.n)
            .map(|v| self.initial[v] ^ rows[v / self.n] ^ cols[v % self.n])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowColSolution {
    pub feasible: bool,
    pub cost: f64,
    pub rows: Vec<bool>,
    pub cols: Vec<bool>,
}

/// Cheaper of the two candidates; ties keep the one leaving row 1 alone.
pub fn solve_rowcol(inst: &RowColInstance) -> RowColSolution {
    let mut best: Option<RowColSolution> = None;
    for first in [false, true] {
        let Some((rows, cols)) = inst.candidate(first) else {
            continue;
        };
        let cost = cost_in_order(&inst.row_costs, &rows) + cost_in_order(&inst.col_costs, &cols);
        if best.as_ref().is_none_or(|b| cost < b.cost) {
            best = Some(RowColSolution {
                feasible: true,
                cost,
                rows,
                cols,
            });
        }
    }
    best.unwrap_or(RowColSolution {
        feasible: false,
        cost: 0.0,
        rows: Vec::new(),
        cols: Vec::new(),
    })
}

/// Operations `(i, j)` (1-based) each toggling row `i` and column `j`
/// except their shared cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointToggleResult {
    pub feasible: bool,
    pub count: usize,
    pub operations: Vec<(usize, usize)>,
    #[serde(skip)]
    pub rows_toggled: usize,
    #[serde(skip)]
    pub cols_toggled: usize,
}

/// Pairs toggled rows with toggled columns; surplus rows go with column 1
/// and surplus columns with row 1, which needs the surplus to be even.
pub fn solve_point_toggle(inst: &RowColInstance) -> PointToggleResult {
    let mut best: Option<PointToggleResult> = None;
    for first in [false, true] {
        let Some((rows, cols)) = inst.candidate(first) else {
            continue;
        };
        let lr: Vec<usize> = (0..inst.m).filter(|&i| rows[i]).map(|i| i + 1).collect();
        let lc: Vec<usize> = (0..inst.n).filter(|&j| cols[j]).map(|j| j + 1).collect();
        let (nl, nc) = (lr.len(), lc.len());
        if nl % 2 != nc % 2 {
            continue;
        }
        let k = nl.min(nc);
        let mut operations: Vec<(usize, usize)> =
            lr.iter().copied().zip(lc.iter().copied()).collect();
        operations.extend(lr[k..].iter().map(|&i| (i, 1)));
        operations.extend(lc[k..].iter().map(|&j| (1, j)));
        let count = operations.len();
        if best.as_ref().is_none_or(|b| count < b.count) {
            best = Some(PointToggleResult {
                feasible: true,
                count,
                operations,
                rows_toggled: nl,
                cols_toggled: nc,
            });
        }
    }
    best.unwrap_or(PointToggleResult {
        feasible: false,
        count: 0,
        operations: Vec::new(),
        rows_toggled: 0,
        cols_toggled: 0,
    })
}

/// States after applying point operations given as 1-based cells.
pub fn apply_point_ops(inst: &RowColInstance, ops: &[(usize, usize)]) -> Vec<bool> {
    let mut state = inst.initial.clone();
    for &(r, c) in ops {
        for j in 0..inst.n {
            state[(r - 1) * inst.n + j] ^= true;
        }
        for i in 0..inst.m {
            state[i * inst.n + c - 1] ^= true;
        }
    }
    state
}
