//! Serial Gaussian elimination with configurable pivoting.
//!
//! This is the reference the array simulator is checked against, and the
//! GF(2) engine behind the general light-bulb solver.

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerialError {
    #[error("system is singular (rank {rank} < {n})")]
    Singular { rank: usize, n: usize },
    #[error("the right-hand side column was moved by a column swap")]
    RhsMoved,
    #[error("expected an n x (n+1) augmented matrix, got {rows}x{cols}")]
    NotAugmented { rows: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    /// Largest magnitude in the remaining block. For exact fields: the first
    /// nonzero entry of a column-major scan.
    MaxAbs,
    /// Keep the diagonal entry unless it is zero; then search down the
    /// column, then across the remaining columns.
    SwapOnlyIfZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotPolicy {
    pub rule: PivotRule,
    /// Columns at the right end that never take part in column swaps.
    pub protected_tail_columns: usize,
}

impl PivotPolicy {
    pub fn max_abs() -> Self {
        PivotPolicy {
            rule: PivotRule::MaxAbs,
            protected_tail_columns: 0,
        }
    }

    pub fn swap_only_if_zero() -> Self {
        PivotPolicy {
            rule: PivotRule::SwapOnlyIfZero,
            protected_tail_columns: 0,
        }
    }

    pub fn protect_tail(mut self, columns: usize) -> Self {
        self.protected_tail_columns = columns;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EliminationResult {
    /// The upper-triangular result, in permuted row and column order.
    pub matrix: Matrix,
    /// `row_perm[i]` is the input row now stored at row `i`.
    pub row_perm: Vec<usize>,
    /// `col_perm[c]` is the input column now stored at column `c`.
    pub col_perm: Vec<usize>,
    pub swap_sign: i8,
    pub row_swaps: usize,
    pub col_swaps: usize,
    pub rank: usize,
    pub field: FieldSpec,
}

/// Determinant of a triangular matrix, restricted to its leading square block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DetValue {
    /// `log_abs` is the sum of `ln |d_ii|`; `NEG_INFINITY` and sign 0 when `zero`.
    Real {
        log_abs: f64,
        sign: i8,
        zero: bool,
    },
    Residue(u64),
}

impl DetValue {
    pub fn is_zero(&self) -> bool {
        match *self {
            DetValue::Real { zero, .. } => zero,
            DetValue::Residue(r) => r == 0,
        }
    }
}

/// Product of the first `n` diagonal entries, times `sign`.
pub fn diagonal_determinant(matrix: &Matrix, n: usize, spec: &FieldSpec, sign: i8) -> DetValue {
    match spec.modulus() {
        None => {
            let mut log_abs = 0.0;
            let mut det_sign = sign;
            let mut zero = false;
            for i in 0..n {
                let d = matrix[(i, i)];
                if spec.is_zero(d) {
                    zero = true;
                    break;
                }
                let v = d.as_f64();
                log_abs += v.abs().ln();
                if v < 0.0 {
                    det_sign = -det_sign;
                }
            }
            if zero {
                DetValue::Real {
                    log_abs: f64::NEG_INFINITY,
                    sign: 0,
                    zero,
                }
            } else {
                DetValue::Real {
                    log_abs,
                    sign: det_sign,
                    zero,
                }
            }
        }
        Some(m) => {
            let mut acc = spec.one();
            for i in 0..n {
                acc = spec.mul(acc, matrix[(i, i)]);
            }
            let r = acc.residue();
            DetValue::Residue(if sign < 0 { (m - r) % m } else { r })
        }
    }
}

/// Back substitution on an upper-triangular `n x (n+1)` augmented matrix.
pub fn back_substitute(upper: &Matrix, spec: &FieldSpec) -> Result<Vec<Scalar>, SerialError> {
    let n = upper.rows();
    if upper.cols() != n + 1 {
        return Err(SerialError::NotAugmented {
            rows: n,
            cols: upper.cols(),
        });
    }
    let mut x = vec![spec.zero(); n];
    for i in (0..n).rev() {
        let mut rhs = upper[(i, n)];
        for j in i + 1..n {
            rhs = spec.sub(rhs, spec.mul(upper[(i, j)], x[j]));
        }
        x[i] = spec
            .div(rhs, upper[(i, i)])
            .map_err(|_| SerialError::Singular {
                rank: (0..n).filter(|&k| !spec.is_zero(upper[(k, k)])).count(),
                n,
            })?;
    }
    Ok(x)
}

fn find_pivot(
    a: &Matrix,
    i: usize,
    limit: usize,
    spec: &FieldSpec,
    rule: PivotRule,
) -> Option<(usize, usize)> {
    let n = a.rows();
    let nonzero = |r: usize, c: usize| !spec.is_zero(a[(r, c)]);
    match rule {
        PivotRule::MaxAbs if !spec.is_exact() => {
            let mut best: Option<(usize, usize, f64)> = None;
            for r in i..n {
                for c in i..limit {
                    let v = a[(r, c)].as_f64().abs();
                    if nonzero(r, c) && best.is_none_or(|(_, _, b)| v > b) {
                        best = Some((r, c, v));
                    }
                }
            }
            best.map(|(r, c, _)| (r, c))
        }
        PivotRule::MaxAbs => (i..limit)
            .flat_map(|c| (i..n).map(move |r| (r, c)))
            .find(|&(r, c)| nonzero(r, c)),
        PivotRule::SwapOnlyIfZero => {
            if nonzero(i, i) {
                return Some((i, i));
            }
            (i..limit)
                .flat_map(|c| (i..n).map(move |r| (r, c)))
                .find(|&(r, c)| nonzero(r, c))
        }
    }
}

/// Serial elimination to upper-triangular form.
///
/// Runs the search-and-swap stage followed by the reduction stage for each
/// diagonal position. When the remaining searchable block holds no nonzero
/// entry the loop stops; the rows below are left as they are and `rank`
/// counts the pivots found so far.
pub fn serial_gauss(matrix: &Matrix, spec: &FieldSpec, policy: PivotPolicy) -> EliminationResult {
    let mut a = matrix.clone();
    let (n, m) = (a.rows(), a.cols());
    let limit = m.saturating_sub(policy.protected_tail_columns);
    let mut row_perm: Vec<usize> = (0..n).collect();
    let mut col_perm: Vec<usize> = (0..m).collect();
    let (mut row_swaps, mut col_swaps, mut rank) = (0, 0, 0);

    for i in 0..n.min(limit) {
        let Some((r, c)) = find_pivot(&a, i, limit, spec, policy.rule) else {
            break;
        };
        if r != i {
            a.swap_rows(i, r);
            row_perm.swap(i, r);
            row_swaps += 1;
        }
        if c != i {
            a.swap_cols(i, c);
            col_perm.swap(i, c);
            col_swaps += 1;
        }
        let pivot = a[(i, i)];
        for j in i + 1..n {
            let v_aux = spec.div(a[(j, i)], pivot).expect("pivot is nonzero");
            for k in i..m {
                a[(j, k)] = spec.sub(a[(j, k)], spec.mul(v_aux, a[(i, k)]));
            }
        }
        rank += 1;
    }

    EliminationResult {
        matrix: a,
        row_perm,
        col_perm,
        swap_sign: if (row_swaps + col_swaps) % 2 == 0 {
            1
        } else {
            -1
        },
        row_swaps,
        col_swaps,
        rank,
        field: *spec,
    }
}

/// Determinant of the leading `n x n` block of the eliminated matrix.
pub fn determinant(result: &EliminationResult, n: usize) -> DetValue {
    diagonal_determinant(&result.matrix, n, &result.field, result.swap_sign)
}

/// Solves an eliminated `n x (n+1)` augmented system, reporting variables in
/// their original order.
pub fn solve_upper(result: &EliminationResult) -> Result<Vec<Scalar>, SerialError> {
    let n = result.matrix.rows();
    if result.matrix.cols() != n + 1 {
        return Err(SerialError::NotAugmented {
            rows: n,
            cols: result.matrix.cols(),
        });
    }
    if result.rank < n {
        return Err(SerialError::Singular {
            rank: result.rank,
            n,
        });
    }
    if result.col_perm[n] != n {
        return Err(SerialError::RhsMoved);
    }
    let y = back_substitute(&result.matrix, &result.field)?;
    let mut x = vec![result.field.zero(); n];
    for (c, v) in y.into_iter().enumerate() {
        x[result.col_perm[c]] = v;
    }
    Ok(x)
}

/// True when every row past the rank has a zero right-hand side, i.e. the
/// eliminated augmented system (last column protected) has a solution.
pub fn is_consistent(result: &EliminationResult) -> bool {
    let m = result.matrix.cols();
    (result.rank..result.matrix.rows()).all(|r| result.field.is_zero(result.matrix[(r, m - 1)]))
}

/// Solution of an eliminated augmented system with `rank` bound variables,
/// where the variables in permuted columns `rank..` take the `free` values.
/// The result is in original variable order.
///
/// Panics if `free.len()` does not match the number of free variables.
pub fn solve_with_free(result: &EliminationResult, free: &[Scalar]) -> Vec<Scalar> {
    let spec = &result.field;
    let a = &result.matrix;
    let vars = a.cols() - 1;
    let rank = result.rank;
    assert_eq!(free.len(), vars - rank, "one value per free variable");
    let mut y = vec![spec.zero(); vars];
    y[rank..].copy_from_slice(free);
    for i in (0..rank).rev() {
        let mut rhs = a[(i, vars)];
        for j in i + 1..vars {
            rhs = spec.sub(rhs, spec.mul(a[(i, j)], y[j]));
        }
        y[i] = spec.div(rhs, a[(i, i)]).expect("bound pivots are nonzero");
    }
    let mut x = vec![spec.zero(); vars];
    for (c, v) in y.into_iter().enumerate() {
        x[result.col_perm[c]] = v;
    }
    x
}
