//! Dense row-major matrices of [`Scalar`]s and the plain-text matrix format.
//!
//! The text format: optional `#` comment lines, a first data line `n m`,
//! then `n` rows of `m` whitespace-separated values.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("expected {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    DimensionMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("matrix text: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn filled(rows: usize, cols: usize, value: Scalar) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros(rows: usize, cols: usize, spec: &FieldSpec) -> Self {
        Self::filled(rows, cols, spec.zero())
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix from integer rows, loaded into `spec`.
    ///
    /// Panics on ragged input; meant for literals and generated data.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], spec: &FieldSpec) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| spec.from_int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_reals<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Scalar::Real(v)).collect())
            .collect();
        Self::from_rows(rows).expect("ragged real matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Copy of the leading `rows x cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Matrix {
        let rows_data = (0..rows).map(|i| self.row(i)[..cols].to_vec()).collect();
        Matrix::from_rows(rows_data).expect("block of a rectangular matrix")
    }

    /// Parses the plain-text matrix format.
    pub fn parse(text: &str, spec: &FieldSpec) -> Result<Self, MatrixError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| MatrixError::Format("missing `n m` header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| MatrixError::Format(format!("bad header `{header}`")))?;
        let [n, m] = dims[..] else {
            return Err(MatrixError::Format(format!("bad header `{header}`")));
        };
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            if i >= n {
                return Err(MatrixError::Format(format!("more than {n} data rows")));
            }
            let row = line
                .split_whitespace()
                .map(|t| spec.parse_value(t))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != m {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    len: row.len(),
                    expected: m,
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(MatrixError::Format(format!(
                "expected {n} data rows, found {}",
                rows.len()
            )));
        }
        let mut matrix = Matrix::from_rows(rows)?;
        // `from_rows` cannot know the width of an empty matrix
        matrix.cols = m;
        Ok(matrix)
    }

    /// Renders the plain-text matrix format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}
