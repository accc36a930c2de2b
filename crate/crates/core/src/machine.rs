//! Simulation of the `n x m` SIMD processor array that triangularizes a
//! matrix using cyclic vertical row shifts and row-only broadcasts.
//!
//! Each iteration shifts every `tmp` row one processor row down (row `n`
//! wraps to row 1), then runs the compute schedule as a sequence of SIMD
//! phases. Each phase completes on all selected processors before the next
//! one starts, and every read inside a phase observes pre-phase values.
//! Row `i` only takes part once the shared counter reaches `i`.
//!
//! Rows stay in lockstep: a row whose diagonal processor sees a nonzero
//! entry locks the current `tmp` row into `f` and from then on reduces every
//! row that slides through it. After `2n - 1` iterations the `f` registers
//! hold an upper-triangular matrix row-equivalent to the input.

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::serial::{back_substitute, diagonal_determinant, DetValue, SerialError};

/// Environment variable that turns on the sliding-zeros check in the CLI.
pub const ASSERT_ENV: &str = "RIPPLE_GAUSS_ASSERT";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("matrix is {rows}x{cols} but the machine is {n}x{m}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        n: usize,
        m: usize,
    },
    #[error("bad machine shape {n}x{m}: need m >= n >= 1")]
    BadConfig { n: usize, m: usize },
    #[error("machine already ran all {0} iterations")]
    Finished(usize),
}

/// Registers of one processing element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PERegisters {
    pub tmp: Scalar,
    pub tmp2: Scalar,
    pub f: Scalar,
    pub cnt: usize,
    pub state: u8,
    pub state_changed: bool,
    row: usize,
    col: usize,
}

impl PERegisters {
    /// 1-based processor row (read-only).
    pub fn row(&self) -> usize {
        self.row
    }

    /// 1-based processor column (read-only).
    pub fn col(&self) -> usize {
        self.col
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachineConfig {
    pub n: usize,
    pub m: usize,
    pub field: FieldSpec,
    /// Attach `tmp`/`f` snapshots to trace records and keep them in the run result.
    pub trace: bool,
    /// Count violations of the sliding-zeros property after every shift.
    pub check_sliding_zeros: bool,
}

impl MachineConfig {
    pub fn new(n: usize, m: usize, field: FieldSpec) -> Self {
        MachineConfig {
            n,
            m,
            field,
            trace: false,
            check_sliding_zeros: false,
        }
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub fn with_sliding_zeros_check(mut self, check: bool) -> Self {
        self.check_sliding_zeros = check;
        self
    }

    /// Enables the sliding-zeros check when `RIPPLE_GAUSS_ASSERT=1`.
    pub fn with_env_assertions(self) -> Self {
        let on = std::env::var(ASSERT_ENV).is_ok_and(|v| v == "1");
        self.with_sliding_zeros_check(self.check_sliding_zeros || on)
    }

    /// Number of iterations a full run executes.
    pub fn iterations(&self) -> usize {
        2 * self.n - 1
    }
}

/// One record per executed iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub row_states: Vec<u8>,
    /// 1-based index of the input row whose descendant sits on processor row 1.
    pub origin_row_at_processor_row_1: usize,
    #[serde(rename = "tmp", skip_serializing_if = "Option::is_none")]
    pub tmp_snapshot: Option<Matrix>,
    #[serde(rename = "f", skip_serializing_if = "Option::is_none")]
    pub f_snapshot: Option<Matrix>,
    /// Sliding-zeros violations observed after this iteration's shift.
    #[serde(skip)]
    pub lemma_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub f_matrix: Matrix,
    pub locked: Vec<bool>,
    /// 1-based iteration at which each processor row locked.
    pub lock_iteration: Vec<Option<usize>>,
    pub iterations: usize,
    pub singular: bool,
    pub lemma_violations: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRecord>,
    #[serde(skip)]
    pub field: FieldSpec,
}

impl RunResult {
    /// Number of locked rows, i.e. the rank of the leading square block.
    pub fn rank(&self) -> usize {
        self.locked.iter().filter(|&&l| l).count()
    }

    /// Determinant of the first `n` columns, up to sign (row order is not tracked).
    pub fn determinant(&self) -> DetValue {
        diagonal_determinant(&self.f_matrix, self.f_matrix.rows(), &self.field, 1)
    }

    /// Solves the triangular system when the input was an `n x (n+1)` augmented matrix.
    pub fn solve(&self) -> Result<Vec<Scalar>, SerialError> {
        if self.singular {
            return Err(SerialError::Singular {
                rank: self.rank(),
                n: self.f_matrix.rows(),
            });
        }
        back_substitute(&self.f_matrix, &self.field)
    }
}

#[derive(Debug, Clone)]
pub struct Machine {
    grid: Vec<PERegisters>,
    /// 0-based input row each processor row's `tmp` contents descend from.
    origin: Vec<usize>,
    iteration: usize,
    lock_iteration: Vec<Option<usize>>,
    lemma_violations: usize,
    config: MachineConfig,
}

impl Machine {
    /// Places the matrix in the `tmp` registers and clears everything else.
    pub fn load(matrix: &Matrix, config: MachineConfig) -> Result<Self, MachineError> {
        let (n, m) = (config.n, config.m);
        if n == 0 || m < n {
            return Err(MachineError::BadConfig { n, m });
        }
        if matrix.rows() != n || matrix.cols() != m {
            return Err(MachineError::DimensionMismatch {
                rows: matrix.rows(),
                cols: matrix.cols(),
                n,
                m,
            });
        }
        let zero = config.field.zero();
        let mut grid = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                grid.push(PERegisters {
                    tmp: matrix[(i, j)],
                    tmp2: zero,
                    f: zero,
                    cnt: 0,
                    state: 0,
                    state_changed: false,
                    row: i + 1,
                    col: j + 1,
                });
            }
        }
        Ok(Machine {
            grid,
            origin: (0..n).collect(),
            iteration: 0,
            lock_iteration: vec![None; n],
            lemma_violations: 0,
            config,
        })
    }

    pub fn config(&self) -> &MachineConfig {
        &self.config
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// Registers of processor `(i, j)`, 0-based.
    pub fn pe(&self, i: usize, j: usize) -> &PERegisters {
        &self.grid[i * self.config.m + j]
    }

    pub fn grid(&self) -> &[PERegisters] {
        &self.grid
    }

    pub fn lemma_violations(&self) -> usize {
        self.lemma_violations
    }

    pub fn tmp_matrix(&self) -> Matrix {
        self.register_matrix(|pe| pe.tmp)
    }

    pub fn f_matrix(&self) -> Matrix {
        self.register_matrix(|pe| pe.f)
    }

    fn register_matrix(&self, read: impl Fn(&PERegisters) -> Scalar) -> Matrix {
        let rows = self
            .grid
            .chunks(self.config.m)
            .map(|row| row.iter().map(&read).collect())
            .collect();
        Matrix::from_rows(rows).expect("grid rows have equal length")
    }

    /// Moves every `tmp` value one processor row down, wrapping row `n` to row 1.
    /// All transfers happen simultaneously; no other register changes.
    pub fn shift_down(&mut self) {
        let m = self.config.m;
        let n = self.config.n;
        let incoming: Vec<Scalar> = (0..n * m)
            .map(|idx| {
                let (i, j) = (idx / m, idx % m);
                self.grid[((i + n - 1) % n) * m + j].tmp
            })
            .collect();
        for (pe, tmp) in self.grid.iter_mut().zip(incoming) {
            pe.tmp = tmp;
        }
        self.origin.rotate_right(1);
    }

    fn active(pe: &PERegisters) -> bool {
        pe.cnt >= pe.row
    }

    fn diag(&self, i: usize) -> usize {
        i * self.config.m + i
    }

    /// Executes one iteration of the shift-and-compute schedule.
    pub fn step(&mut self) -> Result<TraceRecord, MachineError> {
        let total = self.config.iterations();
        if self.iteration >= total {
            return Err(MachineError::Finished(total));
        }
        let spec = self.config.field;
        let (n, m) = (self.config.n, self.config.m);
        let t = self.iteration + 1;

        // P0: cyclic transfer
        self.shift_down();
        let violations = if self.config.check_sliding_zeros {
            self.sliding_zero_violations(t)
        } else {
            0
        };
        self.lemma_violations += violations;

        // P1: every processor increments its counter
        for pe in &mut self.grid {
            pe.cnt += 1;
        }

        // P2: locked diagonal processors compute and broadcast tmp2
        let mut bus: Vec<Option<Scalar>> = vec![None; n];
        for (i, slot) in bus.iter_mut().enumerate() {
            let d = self.diag(i);
            let pe = &mut self.grid[d];
            if pe.state == 1 && Self::active(pe) {
                pe.tmp2 = spec.div(pe.tmp, pe.f).expect("locked pivot is nonzero");
                *slot = Some(pe.tmp2);
            }
        }

        // P3: the rest of each locked row receives the broadcast
        for pe in &mut self.grid {
            if pe.row != pe.col && pe.state == 1 && Self::active(pe) {
                pe.tmp2 = bus[pe.row - 1].expect("diagonal processor broadcast");
            }
        }

        // P4: locked rows reduce the row they hold. The diagonal result
        // tmp - (tmp / f) * f is zero by construction and is stored exactly.
        for pe in &mut self.grid {
            if pe.state == 1 && Self::active(pe) {
                pe.tmp = if pe.row == pe.col {
                    spec.zero()
                } else {
                    spec.sub(pe.tmp, spec.mul(pe.tmp2, pe.f))
                };
            }
        }

        // P5 / P6: unlocked diagonal processors announce whether they can lock
        let mut announce: Vec<Option<bool>> = vec![None; n];
        for (i, slot) in announce.iter_mut().enumerate() {
            let d = self.diag(i);
            let pe = &mut self.grid[d];
            if pe.state == 0 && Self::active(pe) {
                let nonzero = !spec.is_zero(pe.tmp);
                if nonzero {
                    pe.state_changed = true;
                }
                *slot = Some(nonzero);
            }
        }

        // P7: the rest of each unlocked row receives the announcement
        for pe in &mut self.grid {
            if pe.row != pe.col && pe.state == 0 && Self::active(pe) {
                pe.state_changed = announce[pe.row - 1].expect("diagonal processor announced");
            }
        }

        // P8: announced rows lock the current tmp row into f
        for pe in &mut self.grid {
            if pe.state_changed && Self::active(pe) {
                pe.state = 1;
                pe.f = pe.tmp;
                pe.tmp = spec.zero();
                pe.state_changed = false;
            }
        }
        for i in 0..n {
            if self.lock_iteration[i].is_none() && self.grid[i * m].state == 1 {
                self.lock_iteration[i] = Some(t);
            }
        }

        self.iteration = t;
        debug_assert!(self.grid.iter().all(|pe| pe.cnt == t));
        Ok(TraceRecord {
            iteration: t,
            row_states: (0..n).map(|i| self.grid[i * m].state).collect(),
            origin_row_at_processor_row_1: self.origin[0] + 1,
            tmp_snapshot: self.config.trace.then(|| self.tmp_matrix()),
            f_snapshot: self.config.trace.then(|| self.f_matrix()),
            lemma_violations: violations,
        })
    }

    /// Entries `tmp(i, j)`, `j < i`, that are nonzero on rows with `t >= i`.
    fn sliding_zero_violations(&self, t: usize) -> usize {
        let spec = self.config.field;
        let m = self.config.m;
        (0..self.config.n.min(t))
            .map(|i| {
                (0..i)
                    .filter(|&j| !spec.is_zero(self.grid[i * m + j].tmp))
                    .count()
            })
            .sum()
    }

    /// Runs all `2n - 1` iterations and finalizes: processors still in state 0
    /// get `f = 0` and the run is flagged singular.
    pub fn run(mut self) -> RunResult {
        let mut trace = Vec::new();
        while self.iteration < self.config.iterations() {
            let record = self.step().expect("iteration budget checked");
            if self.config.trace {
                trace.push(record);
            }
        }
        let zero = self.config.field.zero();
        for pe in &mut self.grid {
            if pe.state == 0 {
                pe.f = zero;
            }
        }
        let m = self.config.m;
        let locked: Vec<bool> = (0..self.config.n)
            .map(|i| self.grid[i * m].state == 1)
            .collect();
        RunResult {
            f_matrix: self.f_matrix(),
            singular: locked.iter().any(|l| !l),
            locked,
            lock_iteration: self.lock_iteration,
            iterations: self.iteration,
            lemma_violations: self.lemma_violations,
            trace,
            field: self.config.field,
        }
    }
}

/// Loads `matrix` into a machine of matching shape and runs it to completion.
pub fn simulate(matrix: &Matrix, field: FieldSpec) -> Result<RunResult, MachineError> {
    let config = MachineConfig::new(matrix.rows(), matrix.cols(), field);
    Ok(Machine::load(matrix, config)?.run())
}
