//! Row-broadcast Gaussian elimination on a simulated 2D SIMD processor array,
//! together with the serial reference eliminator and a set of GF(2) and
//! modular companion algorithms.

pub mod bulbs;
pub mod cli;
pub mod field;
pub mod gf2;
pub mod machine;
pub mod matrix;
pub mod recognition;
pub mod seq_count;
pub mod serial;
pub mod validation;
pub mod xor_max;

pub use field::{mod_inverse, FieldError, FieldOp, FieldSpec, Scalar};
pub use machine::{simulate, Machine, MachineConfig, MachineError, RunResult, TraceRecord};
pub use matrix::{Matrix, MatrixError};
pub use serial::{serial_gauss, DetValue, EliminationResult, PivotPolicy, PivotRule};
