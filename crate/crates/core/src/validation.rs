//! Randomized cross-check of the array simulator against the serial eliminator.
//!
//! Each instance is a random `n x (n+1)` integer system with a nonsingular
//! leading block. Both pipelines triangularize it; the two triangular systems
//! must yield the same sorted solution values and the same determinant up to
//! sign.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::machine::{Machine, MachineConfig, MachineError, RunResult};
use crate::matrix::Matrix;
use crate::serial::{
    determinant, serial_gauss, solve_upper, DetValue, EliminationResult, PivotPolicy, SerialError,
};

/// Redraws allowed before giving up on a nonsingular draw.
pub const MAX_REDRAWS: usize = 1000;

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("no nonsingular {n}x{m} matrix after {MAX_REDRAWS} redraws from [{low}, {high}]")]
    GenerationExhausted {
        n: usize,
        m: usize,
        low: i64,
        high: i64,
    },
    #[error("parallel rank {parallel} disagrees with serial rank {serial} on singularity")]
    RankMismatch { parallel: usize, serial: usize },
    #[error("bad campaign configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Serial(#[from] SerialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Componentwise bound on `|a - b| / max(|a|, |b|, 1)` for sorted solutions.
    pub solution_rel: f64,
    /// Bound on `|ln|det_par| - ln|det_ser||`.
    pub logdet_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            solution_rel: 1e-6,
            logdet_abs: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub per_size: usize,
    pub seed: u64,
    pub entry_low: i64,
    pub entry_high: i64,
    pub field: FieldSpec,
    pub tolerances: Tolerances,
    pub check_sliding_zeros: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            n_min: 1,
            n_max: 50,
            per_size: 20,
            seed: 0,
            entry_low: -9,
            entry_high: 9,
            field: FieldSpec::real(),
            tolerances: Tolerances::default(),
            check_sliding_zeros: true,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.n_min < 1 {
            return Err(ValidationError::BadConfig(
                "n_min must be at least 1".into(),
            ));
        }
        if self.entry_low > self.entry_high {
            return Err(ValidationError::BadConfig(
                "entry_low exceeds entry_high".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub n: usize,
    pub seed_used: u64,
    pub solutions_match: bool,
    pub det_match: bool,
    /// False when the serial side swapped columns, which makes its
    /// first-`n`-columns determinant incomparable.
    pub det_compared: bool,
    /// Both sides agreed the system is singular.
    pub singular: bool,
    pub regenerations: usize,
    pub iterations: usize,
    pub lemma_violations: usize,
}

impl VerdictRecord {
    pub fn passed(&self) -> bool {
        self.solutions_match
            && self.det_match
            && self.iterations == 2 * self.n - 1
            && self.lemma_violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub pass: usize,
    pub fail: usize,
    pub regenerations: usize,
    pub det_skipped: usize,
    pub lemma_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub field: String,
    pub seed: u64,
    pub sizes: Vec<SizeSummary>,
    pub total_pass: usize,
    pub total_fail: usize,
    pub total_regenerations: usize,
    #[serde(skip)]
    pub records: Vec<VerdictRecord>,
}

impl CampaignSummary {
    pub fn all_passed(&self) -> bool {
        self.total_fail == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedMatrix {
    pub matrix: Matrix,
    /// Singular draws discarded before this one.
    pub regenerations: usize,
}

/// SplitMix64 finalizer; derives well-spread per-instance seeds.
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn leading_block_rank(matrix: &Matrix, spec: &FieldSpec) -> usize {
    let n = matrix.rows();
    let policy = PivotPolicy::swap_only_if_zero().protect_tail(matrix.cols() - n);
    serial_gauss(matrix, spec, policy).rank
}

/// Uniform integer entries in `[low, high]`, redrawn until the leading
/// `n x n` block is nonsingular. Deterministic in `seed`.
pub fn generate_matrix(
    n: usize,
    m: usize,
    seed: u64,
    low: i64,
    high: i64,
    spec: &FieldSpec,
) -> Result<GeneratedMatrix, ValidationError> {
    if n == 0 || m < n {
        return Err(ValidationError::BadConfig(format!("bad shape {n}x{m}")));
    }
    if low > high {
        return Err(ValidationError::BadConfig(
            "entry_low exceeds entry_high".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for regenerations in 0..=MAX_REDRAWS {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(low..=high)).collect())
            .collect();
        let matrix = Matrix::from_ints(&rows, spec);
        if leading_block_rank(&matrix, spec) == n {
            return Ok(GeneratedMatrix {
                matrix,
                regenerations,
            });
        }
    }
    Err(ValidationError::GenerationExhausted { n, m, low, high })
}

fn sorted_values(values: &[Scalar]) -> Vec<Scalar> {
    let mut indexed: Vec<(usize, Scalar)> = values.iter().copied().enumerate().collect();
    indexed.sort_by(|(ia, a), (ib, b)| match (a, b) {
        (Scalar::Real(x), Scalar::Real(y)) => x.total_cmp(y).then(ia.cmp(ib)),
        _ => a.residue().cmp(&b.residue()).then(ia.cmp(ib)),
    });
    indexed.into_iter().map(|(_, v)| v).collect()
}

fn solutions_agree(par: &[Scalar], ser: &[Scalar], tol: &Tolerances) -> bool {
    if par.len() != ser.len() {
        return false;
    }
    sorted_values(par)
        .iter()
        .zip(sorted_values(ser).iter())
        .all(|(a, b)| match (a, b) {
            (Scalar::Real(x), Scalar::Real(y)) => {
                (x - y).abs() <= tol.solution_rel * x.abs().max(y.abs()).max(1.0)
            }
            _ => a == b,
        })
}

fn determinants_agree(
    par: DetValue,
    ser: DetValue,
    modulus: Option<u64>,
    tol: &Tolerances,
) -> bool {
    match (par, ser) {
        (
            DetValue::Real {
                log_abs: a,
                zero: za,
                ..
            },
            DetValue::Real {
                log_abs: b,
                zero: zb,
                ..
            },
        ) => {
            if za || zb {
                return za == zb;
            }
            (a - b).abs() <= tol.logdet_abs
        }
        (DetValue::Residue(p), DetValue::Residue(s)) => {
            let m = modulus.expect("residue determinants come from an exact field");
            p == s || p == (m - s) % m
        }
        _ => false,
    }
}

/// Compares a parallel run and a serial elimination of the same `n x (n+1)` system.
pub fn compare_runs(
    par: &RunResult,
    ser: &EliminationResult,
    n: usize,
    tolerances: &Tolerances,
) -> Result<VerdictRecord, ValidationError> {
    let par_rank = par.rank();
    let ser_rank = ser.rank.min(n);
    let par_singular = par.singular;
    let ser_singular = ser_rank < n;
    let mut record = VerdictRecord {
        n,
        seed_used: 0,
        solutions_match: true,
        det_match: true,
        det_compared: true,
        singular: par_singular && ser_singular,
        regenerations: 0,
        iterations: par.iterations,
        lemma_violations: par.lemma_violations,
    };
    if par_singular != ser_singular {
        return Err(ValidationError::RankMismatch {
            parallel: par_rank,
            serial: ser_rank,
        });
    }
    if record.singular {
        return Ok(record);
    }
    let x_par = par.solve()?;
    let x_ser = solve_upper(ser)?;
    record.solutions_match = solutions_agree(&x_par, &x_ser, tolerances);
    if ser.col_swaps > 0 {
        record.det_compared = false;
    } else {
        record.det_match = determinants_agree(
            par.determinant(),
            determinant(ser, n),
            ser.field.modulus(),
            tolerances,
        );
    }
    Ok(record)
}

/// Runs one campaign instance: generation, both pipelines, comparison.
pub fn run_instance(
    config: &CampaignConfig,
    n: usize,
    index: usize,
) -> Result<VerdictRecord, ValidationError> {
    let seed_used = mix_seed(config.seed, n as u64, index as u64);
    let generated = generate_matrix(
        n,
        n + 1,
        seed_used,
        config.entry_low,
        config.entry_high,
        &config.field,
    )?;
    let machine_config = MachineConfig::new(n, n + 1, config.field)
        .with_sliding_zeros_check(config.check_sliding_zeros);
    let par = Machine::load(&generated.matrix, machine_config)?.run();
    let ser = serial_gauss(
        &generated.matrix,
        &config.field,
        PivotPolicy::swap_only_if_zero().protect_tail(1),
    );
    let mut record = compare_runs(&par, &ser, n, &config.tolerances)?;
    record.seed_used = seed_used;
    record.regenerations = generated.regenerations;
    Ok(record)
}

pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary, ValidationError> {
    config.validate()?;
    let mut summary = CampaignSummary {
        field: config.field.to_string(),
        seed: config.seed,
        sizes: Vec::new(),
        total_pass: 0,
        total_fail: 0,
        total_regenerations: 0,
        records: Vec::new(),
    };
    if config.per_size == 0 {
        return Ok(summary);
    }
    for n in config.n_min..=config.n_max {
        let mut size = SizeSummary {
            n,
            pass: 0,
            fail: 0,
            regenerations: 0,
            det_skipped: 0,
            lemma_violations: 0,
        };
        for index in 0..config.per_size {
            let record = run_instance(config, n, index)?;
            if record.passed() {
                size.pass += 1;
            } else {
                size.fail += 1;
            }
            size.regenerations += record.regenerations;
            size.det_skipped += usize::from(!record.det_compared);
            size.lemma_violations += record.lemma_violations;
            summary.records.push(record);
        }
        summary.total_pass += size.pass;
        summary.total_fail += size.fail;
        summary.total_regenerations += size.regenerations;
        summary.sizes.push(size);
    }
    Ok(summary)
}
