//! Command-line front end. Every subcommand prints one key-sorted JSON
//! document.
//!
//! Exit codes: 0 on success, 1 when the answer is singular, infeasible or a
//! failed validation, 2 on usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bulbs::{
    self, BulbError, BulbGraph, GridSpec, Neighborhood, RowColInstance, DEFAULT_FREE_VAR_CAP,
};
use crate::field::{FieldSpec, Scalar};
use crate::machine::{Machine, MachineConfig, MachineError};
use crate::matrix::{Matrix, MatrixError};
use crate::recognition::{is_tree_of_cycles, GraphError, UGraph};
use crate::seq_count::{count_binary_decomp, count_dp, count_matpow, SeqError, Transition};
use crate::serial::DetValue;
use crate::validation::{run_campaign, CampaignConfig, Tolerances, ValidationError};
use crate::xor_max::{
    bit_width, max_xor_subarray_bounded_bits, max_xor_subset_basic_bits,
    max_xor_subset_incremental_bits, XorError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Xor(#[from] XorError),
    #[error(transparent)]
    Bulb(#[from] BulbError),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid JSON instance: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "ripple-gauss",
    version,
    about = "Row-broadcast Gaussian elimination simulator and GF(2) companions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the JSON result here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the array simulator on a matrix file.
    Simulate {
        /// Matrix file: `n m` header then n rows of m values.
        input: PathBuf,
        /// real, real:eps=<x>, gfp:<prime> or gf2.
        #[arg(long, default_value = "real")]
        field: FieldSpec,
        /// Include per-iteration snapshots.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cross-check the simulator against the serial eliminator on random systems.
    Validate {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
        #[arg(long, default_value_t = 20)]
        per_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "real")]
        field: FieldSpec,
        #[arg(long, default_value_t = -9, allow_hyphen_values = true)]
        entry_low: i64,
        #[arg(long, default_value_t = 9, allow_hyphen_values = true)]
        entry_high: i64,
        /// Relative tolerance on sorted solution values.
        #[arg(long, default_value_t = 1e-6)]
        solution_tol: f64,
        /// Absolute tolerance on log|det|.
        #[arg(long, default_value_t = 1e-6)]
        logdet_tol: f64,
        /// Skip the sliding-zeros check.
        #[arg(long)]
        no_lemma_check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Maximum xor over subsets of a list of integers.
    XorSubset {
        /// Whitespace-separated integers; standard input when omitted or `-`.
        input: Option<PathBuf>,
        /// Bit width; derived from the values when omitted.
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value_t = SubsetMethod::Incremental)]
        method: SubsetMethod,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Maximum xor over contiguous runs of a list of integers.
    XorSubarray {
        input: Option<PathBuf>,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long, default_value_t = 1)]
        min_len: usize,
        /// Defaults to the list length.
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Solve a light-bulb instance given as JSON.
    Bulbs {
        input: Option<PathBuf>,
        /// Solve grids with the general elimination solver.
        #[arg(long)]
        general: bool,
        /// Maximum number of free variables to enumerate.
        #[arg(long, default_value_t = DEFAULT_FREE_VAR_CAP)]
        free_var_cap: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Count sequences allowed by a transition matrix: `k M n` then k rows.
    Seqcount {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SeqMethod::Matpow)]
        method: SeqMethod,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide whether a graph (`n m` then `u v` lines) is a tree of cycles.
    Recognize {
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SubsetMethod {
    Basic,
    Incremental,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqMethod {
    Dp,
    Matpow,
    Binary,
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(s)
        }
    }
}

/// Whitespace-separated integers; lines starting with `#` are skipped.
fn parse_u64_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Input(format!("bad integer {t:?}")))
        })
        .collect()
}

fn emit(value: &Value, out: &OutputArgs) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn det_json(det: DetValue) -> Value {
    match det {
        DetValue::Real {
            log_abs,
            sign,
            zero,
        } => {
            if zero {
                json!({ "zero": true })
            } else {
                json!({ "log_abs": log_abs, "sign": sign, "zero": false })
            }
        }
        DetValue::Residue(r) => json!({ "residue": r, "zero": r == 0 }),
    }
}

/// Outcome of a successful computation.
enum Outcome {
    Ok,
    Negative,
}

fn simulate_cmd(
    input: &Path,
    field: FieldSpec,
    trace: bool,
    out: &OutputArgs,
) -> Result<Outcome, CliError> {
    let text = read_input(Some(input))?;
    let matrix = Matrix::parse(&text, &field)?;
    let config = MachineConfig::new(matrix.rows(), matrix.cols(), field)
        .with_trace(trace)
        .with_env_assertions();
    let run = Machine::load(&matrix, config)?.run();
    let mut value = serde_json::to_value(&run)?;
    let obj = value.as_object_mut().expect("run result is an object");
    obj.insert("field".into(), json!(field.to_string()));
    obj.insert("rank".into(), json!(run.rank()));
    if matrix.cols() >= matrix.rows() {
        obj.insert("determinant_up_to_sign".into(), det_json(run.determinant()));
    }
    if matrix.cols() == matrix.rows() + 1 && !run.singular {
        let solution: Vec<Scalar> = run.solve().map_err(|e| CliError::Input(e.to_string()))?;
        obj.insert("solution".into(), json!(solution));
    }
    emit(&value, out)?;
    Ok(if run.singular {
        Outcome::Negative
    } else {
        Outcome::Ok
    })
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum BulbInstance {
    Graph {
        n: usize,
        /// 1-based endpoints.
        edges: Vec<(usize, usize)>,
        initial: Vec<u8>,
        target: Vec<u8>,
        costs: Vec<f64>,
    },
    Grid {
        p: usize,
        q: usize,
        neighborhood: Neighborhood,
        initial: Vec<Vec<u8>>,
        target: Vec<Vec<u8>>,
        costs: Vec<Vec<f64>>,
    },
    Rowcol {
        m: usize,
        n: usize,
        initial: Vec<Vec<u8>>,
        target: Vec<Vec<u8>>,
        row_costs: Vec<f64>,
        col_costs: Vec<f64>,
    },
    PointToggle {
        m: usize,
        n: usize,
        initial: Vec<Vec<u8>>,
        target: Vec<Vec<u8>>,
    },
}

fn bits(v: &[u8]) -> Result<Vec<bool>, CliError> {
    v.iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(CliError::Input(format!("bulb state {other} is not 0 or 1"))),
        })
        .collect()
}

fn grid_bits(rows: &[Vec<u8>], cols: usize) -> Result<Vec<bool>, CliError> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(CliError::Input(format!(
            "grid row has {} entries, expected {cols}",
            r.len()
        )));
    }
    bits(&rows.concat())
}

fn bulbs_cmd(text: &str, general: bool, cap: usize, out: &OutputArgs) -> Result<Outcome, CliError> {
    let inst: BulbInstance = serde_json::from_str(text)?;
    let (value, feasible) = match inst {
        BulbInstance::Graph {
            n,
            edges,
            initial,
            target,
            costs,
        } => {
            let edges = edges
                .into_iter()
                .map(|(u, v)| match (u.checked_sub(1), v.checked_sub(1)) {
                    (Some(a), Some(b)) => Ok((a, b)),
                    _ => Err(CliError::Input("vertices are numbered from 1".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let g = BulbGraph::new(n, &edges, bits(&initial)?, bits(&target)?, costs)?;
            let s = bulbs::solve_graph(&g, cap)?;
            (serde_json::to_value(&s)?, s.feasible)
        }
        BulbInstance::Grid {
            p,
            q,
            neighborhood,
            initial,
            target,
            costs,
        } => {
            if let Some(r) = costs.iter().find(|r| r.len() != q) {
                return Err(CliError::Input(format!(
                    "cost row has {} entries, expected {q}",
                    r.len()
                )));
            }
            let grid = GridSpec::new(
                p,
                q,
                neighborhood,
                grid_bits(&initial, q)?,
                grid_bits(&target, q)?,
                costs.concat(),
            )?;
            let s = if general {
                bulbs::solve_graph(&grid.to_graph(), cap)?
            } else {
                bulbs::solve_grid(&grid)
            };
            (serde_json::to_value(&s)?, s.feasible)
        }
        BulbInstance::Rowcol {
            m,
            n,
            initial,
            target,
            row_costs,
            col_costs,
        } => {
            let inst = RowColInstance::new(
                m,
                n,
                grid_bits(&initial, n)?,
                grid_bits(&target, n)?,
                row_costs,
                col_costs,
            )?;
            let s = bulbs::solve_rowcol(&inst);
            (serde_json::to_value(&s)?, s.feasible)
        }
        BulbInstance::PointToggle {
            m,
            n,
            initial,
            target,
        } => {
            let inst = RowColInstance::unit(m, n, grid_bits(&initial, n)?, grid_bits(&target, n)?)?;
            let r = bulbs::solve_point_toggle(&inst);
            (serde_json::to_value(&r)?, r.feasible)
        }
    };
    emit(&value, out)?;
    Ok(if feasible {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

fn seqcount_cmd(text: &str, method: SeqMethod, out: &OutputArgs) -> Result<Outcome, CliError> {
    let nums = parse_u64_list(text)?;
    let [k, m, n] = nums
        .get(..3)
        .and_then(|h| <[u64; 3]>::try_from(h).ok())
        .ok_or_else(|| CliError::Input("expected header `k M n`".into()))?;
    let k = k as usize;
    let body = &nums[3..];
    if body.len() != k * k {
        return Err(CliError::Input(format!(
            "expected {} transition entries, found {}",
            k * k,
            body.len()
        )));
    }
    let rows: Vec<&[u64]> = body.chunks(k.max(1)).collect();
    let t = Transition::new(&rows)?;
    let (count, name) = match method {
        SeqMethod::Dp => (count_dp(&t, n, m)?, "dp"),
        SeqMethod::Matpow => (count_matpow(&t, n, m)?.value, "matpow"),
        SeqMethod::Binary => (count_binary_decomp(&t, n, m)?, "binary"),
    };
    emit(
        &json!({ "count": count, "method": name, "k": k, "modulus": m, "n": n }),
        out,
    )?;
    Ok(Outcome::Ok)
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Simulate {
            input,
            field,
            trace,
            out,
        } => simulate_cmd(&input, field, trace, &out),
        Command::Validate {
            n_min,
            n_max,
            per_size,
            seed,
            field,
            entry_low,
            entry_high,
            solution_tol,
            logdet_tol,
            no_lemma_check,
            out,
        } => {
            let config = CampaignConfig {
                n_min,
                n_max,
                per_size,
                seed,
                entry_low,
                entry_high,
                field,
                tolerances: Tolerances {
                    solution_rel: solution_tol,
                    logdet_abs: logdet_tol,
                },
                check_sliding_zeros: !no_lemma_check,
            };
            let summary = run_campaign(&config)?;
            emit(&serde_json::to_value(&summary)?, &out)?;
            Ok(if summary.all_passed() {
                Outcome::Ok
            } else {
                Outcome::Negative
            })
        }
        Command::XorSubset {
            input,
            bits,
            method,
            out,
        } => {
            let values = parse_u64_list(&read_input(input.as_deref())?)?;
            let b = bits.unwrap_or_else(|| bit_width(&values));
            let r = match method {
                SubsetMethod::Basic => max_xor_subset_basic_bits(&values, b)?,
                SubsetMethod::Incremental => max_xor_subset_incremental_bits(&values, b)?,
            };
            emit(&serde_json::to_value(&r)?, &out)?;
            Ok(Outcome::Ok)
        }
        Command::XorSubarray {
            input,
            bits,
            min_len,
            max_len,
            out,
        } => {
            let values = parse_u64_list(&read_input(input.as_deref())?)?;
            let b = bits.unwrap_or_else(|| bit_width(&values));
            let hi = max_len.unwrap_or(values.len());
            let r = max_xor_subarray_bounded_bits(&values, min_len, hi, b)?;
            emit(&serde_json::to_value(r)?, &out)?;
            Ok(Outcome::Ok)
        }
        Command::Bulbs {
            input,
            general,
            free_var_cap,
            out,
        } => bulbs_cmd(&read_input(input.as_deref())?, general, free_var_cap, &out),
        Command::Seqcount { input, method, out } => {
            seqcount_cmd(&read_input(input.as_deref())?, method, &out)
        }
        Command::Recognize { input, out } => {
            let g = UGraph::parse(&read_input(input.as_deref())?)?;
            let r = is_tree_of_cycles(&g);
            emit(&serde_json::to_value(&r)?, &out)?;
            Ok(Outcome::Ok)
        }
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                print!("{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            eprintln!("{line}");
            return 2;
        }
    };
    match execute(cli) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Negative) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
