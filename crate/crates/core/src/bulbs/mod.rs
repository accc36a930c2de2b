//! Light-bulb toggling: touching a bulb flips it and its neighbours.
//!
//! General graphs go through GF(2) elimination plus a free-variable search;
//! grids get elimination-free propagation solvers; the row/column variants
//! work on a matrix of bulbs.

mod graph;
mod grid;
mod rowcol;

pub use graph::{solve_graph, DEFAULT_FREE_VAR_CAP};
pub use grid::{
    solve_grid, solve_grid_all8, solve_grid_diagonal, solve_grid_orthogonal, GridSpec, Neighborhood,
};
pub use rowcol::{
    apply_point_ops, solve_point_toggle, solve_rowcol, PointToggleResult, RowColInstance,
    RowColSolution,
};

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BulbError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("cost {0} is negative or not a number")]
    BadCost(f64),
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("{free} free variables exceed the cap of {cap}")]
    FreeVarBudgetExceeded { free: usize, cap: usize },
}

/// Graph with a bulb on every vertex, initial and final states, and a
/// per-vertex touch cost.
#[derive(Debug, Clone, PartialEq)]
pub struct BulbGraph {
    adjacency: Vec<BTreeSet<usize>>,
    pub initial: Vec<bool>,
    pub target: Vec<bool>,
    pub costs: Vec<f64>,
}

impl BulbGraph {
    /// `edges` use 0-based vertex indices; duplicates are merged.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        initial: Vec<bool>,
        target: Vec<bool>,
        costs: Vec<f64>,
    ) -> Result<Self, BulbError> {
        for (what, got) in [
            ("initial", initial.len()),
            ("target", target.len()),
            ("costs", costs.len()),
        ] {
            if got != n {
                return Err(BulbError::LengthMismatch {
                    what,
                    got,
                    expected: n,
                });
            }
        }
        check_costs(&costs)?;
        let mut adjacency = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(BulbError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(BulbError::SelfLoop(u));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(BulbGraph {
            adjacency,
            initial,
            target,
            costs,
        })
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    /// States after touching every vertex with `x[v]` set.
    pub fn apply(&self, x: &[bool]) -> Vec<bool> {
        let mut state = self.initial.clone();
        for (v, _) in x.iter().enumerate().filter(|(_, &t)| t) {
            state[v] ^= true;
            for &w in &self.adjacency[v] {
                state[w] ^= true;
            }
        }
        state
    }

    pub fn cost_of(&self, x: &[bool]) -> f64 {
        cost_in_order(&self.costs, x)
    }
}

pub(crate) fn check_costs(costs: &[f64]) -> Result<(), BulbError> {
    match costs.iter().find(|c| c.is_nan() || **c < 0.0) {
        Some(&c) => Err(BulbError::BadCost(c)),
        None => Ok(()),
    }
}

pub(crate) fn cost_in_order(costs: &[f64], x: &[bool]) -> f64 {
    costs
        .iter()
        .zip(x)
        .filter(|(_, &t)| t)
        .map(|(c, _)| c)
        .sum()
}

/// `candidate` beats `best` on cost, then on lexicographically smaller `x`.
pub(crate) fn improves(cost: f64, x: &[bool], best: Option<(f64, &[bool])>) -> bool {
    match best {
        None => true,
        Some((bc, bx)) => cost < bc || (cost == bc && x < bx),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BulbSolution {
    pub feasible: bool,
    /// Touch decisions, one per vertex; empty when infeasible.
    pub x: Vec<bool>,
    pub cost: f64,
    /// Rank of the elimination system, when one was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivot_rank: Option<usize>,
}

impl BulbSolution {
    pub fn infeasible(pivot_rank: Option<usize>) -> Self {
        BulbSolution {
            feasible: false,
            x: Vec::new(),
            cost: 0.0,
            pivot_rank,
        }
    }
}
