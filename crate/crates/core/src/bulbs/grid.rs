use serde::{Deserialize, Serialize};

use super::{check_costs, cost_in_order, improves, BulbError, BulbGraph, BulbSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighborhood {
    /// North, south, east, west.
    Orthogonal4,
    /// The four diagonal cells.
    Diagonal4,
    /// All eight surrounding cells.
    All8,
}

/// `p x q` grid of bulbs; vectors are row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub p: usize,
    pub q: usize,
    pub neighborhood: Neighborhood,
    pub initial: Vec<bool>,
    pub target: Vec<bool>,
    pub costs: Vec<f64>,
}

impl GridSpec {
    pub fn new(
        p: usize,
        q: usize,
        neighborhood: Neighborhood,
        initial: Vec<bool>,
        target: Vec<bool>,
        costs: Vec<f64>,
    ) -> Result<Self, BulbError> {
        if p == 0 || q == 0 {
            return Err(BulbError::EmptyGrid);
        }
        for (what, got) in [
            ("initial", initial.len()),
            ("target", target.len()),
            ("costs", costs.len()),
        ] {
            if got != p * q {
                return Err(BulbError::LengthMismatch {
                    what,
                    got,
                    expected: p * q,
                });
            }
        }
        check_costs(&costs)?;
        Ok(GridSpec {
            p,
            q,
            neighborhood,
            initial,
            target,
            costs,
        })
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.q + j
    }

    pub fn neighbors(&self, i: usize, j: usize) -> Vec<usize> {
        let offsets: &[(isize, isize)] = match self.neighborhood {
            Neighborhood::Orthogonal4 => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
            Neighborhood::Diagonal4 => &[(-1, -1), (-1, 1), (1, -1), (1, 1)],
            Neighborhood::All8 => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        };
        offsets
            .iter()
            .filter_map(|&(di, dj)| {
                let a = i.checked_add_signed(di)?;
                let b = j.checked_add_signed(dj)?;
                (a < self.p && b < self.q).then(|| self.index(a, b))
            })
            .collect()
    }

    /// The same instance as a general graph, vertices numbered row-major.
    pub fn to_graph(&self) -> BulbGraph {
        let mut edges = Vec::new();
        for i in 0..self.p {
            for j in 0..self.q {
                let v = self.index(i, j);
                edges.extend(
                    self.neighbors(i, j)
                        .into_iter()
                        .filter(|&w| w > v)
                        .map(|w| (v, w)),
                );
            }
        }
        BulbGraph::new(
            self.p * self.q,
            &edges,
            self.initial.clone(),
            self.target.clone(),
            self.costs.clone(),
        )
        .expect("grid yields a valid graph")
    }
}

/// Enumerates every assignment of `seeds`, forces the rest along
/// `schedule` (vertex, forcing neighbour), and keeps the cheapest
/// assignment that satisfies every vertex in `cells`. Vertices outside
/// `cells` stay untouched.
struct Propagation<'a> {
    grid: &'a GridSpec,
    adjacency: Vec<Vec<usize>>,
    need: Vec<bool>,
}

impl<'a> Propagation<'a> {
    fn new(grid: &'a GridSpec) -> Self {
        let adjacency = (0..grid.p)
            .flat_map(|i| (0..grid.q).map(move |j| (i, j)))
            .map(|(i, j)| grid.neighbors(i, j))
            .collect();
        let need = grid
            .initial
            .iter()
            .zip(&grid.target)
            .map(|(a, b)| a ^ b)
            .collect();
        Propagation {
            grid,
            adjacency,
            need,
        }
    }

    fn flips(&self, x: &[bool], v: usize) -> bool {
        self.adjacency[v].iter().fold(x[v], |acc, &w| acc ^ x[w])
    }

    fn search(
        &self,
        seeds: &[usize],
        schedule: &[(usize, usize)],
        cells: &[usize],
    ) -> Option<Vec<bool>> {
        let n = self.grid.p * self.grid.q;
        let mut best: Option<(f64, Vec<bool>)> = None;
        let mut x = vec![false; n];
        for mask in 0u64..1 << seeds.len() {
            for (k, &s) in seeds.iter().enumerate() {
                x[s] = mask >> k & 1 == 1;
            }
            for &(v, f) in schedule {
                x[v] = false;
                x[v] = self.flips(&x, f) != self.need[f];
            }
            if cells.iter().any(|&v| self.flips(&x, v) != self.need[v]) {
                continue;
            }
            let cost = cells
                .iter()
                .filter(|&&v| x[v])
                .map(|&v| self.grid.costs[v])
                .sum();
            if improves(cost, &x, best.as_ref().map(|(c, bx)| (*c, bx.as_slice()))) {
                best = Some((cost, x.clone()));
            }
        }
        best.map(|(_, x)| x)
    }
}

fn finish(grid: &GridSpec, x: Option<Vec<bool>>) -> BulbSolution {
    match x {
        Some(x) => BulbSolution {
            feasible: true,
            cost: cost_in_order(&grid.costs, &x),
            x,
            pivot_rank: None,
        },
        None => BulbSolution::infeasible(None),
    }
}

fn all_cells(grid: &GridSpec) -> Vec<usize> {
    (0..grid.p * grid.q).collect()
}

/// Enumerates the shorter boundary line (first row, or first column when
/// the grid is wider than tall) and forces each next line from the previous.
pub fn solve_grid_orthogonal(grid: &GridSpec) -> BulbSolution {
    let prop = Propagation::new(grid);
    let (p, q) = (grid.p, grid.q);
    let (seeds, schedule): (Vec<usize>, Vec<(usize, usize)>) = if q <= p {
        (
            (0..q).map(|j| grid.index(0, j)).collect(),
            (1..p)
                .flat_map(|i| (0..q).map(move |j| (i, j)))
                .map(|(i, j)| (grid.index(i, j), grid.index(i - 1, j)))
                .collect(),
        )
    } else {
        (
            (0..p).map(|i| grid.index(i, 0)).collect(),
            (1..q)
                .flat_map(|j| (0..p).map(move |i| (i, j)))
                .map(|(i, j)| (grid.index(i, j), grid.index(i, j - 1)))
                .collect(),
        )
    };
    finish(grid, prop.search(&seeds, &schedule, &all_cells(grid)))
}

/// Cells with `min(i, j) == g` in visiting order: down column `g`, then
/// along row `g`.
fn group(grid: &GridSpec, g: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    (g..grid.p)
        .map(move |i| (i, g))
        .chain((g + 1..grid.q).map(move |j| (g, j)))
}

/// Enumerates row 1 plus column 1; every later cell is forced by its
/// north-west neighbour.
pub fn solve_grid_all8(grid: &GridSpec) -> BulbSolution {
    let prop = Propagation::new(grid);
    let seeds: Vec<usize> = group(grid, 0).map(|(i, j)| grid.index(i, j)).collect();
    let schedule: Vec<(usize, usize)> = (1..grid.p.min(grid.q))
        .flat_map(|g| group(grid, g))
        .map(|(i, j)| (grid.index(i, j), grid.index(i - 1, j - 1)))
        .collect();
    finish(grid, prop.search(&seeds, &schedule, &all_cells(grid)))
}

/// The two colour classes (`i + j` even / odd) never interact; each is
/// solved on its own from its cells on row 1 and column 1.
pub fn solve_grid_diagonal(grid: &GridSpec) -> BulbSolution {
    let n = grid.p * grid.q;
    if grid.p.min(grid.q) == 1 {
        let x: Vec<bool> = (0..n).map(|v| grid.initial[v] != grid.target[v]).collect();
        return finish(grid, Some(x));
    }
    let prop = Propagation::new(grid);
    let mut x = vec![false; n];
    for colour in 0..2 {
        let in_class = |&(i, j): &(usize, usize)| (i + j) % 2 == colour;
        let seeds: Vec<usize> = group(grid, 0)
            .filter(in_class)
            .map(|(i, j)| grid.index(i, j))
            .collect();
        let schedule: Vec<(usize, usize)> = (1..grid.p.min(grid.q))
            .flat_map(|g| group(grid, g))
            .filter(in_class)
            .map(|(i, j)| (grid.index(i, j), grid.index(i - 1, j - 1)))
            .collect();
        let cells: Vec<usize> = (0..n)
            .filter(|&v| (v / grid.q + v % grid.q) % 2 == colour)
            .collect();
        match prop.search(&seeds, &schedule, &cells) {
            Some(part) => {
                for v in cells {
                    x[v] = part[v];
                }
            }
            None => return BulbSolution::infeasible(None),
        }
    }
    finish(grid, Some(x))
}

pub fn solve_grid(grid: &GridSpec) -> BulbSolution {
    match grid.neighborhood {
        Neighborhood::Orthogonal4 => solve_grid_orthogonal(grid),
        Neighborhood::Diagonal4 => solve_grid_diagonal(grid),
        Neighborhood::All8 => solve_grid_all8(grid),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bulbs::solve_graph;
    use proptest::prelude::*;

    fn grid(
        p: usize,
        q: usize,
        nb: Neighborhood,
        init: &[u8],
        tgt: &[u8],
        costs: &[u8],
    ) -> GridSpec {
        let b = |v: &[u8]| v.iter().map(|&c| c == 1).collect();
        GridSpec::new(
            p,
            q,
            nb,
            b(init),
            b(tgt),
            costs.iter().map(|&c| c as f64).collect(),
        )
        .unwrap()
    }

    const ALL: [Neighborhood; 3] = [
        Neighborhood::Orthogonal4,
        Neighborhood::Diagonal4,
        Neighborhood::All8,
    ];

    #[test]
    fn one_by_one() {
        for nb in ALL {
            let g = grid(1, 1, nb, &[0], &[1], &[3]);
            let s = solve_grid(&g);
            assert_eq!((s.feasible, s.cost, s.x), (true, 3.0, vec![true]));
        }
    }

    #[test]
    fn orthogonal_one_by_two_infeasible() {
        let g = grid(1, 2, Neighborhood::Orthogonal4, &[0, 0], &[1, 0], &[1, 1]);
        assert!(!solve_grid_orthogonal(&g).feasible);
        assert!(!solve_graph(&g.to_graph(), 20).unwrap().feasible);
    }

    #[test]
    fn diagonal_two_by_two_is_two_edges() {
        let g = grid(
            2,
            2,
            Neighborhood::Diagonal4,
            &[0; 4],
            &[1; 4],
            &[1, 2, 3, 4],
        );
        let graph = g.to_graph();
        assert_eq!(
            graph.neighbors(0).iter().copied().collect::<Vec<_>>(),
            vec![3]
        );
        assert_eq!(
            graph.neighbors(1).iter().copied().collect::<Vec<_>>(),
            vec![2]
        );
        let s = solve_grid_diagonal(&g);
        assert_eq!(s.x, vec![true, true, false, false]);
        assert_eq!(
            s,
            BulbSolution {
                pivot_rank: None,
                ..solve_graph(&graph, 20).unwrap()
            }
        );
    }

    #[test]
    fn all8_two_by_two_complete() {
        let g = grid(2, 2, Neighborhood::All8, &[0; 4], &[1; 4], &[5, 1, 2, 3]);
        let s = solve_grid_all8(&g);
        assert_eq!((s.cost, s.x), (1.0, vec![false, true, false, false]));
    }

    #[test]
    fn diagonal_single_row_is_per_vertex() {
        let g = grid(
            1,
            4,
            Neighborhood::Diagonal4,
            &[0, 1, 0, 1],
            &[0, 0, 1, 1],
            &[1; 4],
        );
        let s = solve_grid_diagonal(&g);
        assert_eq!(s.x, vec![false, true, true, false]);
    }

    #[test]
    fn bad_grids() {
        assert_eq!(
            GridSpec::new(0, 3, Neighborhood::All8, vec![], vec![], vec![]),
            Err(BulbError::EmptyGrid)
        );
    }

    proptest! {
        #[test]
        fn specialists_match_general_solver(
            p in 1usize..=4,
            q in 1usize..=4,
            nb in 0usize..3,
            init in any::<u16>(),
            tgt in any::<u16>(),
            costs in prop::collection::vec(0u8..5, 16),
        ) {
            let n = p * q;
            let bits = |w: u16| (0..n).map(|i| w >> i & 1 == 1).collect::<Vec<_>>();
            let g = GridSpec::new(p, q, ALL[nb], bits(init), bits(tgt), costs[..n].iter().map(|&c| c as f64).collect()).unwrap();
            let s = solve_grid(&g);
            let graph = g.to_graph();
            let r = solve_graph(&graph, 64).unwrap();
            prop_assert_eq!(s.feasible, r.feasible);
            if s.feasible {
                prop_assert_eq!(graph.apply(&s.x), g.target.clone());
                prop_assert_eq!(s.cost, r.cost);
                prop_assert_eq!(&s.x, &r.x);
            }
        }
    }
}
