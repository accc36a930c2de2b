use super::{improves, BulbError, BulbGraph, BulbSolution};
use crate::gf2::{BitRow, Gf2Echelon};

pub const DEFAULT_FREE_VAR_CAP: usize = 20;

/// Back-substitution in the eliminated system; `free` holds the values of
/// the non-pivot columns, `with_rhs` selects the inhomogeneous system.
fn back_substitute(e: &Gf2Echelon, n: usize, free: &[bool], with_rhs: bool) -> Vec<bool> {
    let mut y = vec![false; n];
    y[e.rank..].copy_from_slice(free);
    for i in (0..e.rank).rev() {
        let row = &e.rows[i];
        let mut v = with_rhs && row.get(n);
        let mut j = row.first_one_in(i + 1, n);
        while let Some(c) = j {
            v ^= y[c];
            j = row.first_one_in(c + 1, n);
        }
        y[i] = v;
    }
    let mut x = vec![false; n];
    for (c, v) in y.into_iter().enumerate() {
        x[e.col_perm[c]] = v;
    }
    x
}

/// Cheapest touch set turning the initial states into the target states.
///
/// Free variables are searched exhaustively in Gray-code order; ties go to
/// the lexicographically smallest `x`.
pub fn solve_graph(g: &BulbGraph, free_var_cap: usize) -> Result<BulbSolution, BulbError> {
    let n = g.len();
    let rows: Vec<BitRow> = (0..n)
        .map(|i| {
            let mut row = BitRow::zeros(n + 1);
            row.set(i, true);
            for &j in g.neighbors(i) {
                row.set(j, true);
            }
            row.set(n, g.initial[i] ^ g.target[i]);
            row
        })
        .collect();
    let e = Gf2Echelon::eliminate(rows, n + 1, 1);
    if !e.is_consistent() {
        return Ok(BulbSolution::infeasible(Some(e.rank)));
    }
    let free = n - e.rank;
    if free > free_var_cap {
        return Err(BulbError::FreeVarBudgetExceeded {
            free,
            cap: free_var_cap,
        });
    }
    let mut x = back_substitute(&e, n, &vec![false; free], true);
    let influence: Vec<Vec<bool>> = (0..free)
        .map(|f| {
            let mut unit = vec![false; free];
            unit[f] = true;
            back_substitute(&e, n, &unit, false)
        })
        .collect();
    let mut best_x = x.clone();
    let mut best_cost = g.cost_of(&x);
    for step in 1u64..1 << free {
        let flip = &influence[step.trailing_zeros() as usize];
        for (a, &b) in x.iter_mut().zip(flip) {
            *a ^= b;
        }
        let cost = g.cost_of(&x);
        if improves(cost, &x, Some((best_cost, &best_x))) {
            best_cost = cost;
            best_x.copy_from_slice(&x);
        }
    }
    Ok(BulbSolution {
        feasible: true,
        x: best_x,
        cost: best_cost,
        pivot_rank: Some(e.rank),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(g: &BulbGraph) -> Option<(f64, Vec<bool>)> {
        let n = g.len();
        let mut best: Option<(f64, Vec<bool>)> = None;
        for mask in 0u32..1 << n {
            let x: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            if g.apply(&x) != g.target {
                continue;
            }
            let c = g.cost_of(&x);
            if improves(c, &x, best.as_ref().map(|(bc, bx)| (*bc, bx.as_slice()))) {
                best = Some((c, x));
            }
        }
        best
    }

    #[test]
    fn single_vertex() {
        let g = BulbGraph::new(1, &[], vec![false], vec![true], vec![3.0]).unwrap();
        let s = solve_graph(&g, DEFAULT_FREE_VAR_CAP).unwrap();
        assert_eq!(s.x, vec![true]);
        assert_eq!(s.cost, 3.0);
    }

    #[test]
    fn edge_and_triangle() {
        let g =
            BulbGraph::new(2, &[(0, 1)], vec![false; 2], vec![true; 2], vec![2.0, 5.0]).unwrap();
        let s = solve_graph(&g, DEFAULT_FREE_VAR_CAP).unwrap();
        assert_eq!((s.cost, s.x), (2.0, vec![true, false]));

        let g = BulbGraph::new(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![false; 3],
            vec![true; 3],
            vec![4.0, 1.0, 9.0],
        )
        .unwrap();
        let s = solve_graph(&g, DEFAULT_FREE_VAR_CAP).unwrap();
        assert_eq!((s.cost, s.x), (1.0, vec![false, true, false]));
        assert_eq!(s.pivot_rank, Some(1));
    }

    #[test]
    fn infeasible_and_budget() {
        let g = BulbGraph::new(
            2,
            &[(0, 1)],
            vec![false; 2],
            vec![true, false],
            vec![1.0; 2],
        )
        .unwrap();
        assert!(!solve_graph(&g, DEFAULT_FREE_VAR_CAP).unwrap().feasible);

        let edges: Vec<(usize, usize)> = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .collect();
        let g = BulbGraph::new(6, &edges, vec![false; 6], vec![false; 6], vec![1.0; 6]).unwrap();
        assert_eq!(
            solve_graph(&g, 3),
            Err(BulbError::FreeVarBudgetExceeded { free: 5, cap: 3 })
        );
        assert_eq!(solve_graph(&g, 5).unwrap().cost, 0.0);
    }

    proptest! {
        #[test]
        fn matches_exhaustive(
            n in 1usize..=10,
            edge_bits in any::<u64>(),
            states in any::<(u16, u16)>(),
            costs in prop::collection::vec(0u8..6, 10),
        ) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edge_bits >> (k % 64) & 1 == 1 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let bits = |w: u16| (0..n).map(|i| w >> i & 1 == 1).collect::<Vec<_>>();
            let costs: Vec<f64> = costs[..n].iter().map(|&c| c as f64).collect();
            let g = BulbGraph::new(n, &edges, bits(states.0), bits(states.1), costs).unwrap();
            let s = solve_graph(&g, 64).unwrap();
            match brute(&g) {
                None => prop_assert!(!s.feasible),
                Some((c, x)) => {
                    prop_assert!(s.feasible);
                    prop_assert_eq!(s.cost, c);
                    prop_assert_eq!(&s.x, &x);
                    prop_assert_eq!(g.apply(&s.x), g.target.clone());
                }
            }
        }
    }
}
