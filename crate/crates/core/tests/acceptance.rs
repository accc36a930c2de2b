//! End-to-end acceptance checks. Runs as a plain binary so every verdict line
//! is printed; exits non-zero if any check fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ripple_gauss::bulbs::{
    solve_graph, solve_grid_all8, solve_grid_diagonal, solve_grid_orthogonal, solve_point_toggle,
    solve_rowcol, BulbGraph, GridSpec, Neighborhood, RowColInstance,
};
use ripple_gauss::machine::{Machine, MachineConfig};
use ripple_gauss::recognition::{generate_tree_of_cycles, is_tree_of_cycles, UGraph};
use ripple_gauss::seq_count::{count_binary_decomp, count_dp_prefixes, count_matpow, Transition};
use ripple_gauss::serial::{determinant, serial_gauss, PivotPolicy};
use ripple_gauss::validation::{run_campaign, CampaignConfig};
use ripple_gauss::xor_max::{
    max_xor_subarray_bits, max_xor_subarray_bounded_bits, max_xor_subset_basic_bits,
    max_xor_subset_incremental_bits, CountedTrie,
};
use ripple_gauss::{simulate, DetValue, FieldSpec, Matrix};

type Verdict = Result<String, String>;
type Check = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn campaign_config() -> CampaignConfig {
    CampaignConfig {
        n_min: 1,
        n_max: 30,
        per_size: 20,
        seed: 7,
        ..CampaignConfig::default()
    }
}

fn replication() -> Verdict {
    let start = Instant::now();
    let summary = run_campaign(&campaign_config()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(summary.total_pass == 600, || {
        format!("{} of 600 instances agreed", summary.total_pass)
    })?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.1?}")
    })?;
    Ok(format!("600/600 instances agree, {elapsed:.1?}"))
}

fn iteration_contract() -> Verdict {
    let field = FieldSpec::real();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut runs = 0;
    for n in 1..=30 {
        for _ in 0..5 {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..=n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let matrix = Matrix::from_ints(&rows, &field);
            let run = simulate(&matrix, field).map_err(|e| e.to_string())?;
            ensure(run.iterations == 2 * n - 1, || {
                format!("n={n}: {} iterations", run.iterations)
            })?;
            let serial = serial_gauss(&matrix, &field, PivotPolicy::max_abs().protect_tail(1));
            let nonsingular = serial.rank == n;
            ensure(run.locked.iter().all(|&l| l) == nonsingular, || {
                format!(
                    "n={n}: locked {:?} but serial rank {}",
                    run.locked, serial.rank
                )
            })?;
            runs += 1;
        }
        let zero = Matrix::zeros(n, n + 1, &field);
        let run = simulate(&zero, field).map_err(|e| e.to_string())?;
        ensure(run.singular, || {
            format!("n={n}: all-zero input not singular")
        })?;
        ensure(
            run.f_matrix
                .to_rows()
                .iter()
                .flatten()
                .all(|v| field.is_zero(*v)),
            || format!("n={n}: all-zero input left non-zero f"),
        )?;
        runs += 1;
    }
    Ok(format!(
        "{runs} runs with 2n-1 iterations, locks match rank"
    ))
}

fn sliding_zeros() -> Verdict {
    let summary = run_campaign(&campaign_config()).map_err(|e| e.to_string())?;
    let campaign: usize = summary.records.iter().map(|r| r.lemma_violations).sum();
    ensure(campaign == 0, || {
        format!("{campaign} violations in the real campaign")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut extra = 0;
    for (field, count) in [
        (FieldSpec::gf2(), 250),
        (FieldSpec::prime(10007).unwrap(), 250),
    ] {
        let p = field.modulus().unwrap() as i64;
        for _ in 0..count {
            let n = rng.gen_range(1..=16);
            let m = n + rng.gen_range(0..=2);
            let density = rng.gen_range(0.1..=1.0);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| {
                    (0..m)
                        .map(|_| {
                            if rng.gen_bool(density) {
                                rng.gen_range(0..p)
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let matrix = Matrix::from_ints(&rows, &field);
            let config = MachineConfig::new(n, m, field).with_sliding_zeros_check(true);
            let run = Machine::load(&matrix, config)
                .map_err(|e| e.to_string())?
                .run();
            extra += run.lemma_violations;
        }
    }
    ensure(extra == 0, || format!("{extra} violations on exact fields"))?;
    Ok("0 violations over 600 real + 500 exact-field runs".into())
}

fn gfp_correctness() -> Verdict {
    let p = 10007u64;
    let field = FieldSpec::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut singular = 0;
    for t in 0..200 {
        let rows: Vec<Vec<i64>> = (0..8)
            .map(|_| (0..9).map(|_| rng.gen_range(0..p as i64)).collect())
            .collect();
        let matrix = Matrix::from_ints(&rows, &field);
        let run = simulate(&matrix, field).map_err(|e| e.to_string())?;
        let serial = serial_gauss(&matrix, &field, PivotPolicy::max_abs().protect_tail(1));
        ensure(run.rank() == serial.rank, || {
            format!("instance {t}: rank {} vs {}", run.rank(), serial.rank)
        })?;
        let (DetValue::Residue(a), DetValue::Residue(d)) =
            (run.determinant(), determinant(&serial, 8))
        else {
            return Err("non-residue determinant".into());
        };
        ensure(a == d || a == (p - d) % p, || {
            format!("instance {t}: det {a} vs {d}")
        })?;
        singular += (serial.rank < 8) as usize;
    }
    Ok(format!(
        "200 instances, ranks and determinants agree ({singular} singular)"
    ))
}

fn brute_subset(values: &[u64]) -> u64 {
    let mut best = 0;
    for mask in 0u32..1 << values.len() {
        let x = (0..values.len())
            .filter(|&q| mask >> q & 1 == 1)
            .fold(0, |a, q| a ^ values[q]);
        best = best.max(x);
    }
    best
}

fn xor_of(values: &[u64], subset: &[usize]) -> u64 {
    subset.iter().fold(0, |a, &i| a ^ values[i - 1])
}

fn xor_subset() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for t in 0..500 {
        let n = rng.gen_range(0..=14);
        let b = rng.gen_range(1..=10u32);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << b)).collect();
        let want = brute_subset(&values);
        let basic = max_xor_subset_basic_bits(&values, b).map_err(|e| e.to_string())?;
        let inc = max_xor_subset_incremental_bits(&values, b).map_err(|e| e.to_string())?;
        ensure(basic.xm == want && inc.xm == want, || {
            format!("instance {t}: {} / {} vs {want}", basic.xm, inc.xm)
        })?;
        ensure(
            xor_of(&values, &basic.subset) == want && xor_of(&values, &inc.subset) == want,
            || format!("instance {t}: subset does not reproduce the maximum"),
        )?;
    }
    for t in 0..100 {
        let values: Vec<u64> = (0..1000).map(|_| rng.gen_range(0..1u64 << 30)).collect();
        let basic = max_xor_subset_basic_bits(&values, 30).map_err(|e| e.to_string())?;
        let inc = max_xor_subset_incremental_bits(&values, 30).map_err(|e| e.to_string())?;
        ensure(basic.xm == inc.xm, || {
            format!("large instance {t}: {} vs {}", basic.xm, inc.xm)
        })?;
        ensure(
            xor_of(&values, &basic.subset) == basic.xm && xor_of(&values, &inc.subset) == inc.xm,
            || format!("large instance {t}: subset does not reproduce the maximum"),
        )?;
    }
    Ok("500 exhaustive + 100 large instances agree".into())
}

/// Best (value, i, j) with ties to the smallest end, then the smallest start.
fn brute_subarray(values: &[u64], lo: usize, hi: usize) -> (u64, usize, usize) {
    let mut best: Option<(u64, usize, usize)> = None;
    for j in 1..=values.len() {
        let mut acc = 0;
        for i in (1..=j).rev() {
            acc ^= values[i - 1];
            let len = j - i + 1;
            if len < lo || len > hi {
                continue;
            }
            let better = match best {
                None => true,
                Some((v, bi, bj)) => acc > v || (acc == v && (j, i) < (bj, bi)),
            };
            if better {
                best = Some((acc, i, j));
            }
        }
    }
    best.unwrap()
}

fn xor_subarray() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for t in 0..200 {
        let n = rng.gen_range(1..=200);
        let b = rng.gen_range(1..=16u32);
        let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << b)).collect();
        let r = max_xor_subarray_bits(&values, b).map_err(|e| e.to_string())?;
        let want = brute_subarray(&values, 1, n);
        ensure((r.value, r.i, r.j) == want, || {
            format!("array {t}: {r:?} vs {want:?}")
        })?;
        for _ in 0..3 {
            let a = rng.gen_range(1..=n);
            let c = rng.gen_range(1..=n);
            let (lo, hi) = (a.min(c), a.max(c));
            let r = max_xor_subarray_bounded_bits(&values, lo, hi, b).map_err(|e| e.to_string())?;
            let want = brute_subarray(&values, lo, hi);
            ensure((r.value, r.i, r.j) == want, || {
                format!("array {t} window {lo}..={hi}: {r:?} vs {want:?}")
            })?;
        }
        let mut trie = CountedTrie::new(b);
        for &v in &values {
            trie.insert(v).map_err(|e| e.to_string())?;
        }
        let before = trie.shape();
        let extra: Vec<u64> = (0..20).map(|_| rng.gen_range(0..1u64 << b)).collect();
        for &v in &extra {
            trie.insert(v).map_err(|e| e.to_string())?;
        }
        for &v in extra.iter().rev() {
            trie.remove(v).map_err(|e| e.to_string())?;
        }
        ensure(trie.shape() == before && trie.len() == n, || {
            format!("array {t}: trie not restored")
        })?;
    }
    Ok("200 arrays, 600 windows, trie round-trips exact".into())
}

fn closed_flips(n: usize, edges: &[(usize, usize)], x: &[bool]) -> Vec<bool> {
    let mut flips = x.to_vec();
    for &(u, v) in edges {
        flips[u] ^= x[v];
        flips[v] ^= x[u];
    }
    flips.truncate(n);
    flips
}

fn brute_bulbs(n: usize, edges: &[(usize, usize)], need: &[bool], costs: &[f64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for mask in 0u32..1 << n {
        let x: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        if closed_flips(n, edges, &x) != need {
            continue;
        }
        let c: f64 = (0..n).filter(|&v| x[v]).map(|v| costs[v]).sum();
        best = Some(best.map_or(c, |b: f64| b.min(c)));
    }
    best
}

fn bulbs() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..300 {
        let n = rng.gen_range(1..=14);
        let p = rng.gen_range(0.05..0.6);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let init: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let tgt: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let costs: Vec<f64> = (0..n).map(|_| rng.gen_range(0..10) as f64).collect();
        let need: Vec<bool> = init.iter().zip(&tgt).map(|(a, b)| a ^ b).collect();
        let want = brute_bulbs(n, &edges, &need, &costs);
        let g = BulbGraph::new(n, &edges, init, tgt, costs).map_err(|e| e.to_string())?;
        let s = solve_graph(&g, 14).map_err(|e| e.to_string())?;
        ensure(s.feasible == want.is_some(), || {
            format!("graph {t}: feasibility differs")
        })?;
        if let Some(c) = want {
            ensure(s.cost == c && closed_flips(n, &edges, &s.x) == need, || {
                format!("graph {t}: cost {} vs {c}", s.cost)
            })?;
        }
    }

    type Specialist = fn(&GridSpec) -> ripple_gauss::bulbs::BulbSolution;
    let specialists: [(Neighborhood, Specialist); 3] = [
        (Neighborhood::Orthogonal4, solve_grid_orthogonal),
        (Neighborhood::Diagonal4, solve_grid_diagonal),
        (Neighborhood::All8, solve_grid_all8),
    ];
    let mut grids = 0;
    for (nb, solve) in specialists {
        for p in 1..=4 {
            for q in 1..=4 {
                for _ in 0..50 {
                    let cells = p * q;
                    let grid = GridSpec::new(
                        p,
                        q,
                        nb,
                        (0..cells).map(|_| rng.gen()).collect(),
                        (0..cells).map(|_| rng.gen()).collect(),
                        (0..cells).map(|_| rng.gen_range(0.0..5.0)).collect(),
                    )
                    .map_err(|e| e.to_string())?;
                    let s = solve(&grid);
                    let r = solve_graph(&grid.to_graph(), 16).map_err(|e| e.to_string())?;
                    ensure(s.feasible == r.feasible, || {
                        format!("{nb:?} {p}x{q}: feasibility differs")
                    })?;
                    if s.feasible {
                        ensure((s.cost - r.cost).abs() <= 1e-9, || {
                            format!("{nb:?} {p}x{q}: cost {} vs {}", s.cost, r.cost)
                        })?;
                        ensure(grid.to_graph().apply(&s.x) == grid.target, || {
                            format!("{nb:?} {p}x{q}: specialist answer misses the target")
                        })?;
                    }
                    grids += 1;
                }
            }
        }
    }

    let mut rowcols = 0;
    for m in 1..=4 {
        for n in 1..=4 {
            for _ in 0..20 {
                let cells = m * n;
                let init: Vec<bool> = (0..cells).map(|_| rng.gen()).collect();
                let mut tgt: Vec<bool> = (0..cells).map(|_| rng.gen()).collect();
                if rng.gen_bool(0.5) {
                    let rows: Vec<bool> = (0..m).map(|_| rng.gen()).collect();
                    let cols: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                    tgt = (0..cells)
                        .map(|v| init[v] ^ rows[v / n] ^ cols[v % n])
                        .collect();
                }
                let rc: Vec<f64> = (0..m).map(|_| rng.gen_range(0..6) as f64).collect();
                let cc: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
                let mut best: Option<f64> = None;
                for mask in 0u32..1 << (m + n) {
                    let ok = (0..cells).all(|v| {
                        init[v] ^ (mask >> (v / n) & 1 == 1) ^ (mask >> (m + v % n) & 1 == 1)
                            == tgt[v]
                    });
                    if ok {
                        let c: f64 = (0..m)
                            .filter(|&i| mask >> i & 1 == 1)
                            .map(|i| rc[i])
                            .sum::<f64>()
                            + (0..n)
                                .filter(|&j| mask >> (m + j) & 1 == 1)
                                .map(|j| cc[j])
                                .sum::<f64>();
                        best = Some(best.map_or(c, |b: f64| b.min(c)));
                    }
                }
                let inst =
                    RowColInstance::new(m, n, init, tgt, rc, cc).map_err(|e| e.to_string())?;
                let s = solve_rowcol(&inst);
                ensure(s.feasible == best.is_some(), || {
                    format!("rowcol {m}x{n}: feasibility differs")
                })?;
                if let Some(b) = best {
                    ensure(s.cost == b, || {
                        format!("rowcol {m}x{n}: cost {} vs {b}", s.cost)
                    })?;
                }
                rowcols += 1;
            }
        }
    }

    let mut toggles = 0;
    for m in 1..=12usize {
        for n in 1..=12 / m {
            for _ in 0..10 {
                let cells = m * n;
                let init: Vec<bool> = (0..cells).map(|_| rng.gen()).collect();
                let tgt: Vec<bool> = (0..cells).map(|_| rng.gen()).collect();
                let mut best: Option<usize> = None;
                for mask in 0u32..1 << cells {
                    let mut state = init.clone();
                    for op in (0..cells).filter(|&v| mask >> v & 1 == 1) {
                        let (r, c) = (op / n, op % n);
                        for (v, cell) in state.iter_mut().enumerate() {
                            if (v / n == r) != (v % n == c) {
                                *cell ^= true;
                            }
                        }
                    }
                    if state == tgt {
                        let k = mask.count_ones() as usize;
                        best = Some(best.map_or(k, |b| b.min(k)));
                    }
                }
                let inst = RowColInstance::unit(m, n, init, tgt).map_err(|e| e.to_string())?;
                let r = solve_point_toggle(&inst);
                ensure(r.feasible == best.is_some(), || {
                    format!("point toggle {m}x{n}: feasibility differs")
                })?;
                if let Some(b) = best {
                    ensure(r.count == b, || {
                        format!("point toggle {m}x{n}: {} vs {b}", r.count)
                    })?;
                }
                toggles += 1;
            }
        }
    }
    Ok(format!(
        "300 graphs, {grids} grids, {rowcols} rowcol, {toggles} point-toggle instances"
    ))
}

fn seq_count() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0u64;
    for k in 1..=6usize {
        for m in [2u64, 97, 1_000_000_007] {
            for t in 0..100 {
                let density = rng.gen_range(0.2..=1.0);
                let bits: Vec<bool> = (0..k * k).map(|_| rng.gen_bool(density)).collect();
                let tr =
                    Transition::from_fn(k, |i, j| bits[i * k + j]).map_err(|e| e.to_string())?;
                let dp = count_dp_prefixes(&tr, 512, m).map_err(|e| e.to_string())?;
                for n in 1..=512u64 {
                    let a = count_matpow(&tr, n, m).map_err(|e| e.to_string())?.value;
                    let b = count_binary_decomp(&tr, n, m).map_err(|e| e.to_string())?;
                    let want = dp[n as usize - 1];
                    ensure(a == want && b == want, || {
                        format!("k={k} M={m} matrix {t} n={n}: dp {want} matpow {a} binary {b}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    let ones = Transition::from_fn(2, |_, _| true).unwrap();
    let n = 1_000_000_000_000_000_000u64;
    let r = count_matpow(&ones, n, 1_000_000_007).map_err(|e| e.to_string())?;
    let bound = 2 * (63 - n.leading_zeros() as u64) + 1;
    ensure(r.multiplications <= bound, || {
        format!("{} products at n=1e18, bound {bound}", r.multiplications)
    })?;
    Ok(format!(
        "{checked} (matrix, n) cases agree; {} products at n=1e18",
        r.multiplications
    ))
}

fn recognition() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..200u64 {
        let cycles = rng.gen_range(1..=50);
        let hi = rng.gen_range(3..=10);
        let g = generate_tree_of_cycles(seed, cycles, 3..=hi).map_err(|e| e.to_string())?;
        ensure(is_tree_of_cycles(&g).accepted, || {
            format!("generated seed {seed} rejected")
        })?;
    }
    let mut negatives: Vec<(String, UGraph)> = Vec::new();
    for n in 3..=40 {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        negatives.push((format!("tree on {n}"), UGraph::new(n, &edges).unwrap()));
        let star: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        negatives.push((format!("star on {n}"), UGraph::new(n, &star).unwrap()));
    }
    for n in 4..=8 {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        negatives.push((format!("K{n}"), UGraph::new(n, &edges).unwrap()));
    }
    for (a, b) in [(3, 3), (3, 5), (4, 7), (10, 6)] {
        let mut edges: Vec<(usize, usize)> = (0..a).map(|v| (v, (v + 1) % a)).collect();
        edges.extend((0..b).map(|v| (a + v, a + (v + 1) % b)));
        negatives.push((format!("C{a} + C{b}"), UGraph::new(a + b, &edges).unwrap()));
    }
    for (name, g) in &negatives {
        ensure(!is_tree_of_cycles(g).accepted, || {
            format!("{name} accepted")
        })?;
    }
    let big = generate_tree_of_cycles(77, 20_000, 3..=12).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = is_tree_of_cycles(&big);
    let elapsed = start.elapsed();
    ensure(big.len() >= 100_000, || {
        format!("large instance has only {} vertices", big.len())
    })?;
    ensure(r.accepted && elapsed < Duration::from_secs(5), || {
        format!("large instance accepted={} in {elapsed:.1?}", r.accepted)
    })?;
    Ok(format!(
        "200 generated accepted, {} negatives rejected, {} vertices in {elapsed:.2?}",
        negatives.len(),
        big.len()
    ))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.display().to_string()
    };
    let mat = write("m.mat", "3 4\n0 2 1 7\n1 1 1 6\n2 0 3 11\n");
    let vals = write("v.txt", "9 8 4 3 12 77 1024 5\n");
    let bulb = write(
        "b.json",
        r#"{"kind":"grid","p":3,"q":4,"neighborhood":"orthogonal4","initial":[[0,1,0,0],[0,0,0,0],[1,0,0,1]],"target":[[1,1,1,1],[1,1,1,1],[1,1,1,1]],"costs":[[1,2,3,4],[1,2,3,4],[1,2,3,4]]}"#,
    );
    let seq = write("s.txt", "3 97 1000\n1 1 0\n0 1 1\n1 0 1\n");
    let graph = write("g.txt", "4 5\n1 2\n2 3\n3 1\n1 4\n4 2\n");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["simulate", "--field", "real", &mat, "--trace"],
        vec!["simulate", "--field", "gfp:10007", &mat],
        vec![
            "validate",
            "--n-min",
            "1",
            "--n-max",
            "6",
            "--per-size",
            "5",
            "--seed",
            "7",
        ],
        vec!["xor-subset", &vals],
        vec!["xor-subset", "--method", "basic", &vals],
        vec!["xor-subarray", "--min-len", "2", "--max-len", "4", &vals],
        vec!["bulbs", &bulb],
        vec!["seqcount", "--method", "binary", &seq],
        vec!["recognize", &graph],
    ];
    let exe = env!("CARGO_BIN_EXE_ripple-gauss");
    for args in &invocations {
        let run = || {
            Command::new(exe)
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success() && b.status.success(), || {
            format!("{args:?} failed")
        })?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
            format!("{args:?} output differs")
        })?;
        let text = String::from_utf8(a.stdout).map_err(|e| e.to_string())?;
        ensure(text.ends_with('\n'), || {
            format!("{args:?} output not newline-terminated")
        })?;
        serde_json::from_str::<serde_json::Value>(&text).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!(
        "{} invocations byte-identical across runs",
        invocations.len()
    ))
}

fn main() {
    let checks: [Check; 10] = [
        ("replication against the serial eliminator", replication),
        ("iteration contract", iteration_contract),
        ("sliding-zeros property", sliding_zeros),
        ("GF(p) determinant and rank", gfp_correctness),
        ("xor subset", xor_subset),
        ("xor subarray", xor_subarray),
        ("light bulbs", bulbs),
        ("sequence counting", seq_count),
        ("tree-of-cycles recognition", recognition),
        ("CLI determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        checks.len() - failures,
        checks.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
