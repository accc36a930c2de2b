//! Recognising trees of cycles by contracting degree-2 vertices, and a
//! generator for such graphs.

use std::collections::{BTreeSet, VecDeque};
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("{0}")]
    Format(String),
    #[error("cycle count must be at least 1 and cycle lengths at least 3")]
    BadGenerator,
}

/// Simple undirected graph with ordered neighbour sets (0-based vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UGraph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl UGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adjacency[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[v].insert(u);
        }
        Ok(UGraph { adjacency })
    }

    /// `n m` on the first line, then `m` lines `u v` with 1-based vertices.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut nums = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace)
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| GraphError::Format(format!("bad integer {tok:?}")))
            });
        let mut next = |what: &str| {
            nums.next()
                .unwrap_or_else(|| Err(GraphError::Format(format!("missing {what}"))))
        };
        let n = next("vertex count")?;
        let m = next("edge count")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let u = next("edge endpoint")?;
            let v = next("edge endpoint")?;
            if u == 0 || v == 0 {
                return Err(GraphError::Format("vertices are numbered from 1".into()));
            }
            edges.push((u - 1, v - 1));
        }
        if nums.next().is_some() {
            return Err(GraphError::Format("trailing data after edge list".into()));
        }
        Self::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.len(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}

/// One contraction: `removed` had neighbours `j` and `k`; the `j`-`k` edge
/// was added unless present. Degrees are taken after the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub removed: usize,
    pub j: usize,
    pub k: usize,
    pub inserted: bool,
    pub j_degree: usize,
    pub k_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precheck {
    TooFewVertices,
    Disconnected,
    LowDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub accepted: bool,
    pub final_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rejected_by: Option<Precheck>,
    #[serde(skip)]
    pub trace: Vec<ReductionStep>,
    /// Neighbour-set operations performed during the reduction.
    #[serde(skip)]
    pub operations: u64,
}

/// Repeatedly removes a degree-2 vertex and joins its two neighbours;
/// accepts when exactly two vertices are left. Graphs with fewer than three
/// vertices, disconnected graphs and graphs with a vertex of degree below 2
/// are rejected up front.
pub fn is_tree_of_cycles(g: &UGraph) -> Recognition {
    let n = g.len();
    let reject = |why| Recognition {
        accepted: false,
        final_vertices: n,
        rejected_by: Some(why),
        trace: Vec::new(),
        operations: 0,
    };
    if n < 3 {
        return reject(Precheck::TooFewVertices);
    }
    if !g.is_connected() {
        return reject(Precheck::Disconnected);
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return reject(Precheck::LowDegree);
    }

    let mut adj = g.adjacency.clone();
    let mut alive = n;
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| adj[v].len() == 2).collect();
    let mut trace = Vec::new();
    let mut ops = 0u64;
    while let Some(v) = queue.pop_front() {
        if removed[v] || adj[v].len() != 2 {
            continue;
        }
        let mut it = adj[v].iter();
        let (j, k) = (*it.next().unwrap(), *it.next().unwrap());
        ops += 2;
        let (dj, dk) = (adj[j].len(), adj[k].len());
        adj[j].remove(&v);
        adj[k].remove(&v);
        adj[v].clear();
        ops += 3;
        removed[v] = true;
        alive -= 1;
        let inserted = !adj[j].contains(&k);
        ops += 1;
        if inserted {
            adj[j].insert(k);
            adj[k].insert(j);
            ops += 2;
        }
        for (w, before) in [(j, dj), (k, dk)] {
            if adj[w].len() == 2 && before > 2 {
                queue.push_back(w);
            }
        }
        trace.push(ReductionStep {
            removed: v,
            j,
            k,
            inserted,
            j_degree: adj[j].len(),
            k_degree: adj[k].len(),
        });
    }
    Recognition {
        accepted: alive == 2,
        final_vertices: alive,
        rejected_by: None,
        trace,
        operations: ops,
    }
}

/// A random cycle with `cycle_count - 1` further cycles glued onto
/// uniformly chosen existing edges. Each glued cycle of length `K` adds a
/// path of `K - 2` new vertices between the endpoints of its edge.
pub fn generate_tree_of_cycles(
    seed: u64,
    cycle_count: usize,
    cycle_len: RangeInclusive<usize>,
) -> Result<UGraph, GraphError> {
    if cycle_count == 0 || *cycle_len.start() < 3 || cycle_len.is_empty() {
        return Err(GraphError::BadGenerator);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = rng.gen_range(cycle_len.clone());
    let mut n = first;
    let mut edges: Vec<(usize, usize)> = (0..first).map(|v| (v, (v + 1) % first)).collect();
    for _ in 1..cycle_count {
        let len = rng.gen_range(cycle_len.clone());
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        let mut prev = a;
        for _ in 0..len - 2 {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, b));
    }
    UGraph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|v| (v, (v + 1) % n)).collect()
    }

    #[test]
    fn small_cases() {
        assert!(is_tree_of_cycles(&UGraph::new(3, &cycle(3)).unwrap()).accepted);
        assert!(is_tree_of_cycles(&UGraph::new(7, &cycle(7)).unwrap()).accepted);

        let k4: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let r = is_tree_of_cycles(&UGraph::new(4, &k4).unwrap());
        assert!(!r.accepted);
        assert_eq!(r.final_vertices, 4);

        let double = UGraph::new(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)]).unwrap();
        let r = is_tree_of_cycles(&double);
        assert!(r.accepted);
        assert_eq!(
            r.trace.iter().map(|s| s.removed).collect::<Vec<_>>(),
            vec![2, 3]
        );
    }

    #[test]
    fn prechecks() {
        let path = UGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            is_tree_of_cycles(&path).rejected_by,
            Some(Precheck::LowDegree)
        );
        let mut two = cycle(3);
        two.extend(cycle(3).into_iter().map(|(u, v)| (u + 3, v + 3)));
        assert_eq!(
            is_tree_of_cycles(&UGraph::new(6, &two).unwrap()).rejected_by,
            Some(Precheck::Disconnected)
        );
        assert_eq!(
            is_tree_of_cycles(&UGraph::new(2, &[(0, 1)]).unwrap()).rejected_by,
            Some(Precheck::TooFewVertices)
        );
    }

    #[test]
    fn generator_small_cases() {
        let g = generate_tree_of_cycles(1, 1, 3..=3).unwrap();
        assert_eq!(g, UGraph::new(3, &cycle(3)).unwrap());
        let g = generate_tree_of_cycles(9, 2, 3..=3).unwrap();
        assert_eq!((g.len(), g.edge_count()), (4, 5));
        assert!(is_tree_of_cycles(&g).accepted);
        assert_eq!(
            generate_tree_of_cycles(1, 0, 3..=4),
            Err(GraphError::BadGenerator)
        );
        assert_eq!(
            generate_tree_of_cycles(1, 2, 2..=4),
            Err(GraphError::BadGenerator)
        );
    }

    #[test]
    fn trace_replays_against_naive_edge_set() {
        for seed in 0..30 {
            let g = generate_tree_of_cycles(seed, 12, 3..=6).unwrap();
            let r = is_tree_of_cycles(&g);
            assert!(r.accepted);
            let mut edges: HashSet<(usize, usize)> = g.edges().into_iter().collect();
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            let degree = |e: &HashSet<(usize, usize)>, v| {
                e.iter().filter(|&&(a, b)| a == v || b == v).count()
            };
            for s in &r.trace {
                assert_eq!(degree(&edges, s.removed), 2);
                edges.remove(&key(s.removed, s.j));
                edges.remove(&key(s.removed, s.k));
                assert_eq!(s.inserted, edges.insert(key(s.j, s.k)));
                assert_eq!(degree(&edges, s.j), s.j_degree);
                assert_eq!(degree(&edges, s.k), s.k_degree);
            }
            assert_eq!(edges.len(), 1);
        }
    }

    #[test]
    fn parse_round_trip() {
        let g = UGraph::parse("# triangle\n3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(UGraph::parse(&g.to_text()).unwrap(), g);
        assert!(matches!(
            UGraph::parse("3 1\n0 1\n"),
            Err(GraphError::Format(_))
        ));
        assert!(matches!(
            UGraph::parse("3 2\n1 2\n"),
            Err(GraphError::Format(_))
        ));
        assert_eq!(
            UGraph::parse("3 2\n1 2\n2 1\n"),
            Err(GraphError::DuplicateEdge(1, 0))
        );
    }
}
