//! Independent oracles shared by the integration tests. Nothing here calls
//! the library routine it is used to check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rwlogic_core::{Graph, SubcubicTree};

/// Rank over GF(2) by textbook elimination on `i64` entries reduced mod 2.
pub fn naive_rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c].rem_euclid(2) == 1) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && m[r][c].rem_euclid(2) == 1 {
                for k in 0..cols {
                    m[r][k] = (m[r][k] - m[rank][k]).rem_euclid(2);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Cut-rank of `a` computed from scratch with [`naive_rank`].
pub fn naive_cut_rank(g: &Graph, a: &BTreeSet<usize>) -> usize {
    let b: Vec<usize> = (0..g.n()).filter(|v| !a.contains(v)).collect();
    let m = a
        .iter()
        .map(|&u| b.iter().map(|&v| i64::from(g.has_edge(u, v))).collect())
        .collect();
    naive_rank(m)
}

pub fn mask_to_set(mask: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every graph on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |bits| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Breadth-first 2-colouring.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut colour = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for v in 0..n {
                if !g.has_edge(u, v) {
                    continue;
                }
                match colour[v] {
                    None => {
                        colour[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Union-find connectivity; the empty graph counts as connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count() <= 1
}

/// Number of leaf-labelled subcubic trees on `n` leaves: a tree on `k - 1`
/// leaves has `2(k - 1) - 3` edges, each of which can receive leaf `k`.
pub fn tree_count_recurrence(n: usize) -> u64 {
    (3..=n).fold(1u64, |acc, k| acc * (2 * (k as u64 - 1) - 3))
}

/// The set of leaf splits of a tree, each normalised to the side without
/// label 0. Distinct labelled trees have distinct split sets.
pub fn split_signature(t: &SubcubicTree) -> BTreeSet<Vec<usize>> {
    t.bipartitions()
        .into_iter()
        .map(|(a, b)| if a.contains(&0) { b } else { a })
        .collect()
}

/// Lower bound on rank-width: every subcubic tree has an edge whose sides both
/// hold at least a third of the leaves, so the width is at least the smallest
/// cut-rank among such balanced bipartitions.
pub fn balanced_cut_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    for mask in 0u64..1 << n {
        let k = mask.count_ones() as usize;
        if 3 * k >= n && 3 * (n - k) >= n {
            best = best.min(naive_cut_rank(g, &mask_to_set(mask)));
        }
    }
    best
}

/// Largest cut-rank over all bipartitions; no decomposition can exceed it.
pub fn max_cut_rank(g: &Graph) -> usize {
    (0u64..1 << g.n())
        .map(|mask| naive_cut_rank(g, &mask_to_set(mask)))
        .max()
        .unwrap_or(0)
}

/// Small graphs that most tests run over.
pub fn corpus(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Graph::path(n));
        out.push(Graph::complete(n));
        out.push(Graph::empty(n));
        if n >= 3 {
            out.push(Graph::cycle(n));
        }
    }
    for k in 2..=3 {
        for g in [Graph::grid(k), Graph::triangular(k), Graph::hexagonal(k)] {
            if g.n() <= max_n {
                out.push(g);
            }
        }
    }
    if max_n >= 7 {
        out.push(Graph::binary_tree(2));
    }
    out.push(
        Graph::from_edges(4, [(0, 1), (2, 3)])
            .unwrap()
            .with_name("two_edges"),
    );
    out.push(
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
            .unwrap()
            .with_name("star5"),
    );
    out
}

use rand::seq::SliceRandom;
use rwlogic_core::graphstate::{PauliOperator, StabilizerTableau};
use rwlogic_core::{dense_state_vector, graph_state_tableau, Basis, DenseState};

/// A random measurement pattern: a random subset of qubits in random order,
/// each with a random Pauli basis.
pub fn random_pattern<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, Basis)> {
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let len = rng.gen_range(0..=n);
    qubits
        .into_iter()
        .take(len)
        .map(|q| (q, [Basis::X, Basis::Y, Basis::Z][rng.gen_range(0..3)]))
        .collect()
}

/// What a tableau/dense comparison run observed.
#[derive(Debug, Default)]
pub struct CrossCheck {
    pub measurements: usize,
    /// Largest |p_tableau - p_dense| over all steps.
    pub max_probability_gap: f64,
    /// Largest ‖g|ψ⟩ − |ψ⟩‖ over generators and steps.
    pub max_residual: f64,
}

/// Largest residual of the tableau generators on `state`.
pub fn stabilizer_residual(t: &StabilizerTableau, state: &DenseState) -> f64 {
    t.generators()
        .iter()
        .map(|g| state.stabilizer_residual(g).unwrap())
        .fold(0.0, f64::max)
}

/// Runs `ops` on the graph state of `g` with the tableau, following the
/// tableau's outcomes on the dense oracle.
pub fn cross_check<R: Rng>(g: &Graph, ops: &[PauliOperator], rng: &mut R) -> CrossCheck {
    let mut tableau = graph_state_tableau(g);
    let mut state = dense_state_vector(g).unwrap();
    let mut report = CrossCheck {
        max_residual: stabilizer_residual(&tableau, &state),
        ..Default::default()
    };
    for p in ops {
        let dense = state.measure_observable(p).unwrap();
        assert!((dense.prob_plus + dense.prob_minus - 1.0).abs() < 1e-10);
        let m = tableau.measure_pauli(p, None, rng).unwrap();
        let gap = (dense.probability(m.outcome) - m.probability).abs();
        report.max_probability_gap = report.max_probability_gap.max(gap);
        state = dense.post_state(m.outcome).unwrap().clone();
        tableau.check().unwrap();
        report.max_residual = report
            .max_residual
            .max(stabilizer_residual(&tableau, &state));
        report.measurements += 1;
    }
    report
}

pub fn pattern_ops(n: usize, pattern: &[(usize, Basis)]) -> Vec<PauliOperator> {
    pattern
        .iter()
        .map(|&(q, b)| PauliOperator::single(n, q, b))
        .collect()
}

/// Rank-width by dynamic programming over vertex subsets, independent of tree
/// enumeration. A set is `k`-good if its cut-rank is at most `k` and it is a
/// singleton or splits into two `k`-good sets; `rwd(G) ≤ k` iff `V` splits into
/// two `k`-good sets (the two sides of one tree edge).
pub fn subset_dp_rankwidth(g: &Graph) -> usize {
    let n = g.n();
    if n < 2 {
        return 0;
    }
    let full: u64 = (1 << n) - 1;
    let cut: Vec<usize> = (0..=full)
        .map(|x| naive_cut_rank(g, &mask_to_set(x)))
        .collect();
    let splits = |x: u64, good: &[bool]| {
        let low = x & x.wrapping_neg();
        let mut s = (x - 1) & x;
        while s != 0 {
            if s & low != 0 && good[s as usize] && good[(x ^ s) as usize] {
                return true;
            }
            s = (s - 1) & x;
        }
        false
    };
    for k in 0..=n {
        let mut good = vec![false; 1 << n];
        for x in 1..=full {
            if cut[x as usize] <= k {
                good[x as usize] = x.count_ones() == 1 || splits(x, &good);
            }
        }
        if splits(full, &good) {
            return k;
        }
    }
    unreachable!("width never exceeds n")
}
