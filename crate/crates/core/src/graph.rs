//! Simple undirected graphs, the named graph families, and the edge-list
//! text format.
//!
//! Finite patches of the lattice families follow one fixed convention, all
//! with `k × k` vertices in row-major order (vertex `r * k + c`):
//!
//! * `grid(k)`: the square lattice, edges to the right and downward neighbour.
//! * `triangular(k)`: the square lattice plus the diagonal
//!   `(r, c) – (r + 1, c + 1)` in every cell, giving the rhombic patch of the
//!   triangular lattice (interior degree 6).
//! * `hexagonal(k)`: the brick-wall form of the honeycomb lattice; all
//!   horizontal edges, and the vertical edge `(r, c) – (r + 1, c)` only when
//!   `r + c` is even (degree at most 3).
//!
//! `binary_tree(d)` is the complete binary tree of depth `d` in heap order
//! (children of `v` are `2v + 1` and `2v + 2`). Only adjacency structures are
//! modelled; incidence-structure encodings are not.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

/// Largest vertex count accepted from text or generators. Adjacency is a
/// dense bit matrix, so this caps memory at 128 MiB.
pub const MAX_VERTICES: usize = 1 << 15;

/// A simple undirected graph on vertices `0..n`.
///
/// The adjacency matrix is symmetric with zero diagonal; every constructor
/// maintains this. Equality ignores the optional name.
#[derive(Clone)]
pub struct Graph {
    adj: Gf2Matrix,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: Gf2Matrix::zeros(n, n),
            name: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse and either
    /// orientation is accepted; self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::arg(format!("self-loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj.set(u, v, true);
        self.adj.set(v, u, true);
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// The adjacency matrix Γ.
    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adj
    }

    /// Neighbourhood of `a` as a bitmask; only valid for graphs on at most 64 vertices.
    #[inline]
    pub(crate) fn row_word(&self, a: usize) -> u64 {
        self.adj.row_words(a).first().copied().unwrap_or(0)
    }

    /// `N(a)`, ascending.
    pub fn neighbors(&self, a: usize) -> Result<Vec<usize>> {
        if a >= self.n() {
            return Err(Error::arg(format!(
                "vertex {a} out of range for a graph on {} vertices",
                self.n()
            )));
        }
        Ok(self.adj.row_ones(a).collect())
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj.row_ones(a).count()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adj
                    .row_ones(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.count_ones() / 2
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::arg(
                "relabeling is not a permutation of the vertex set",
            ));
        }
        Self::from_edges(n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Copy of the graph with every edge at `a` removed.
    pub fn isolate(&self, a: usize) -> Self {
        let mut g = self.clone();
        for b in self.adj.row_ones(a).collect::<Vec<_>>() {
            g.adj.set(a, b, false);
            g.adj.set(b, a, false);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i));
        Self::from_edges(n, edges)
            .expect("valid path")
            .with_name(format!("path({n})"))
    }

    /// Panics if `n < 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Self::from_edges(n, edges)
            .expect("valid cycle")
            .with_name(format!("cycle({n})"))
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges)
            .expect("valid complete graph")
            .with_name(format!("complete({n})"))
    }

    pub fn grid(k: usize) -> Self {
        Self::lattice(k, |_, _| true, false).with_name(format!("grid({k})"))
    }

    pub fn triangular(k: usize) -> Self {
        Self::lattice(k, |_, _| true, true).with_name(format!("triangular({k})"))
    }

    pub fn hexagonal(k: usize) -> Self {
        Self::lattice(k, |r, c| (r + c) % 2 == 0, false).with_name(format!("hexagonal({k})"))
    }

    fn lattice(k: usize, vertical: impl Fn(usize, usize) -> bool, diagonal: bool) -> Self {
        let id = |r: usize, c: usize| r * k + c;
        let mut edges = Vec::new();
        for r in 0..k {
            for c in 0..k {
                if c + 1 < k {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < k && vertical(r, c) {
                    edges.push((id(r, c), id(r + 1, c)));
                }
                if diagonal && r + 1 < k && c + 1 < k {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                }
            }
        }
        Self::from_edges(k * k, edges).expect("valid lattice")
    }

    /// Complete binary tree of depth `depth`, `2^(depth+1) - 1` vertices.
    pub fn binary_tree(depth: usize) -> Self {
        let n = (1usize << (depth + 1)) - 1;
        let edges = (1..n).map(|v| ((v - 1) / 2, v));
        Self::from_edges(n, edges)
            .expect("valid tree")
            .with_name(format!("binary_tree({depth})"))
    }
}

/// The named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Path,
    Cycle,
    Grid,
    Triangular,
    Hexagonal,
    Complete,
    BinaryTree,
}

impl GraphKind {
    pub const ALL: [GraphKind; 7] = [
        GraphKind::Path,
        GraphKind::Cycle,
        GraphKind::Grid,
        GraphKind::Triangular,
        GraphKind::Hexagonal,
        GraphKind::Complete,
        GraphKind::BinaryTree,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Grid => "grid",
            GraphKind::Triangular => "triangular",
            GraphKind::Hexagonal => "hexagonal",
            GraphKind::Complete => "complete",
            GraphKind::BinaryTree => "binary_tree",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        GraphKind::ALL
            .into_iter()
            .find(|k| k.as_str() == key)
            .ok_or_else(|| Error::arg(format!("unknown graph kind `{s}`")))
    }
}

/// Builds the canonical member of a family. `size` is the vertex count for
/// paths, cycles and complete graphs, the side length for lattices, and the
/// depth for binary trees.
pub fn generate(kind: GraphKind, size: usize) -> Result<Graph> {
    if size == 0 {
        return Err(Error::arg(format!("{kind} size must be positive")));
    }
    let vertices = match kind {
        GraphKind::Path | GraphKind::Cycle | GraphKind::Complete => Some(size),
        GraphKind::Grid | GraphKind::Triangular | GraphKind::Hexagonal => size.checked_mul(size),
        GraphKind::BinaryTree => 1usize
            .checked_shl(size as u32 + 1)
            .filter(|&v| v > 1)
            .map(|v| v - 1),
    };
    if vertices.is_none_or(|v| v > MAX_VERTICES) {
        return Err(Error::arg(format!(
            "{kind}({size}) would exceed {MAX_VERTICES} vertices"
        )));
    }
    Ok(match kind {
        GraphKind::Path => Graph::path(size),
        GraphKind::Cycle if size < 3 => {
            return Err(Error::arg(format!(
                "cycle needs at least 3 vertices, got {size}"
            )))
        }
        GraphKind::Cycle => Graph::cycle(size),
        GraphKind::Grid => Graph::grid(size),
        GraphKind::Triangular => Graph::triangular(size),
        GraphKind::Hexagonal => Graph::hexagonal(size),
        GraphKind::Complete => Graph::complete(size),
        GraphKind::BinaryTree => Graph::binary_tree(size),
    })
}

/// Parses the edge-list format: a header line `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header `n m`".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;
    if n > MAX_VERTICES {
        return Err(Error::Parse {
            line: header_line,
            message: format!("{n} vertices exceeds the limit of {MAX_VERTICES}"),
        });
    }

    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (line, content) in lines {
        let (u, v) = parse_pair(line, content)?;
        if seen == m {
            return Err(Error::Parse {
                line,
                message: format!("more edge lines than the declared {m}"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("vertex index {} is not below n = {n}", u.max(v)),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        g.add_edge(u, v);
        seen += 1;
    }
    if seen < m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} edge lines, found {seen}"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let malformed = || Error::Parse {
        line,
        message: format!("expected two non-negative integers, got `{content}`"),
    };
    let mut it = content.split_whitespace();
    let a = it
        .next()
        .ok_or_else(malformed)?
        .parse()
        .map_err(|_| malformed())?;
    let b = it
        .next()
        .ok_or_else(malformed)?
        .parse()
        .map_err(|_| malformed())?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

/// Edge-list text with edges sorted lexicographically and a trailing newline.
pub fn serialize(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A finite, ordered collection of graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphFamily {
    pub members: Vec<Graph>,
}

impl GraphFamily {
    pub fn new(members: Vec<Graph>) -> Self {
        GraphFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Graph> {
        self.members.iter()
    }
}

impl FromIterator<Graph> for GraphFamily {
    fn from_iter<I: IntoIterator<Item = Graph>>(iter: I) -> Self {
        GraphFamily::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a GraphFamily {
    type Item = &'a Graph;
    type IntoIter = std::slice::Iter<'a, Graph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_simple(g: &Graph) {
        for a in 0..g.n() {
            assert!(!g.has_edge(a, a));
            for b in 0..g.n() {
                assert_eq!(g.has_edge(a, b), g.has_edge(b, a));
            }
        }
    }

    #[test]
    fn parses_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parses_isolated_vertex_and_trailing_newline() {
        let g = parse_edge_list("1 0").unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
        let g = parse_edge_list("2 1\n0 1\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn comments_duplicates_and_orientation() {
        let g = parse_edge_list("# header comment\n3 3\n0 1\n# mid\n1 0\n2 1\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = |t: &str| match parse_edge_list(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(err("3 1\n0 x\n"), 2);
        assert_eq!(err("3 1\n0 3\n"), 2);
        assert_eq!(err("3 2\n0 1\n2 2\n"), 3);
        assert_eq!(err("3 1\n0 1\n1 2\n"), 3);
        assert_eq!(err("3 1 7\n"), 1);
        assert_eq!(err(""), 1);
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn generators() {
        let p = generate(GraphKind::Path, 4).unwrap();
        assert_eq!((p.n(), p.edge_count()), (4, 3));
        let g = generate(GraphKind::Grid, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert!((0..4).all(|v| g.degree(v) == 2));
        assert_eq!(generate(GraphKind::Complete, 4).unwrap().edge_count(), 6);
        let t = generate(GraphKind::BinaryTree, 3).unwrap();
        assert_eq!((t.n(), t.edge_count()), (15, 14));
        assert_eq!(generate(GraphKind::Cycle, 5).unwrap().edge_count(), 5);
        // 3x3 triangular patch: 12 lattice edges + 4 diagonals.
        assert_eq!(generate(GraphKind::Triangular, 3).unwrap().edge_count(), 16);
        let h = generate(GraphKind::Hexagonal, 4).unwrap();
        assert!((0..16).all(|v| h.degree(v) <= 3));
        assert_eq!(h.edge_count(), 12 + 6);
    }

    #[test]
    fn generator_argument_errors() {
        for kind in GraphKind::ALL {
            assert!(matches!(generate(kind, 0), Err(Error::Argument(_))));
        }
        assert!(generate(GraphKind::Cycle, 2).is_err());
        assert!(generate(GraphKind::BinaryTree, 40).is_err());
        assert!(generate(GraphKind::BinaryTree, 64).is_err());
        assert!(generate(GraphKind::Grid, 1 << 40).is_err());
        assert!(parse_edge_list("100000000 0").is_err());
    }

    #[test]
    fn generated_graphs_are_simple() {
        for kind in GraphKind::ALL {
            for size in 1..=5 {
                if let Ok(g) = generate(kind, size) {
                    assert_simple(&g);
                }
            }
        }
    }

    #[test]
    fn degree_profiles() {
        for k in 2..8 {
            let g = Graph::grid(k);
            assert!((0..g.n()).all(|v| (2..=4).contains(&g.degree(v))));
        }
        for n in 2..10 {
            let g = Graph::path(n);
            assert_eq!((0..n).filter(|&v| g.degree(v) == 1).count(), 2);
        }
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(Graph::path(3).neighbors(1).unwrap(), vec![0, 2]);
        assert!(Graph::empty(1).neighbors(0).unwrap().is_empty());
        assert_eq!(Graph::complete(3).neighbors(0).unwrap(), vec![1, 2]);
        assert!(Graph::path(3).neighbors(3).is_err());
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize(&Graph::path(3)), "3 2\n0 1\n1 2\n");
        assert_eq!(serialize(&Graph::empty(0)), "0 0\n");
        assert_eq!(parse_edge_list("0 0\n").unwrap(), Graph::empty(0));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in GraphKind::ALL {
            assert_eq!(kind.as_str().parse::<GraphKind>().unwrap(), kind);
        }
        assert_eq!(
            "binary-tree".parse::<GraphKind>().unwrap(),
            GraphKind::BinaryTree
        );
        assert!("torus".parse::<GraphKind>().is_err());
    }

    #[test]
    fn permuted_and_isolate() {
        let g = Graph::path(3).permuted(&[2, 0, 1]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
        assert!(Graph::path(3).permuted(&[0, 0, 1]).is_err());
        assert_eq!(Graph::path(3).isolate(1).edge_count(), 0);
    }
}
