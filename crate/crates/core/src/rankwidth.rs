//! Subcubic trees, rank decompositions and rank-width.
//!
//! A rank decomposition of `G` is a tree whose internal vertices all have
//! degree 3 and whose leaves are labelled bijectively by `V(G)`. Deleting a
//! tree edge splits the leaves into two sides; the width of the decomposition
//! is the largest cut-rank over these splits, and the rank-width is the
//! smallest width over all such trees.
//!
//! Trees on `n` leaves are enumerated by insertion: start from the single
//! edge between leaves 0 and 1, then attach leaf `k` by subdividing one edge
//! of the current tree, trying edges in index order, depth first. Every
//! labelled tree arises exactly once, which gives `(2n - 5)!!` trees.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{cut_rank, cut_rank_mask};
use crate::graph::Graph;

/// Default leaf-count cap for exhaustive search.
pub const DEFAULT_EXACT_CAP: usize = 12;

/// Absolute ceiling for exhaustive search, whatever cap is configured.
pub const MAX_EXACT: usize = 20;

/// A tree with `2n - 2` vertices, each of degree 1 or 3, whose `n` leaves carry
/// distinct labels `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcubicTree {
    leaf_count: usize,
    edges: Vec<(usize, usize)>,
    // tree vertex -> graph vertex, leaves only
    leaf_labels: BTreeMap<usize, usize>,
}

impl SubcubicTree {
    /// Validates and builds a tree from tree edges on vertices `0..2n-2` and a
    /// leaf labelling.
    pub fn new(
        leaf_count: usize,
        edges: Vec<(usize, usize)>,
        leaf_labels: BTreeMap<usize, usize>,
    ) -> Result<Self> {
        if leaf_count < 2 {
            return Err(Error::arg("a subcubic tree needs at least 2 leaves"));
        }
        let nodes = 2 * leaf_count - 2;
        if edges.len() != nodes - 1 {
            return Err(Error::arg(format!(
                "a tree on {nodes} vertices has {} edges, got {}",
                nodes - 1,
                edges.len()
            )));
        }
        let mut degree = vec![0usize; nodes];
        let mut uf = DisjointSets::new(nodes);
        for &(u, v) in &edges {
            if u >= nodes || v >= nodes || u == v {
                return Err(Error::arg(format!("invalid tree edge ({u}, {v})")));
            }
            if !uf.union(u, v) {
                return Err(Error::arg("tree edges contain a cycle"));
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(bad) = degree.iter().position(|&d| d != 1 && d != 3) {
            return Err(Error::arg(format!(
                "tree vertex {bad} has degree {}, expected 1 or 3",
                degree[bad]
            )));
        }
        let leaves: BTreeSet<usize> = (0..nodes).filter(|&v| degree[v] == 1).collect();
        let labelled: BTreeSet<usize> = leaf_labels.keys().copied().collect();
        let targets: BTreeSet<usize> = leaf_labels.values().copied().collect();
        if leaves != labelled || targets != (0..leaf_count).collect() {
            return Err(Error::arg(
                "leaf labels must map the leaves bijectively onto 0..n",
            ));
        }
        Ok(SubcubicTree {
            leaf_count,
            edges,
            leaf_labels,
        })
    }

    /// Tree whose leaf `i` is tree vertex `i`, labelled with graph vertex `i`.
    fn from_insertion_edges(leaf_count: usize, edges: &[(usize, usize)]) -> Self {
        SubcubicTree {
            leaf_count,
            edges: edges.to_vec(),
            leaf_labels: (0..leaf_count).map(|v| (v, v)).collect(),
        }
    }

    /// The caterpillar whose leaves, read along the spine, are `order`.
    ///
    /// Every non-pendant edge separates a prefix of `order` from the rest.
    pub fn caterpillar(order: &[usize]) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::arg("a caterpillar needs at least 2 leaves"));
        }
        let labels = order.iter().enumerate().map(|(t, &v)| (t, v)).collect();
        if n == 2 {
            return Self::new(2, vec![(0, 1)], labels);
        }
        // Leaves are tree vertices 0..n, spine vertices n..2n-2.
        let spine = |j: usize| n + j;
        let mut edges = vec![(0, spine(0)), (1, spine(0))];
        for leaf in 2..n - 1 {
            edges.push((spine(leaf - 2), spine(leaf - 1)));
            edges.push((leaf, spine(leaf - 1)));
        }
        edges.push((n - 1, spine(n - 3)));
        Self::new(n, edges, labels)
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn node_count(&self) -> usize {
        2 * self.leaf_count - 2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn leaf_labels(&self) -> &BTreeMap<usize, usize> {
        &self.leaf_labels
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Graph-vertex sides of every tree edge, in edge order. The first set is
    /// the side containing the edge's first endpoint.
    pub fn bipartitions(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let sides = side_sets(self.node_count(), &self.edges, |t| {
            self.leaf_labels.get(&t).copied()
        });
        sides
            .into_iter()
            .map(|a| {
                let mut in_a = vec![false; self.leaf_count];
                for &v in &a {
                    in_a[v] = true;
                }
                let b = (0..self.leaf_count).filter(|&v| !in_a[v]).collect();
                (a, b)
            })
            .collect()
    }

    /// The decomposition in its JSON interchange form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TreeJson::from(self)).expect("tree serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TreeJson =
            serde_json::from_str(text).map_err(|e| Error::arg(format!("bad tree JSON: {e}")))?;
        let mut labels = BTreeMap::new();
        for (k, v) in raw.leaf_labels {
            let t = k
                .parse()
                .map_err(|_| Error::arg(format!("tree vertex key `{k}` is not an integer")))?;
            labels.insert(t, v);
        }
        Self::new(
            raw.n,
            raw.edges.into_iter().map(|[u, v]| (u, v)).collect(),
            labels,
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    leaf_labels: BTreeMap<String, usize>,
}

impl From<&SubcubicTree> for TreeJson {
    fn from(t: &SubcubicTree) -> Self {
        TreeJson {
            n: t.leaf_count,
            edges: t.edges.iter().map(|&(u, v)| [u, v]).collect(),
            leaf_labels: t
                .leaf_labels
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect(),
        }
    }
}

/// A subcubic tree together with its width for a particular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDecomposition {
    pub tree: SubcubicTree,
    pub width: usize,
}

impl RankDecomposition {
    /// Computes the width of `tree` on `g`.
    pub fn new(g: &Graph, tree: SubcubicTree) -> Result<Self> {
        let width = decomposition_width(g, &tree)?;
        Ok(RankDecomposition { tree, width })
    }
}

/// For each edge `(u, v)`, the labels reachable from `u` without crossing it.
fn side_sets(
    nodes: usize,
    edges: &[(usize, usize)],
    label: impl Fn(usize) -> Option<usize>,
) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nodes];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    edges
        .iter()
        .map(|&(u, v)| {
            let mut out = Vec::new();
            let mut stack = vec![(u, v)];
            while let Some((x, from)) = stack.pop() {
                out.extend(label(x));
                stack.extend(adj[x].iter().filter(|&&y| y != from).map(|&y| (y, x)));
            }
            out.sort_unstable();
            out
        })
        .collect()
}

/// The leaf labels on each side of tree edge `e`; the first set is the side
/// of `e.0`.
pub fn tree_edge_bipartition(
    t: &SubcubicTree,
    e: (usize, usize),
) -> Result<(Vec<usize>, Vec<usize>)> {
    let idx = t
        .edges
        .iter()
        .position(|&(u, v)| (u, v) == e || (v, u) == e)
        .ok_or_else(|| Error::arg(format!("({}, {}) is not an edge of the tree", e.0, e.1)))?;
    let (a, b) = t.bipartitions().swap_remove(idx);
    Ok(if t.edges[idx] == e { (a, b) } else { (b, a) })
}

/// Width of `t` as a decomposition of `g`: the largest cut-rank over tree edges.
pub fn decomposition_width(g: &Graph, t: &SubcubicTree) -> Result<usize> {
    if t.leaf_count != g.n() {
        return Err(Error::arg(format!(
            "tree has {} leaves but the graph has {} vertices",
            t.leaf_count,
            g.n()
        )));
    }
    t.bipartitions()
        .iter()
        .map(|(a, _)| cut_rank(g, a))
        .try_fold(0, |acc, r| r.map(|r| acc.max(r)))
}

// Insertion moves shared by the enumerator and the exact search. Leaves are
// tree vertices 0..n; leaf k is attached through internal vertex n + k - 2.

#[inline]
fn insert_leaf(edges: &mut Vec<(usize, usize)>, n: usize, k: usize, at: usize) {
    let w = n + k - 2;
    let (u, v) = edges[at];
    edges[at] = (u, w);
    edges.push((w, v));
    edges.push((k, w));
}

#[inline]
fn remove_leaf(edges: &mut Vec<(usize, usize)>, at: usize) {
    edges.pop();
    let (_, v) = edges.pop().expect("inserted edge");
    edges[at].1 = v;
}

/// Lazily enumerates all leaf-labelled subcubic trees on `n` leaves.
pub struct SubcubicTrees {
    n: usize,
    edges: Vec<(usize, usize)>,
    // choices[i] is the edge index where leaf i + 2 was inserted
    choices: Vec<usize>,
    started: bool,
    done: bool,
}

impl SubcubicTrees {
    fn new(n: usize) -> Self {
        SubcubicTrees {
            n,
            edges: Vec::with_capacity(2 * n),
            choices: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    fn fill_from(&mut self, k: usize) {
        for leaf in k..self.n {
            insert_leaf(&mut self.edges, self.n, leaf, 0);
            self.choices.push(0);
        }
    }

    /// Advances to the next tree and returns its edge list, leaf `i` being tree vertex `i`.
    fn advance(&mut self) -> Option<&[(usize, usize)]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.edges.push((0, 1));
            self.fill_from(2);
            return Some(&self.edges);
        }
        while let Some(c) = self.choices.pop() {
            let k = self.choices.len() + 2;
            remove_leaf(&mut self.edges, c);
            if c + 1 < 2 * k - 3 {
                insert_leaf(&mut self.edges, self.n, k, c + 1);
                self.choices.push(c + 1);
                self.fill_from(k + 1);
                return Some(&self.edges);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for SubcubicTrees {
    type Item = SubcubicTree;

    fn next(&mut self) -> Option<SubcubicTree> {
        let n = self.n;
        self.advance()
            .map(|edges| SubcubicTree::from_insertion_edges(n, edges))
    }
}

/// All leaf-labelled subcubic trees with `n` leaves, each exactly once, in
/// insertion order.
pub fn enumerate_subcubic_trees(n: usize) -> Result<SubcubicTrees> {
    if n < 2 {
        return Err(Error::arg(format!(
            "subcubic trees need at least 2 leaves, got {n}"
        )));
    }
    Ok(SubcubicTrees::new(n))
}

/// Number of trees `enumerate_subcubic_trees(n)` yields, found by walking the
/// enumeration without materialising trees.
pub fn count_subcubic_trees(n: usize) -> Result<u64> {
    let mut it = enumerate_subcubic_trees(n)?;
    let mut count = 0u64;
    while it.advance().is_some() {
        count += 1;
    }
    Ok(count)
}

/// Configuration for the exhaustive rank-width search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactSearch {
    /// Largest vertex count accepted; larger graphs are refused.
    pub cap: usize,
    /// Abandon partial trees that already reach the best width found.
    pub prune: bool,
}

impl Default for ExactSearch {
    fn default() -> Self {
        ExactSearch {
            cap: DEFAULT_EXACT_CAP,
            prune: true,
        }
    }
}

/// Result of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub width: usize,
    /// First optimal tree in enumeration order; `None` for graphs with fewer
    /// than two vertices, whose rank-width is 0 by convention.
    pub decomposition: Option<RankDecomposition>,
    /// Partial and complete trees whose width was evaluated.
    pub trees_examined: u64,
}

impl ExactSearch {
    pub fn with_cap(cap: usize) -> Self {
        ExactSearch {
            cap,
            ..Self::default()
        }
    }

    pub fn run(&self, g: &Graph) -> Result<ExactOutcome> {
        let n = g.n();
        let limit = self.cap.min(MAX_EXACT);
        if n > limit {
            return Err(Error::SizeLimit {
                what: "exact rank-width",
                size: n,
                limit,
            });
        }
        if n < 2 {
            return Ok(ExactOutcome {
                width: 0,
                decomposition: None,
                trees_examined: 0,
            });
        }
        let mut search = Search::new(g, self.prune);
        if self.prune {
            // A tree no wider than the greedy one exists, so this bound never
            // hides the first optimum.
            let greedy = greedy_decomposition(g)?;
            search.best = greedy.width + 1;
        }
        search.edges.push((0, 1));
        search.examined += 1;
        if n == 2 {
            let w = search.width(2);
            search.complete(w);
        } else {
            search.descend(2);
        }
        let edges = search.best_edges.expect("some tree is within the bound");
        let tree = SubcubicTree::from_insertion_edges(n, &edges);
        Ok(ExactOutcome {
            width: search.best,
            decomposition: Some(RankDecomposition {
                tree,
                width: search.best,
            }),
            trees_examined: search.examined,
        })
    }
}

struct Search {
    n: usize,
    prune: bool,
    // rank[s][mask]: cut-rank of `mask` inside the subgraph induced by 0..s
    rank: Vec<Vec<u8>>,
    edges: Vec<(usize, usize)>,
    best: usize,
    best_edges: Option<Vec<(usize, usize)>>,
    lower_bound: usize,
    examined: u64,
    adj: Vec<Vec<usize>>,
    sub: Vec<u64>,
}

impl Search {
    fn new(g: &Graph, prune: bool) -> Self {
        let n = g.n();
        let rank = (0..=n)
            .map(|s| {
                let within = if s == 64 { u64::MAX } else { (1u64 << s) - 1 };
                (0..=within)
                    .map(|a| cut_rank_mask(g, a, within) as u8)
                    .collect()
            })
            .collect();
        Search {
            n,
            prune,
            rank,
            edges: Vec::with_capacity(2 * n),
            best: usize::MAX,
            best_edges: None,
            lower_bound: usize::from(g.edge_count() > 0),
            examined: 0,
            adj: vec![Vec::with_capacity(3); 2 * n],
            sub: vec![0; 2 * n],
        }
    }

    fn finished(&self) -> bool {
        self.prune && self.best <= self.lower_bound
    }

    fn complete(&mut self, width: usize) {
        if width < self.best {
            self.best = width;
            self.best_edges = Some(self.edges.clone());
        }
    }

    /// `leaves` leaves (0..leaves) are in the tree; insert the next one everywhere.
    fn descend(&mut self, leaves: usize) {
        let k = leaves;
        for at in 0..2 * k - 3 {
            insert_leaf(&mut self.edges, self.n, k, at);
            self.examined += 1;
            let w = self.width(k + 1);
            if !self.prune || w < self.best {
                if k + 1 == self.n {
                    self.complete(w);
                } else {
                    self.descend(k + 1);
                }
            }
            remove_leaf(&mut self.edges, at);
            if self.finished() {
                return;
            }
        }
    }

    /// Width of the current partial tree on leaves 0..s, measured in the
    /// subgraph induced by those leaves.
    fn width(&mut self, s: usize) -> usize {
        // Root at leaf 0; sub[v] is the leaf set below v.
        for a in &mut self.adj {
            a.clear();
        }
        for &(u, v) in &self.edges {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        let mut order = Vec::with_capacity(2 * s);
        let mut parent = vec![usize::MAX; 2 * self.n];
        let mut stack = vec![0usize];
        parent[0] = 0;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &self.adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let table = &self.rank[s];
        let mut width = 0;
        for &x in order.iter().rev() {
            let own = if x < self.n { 1u64 << x } else { 0 };
            let below = own
                | self.adj[x]
                    .iter()
                    .filter(|&&y| parent[y] == x && y != 0)
                    .map(|&y| self.sub[y])
                    .fold(0, |a, b| a | b);
            self.sub[x] = below;
            if x != 0 {
                width = width.max(table[below as usize] as usize);
            }
        }
        width
    }
}

/// Exact rank-width with the default search configuration.
pub fn exact_rankwidth(g: &Graph) -> Result<(usize, Option<RankDecomposition>)> {
    let out = ExactSearch::default().run(g)?;
    Ok((out.width, out.decomposition))
}

/// Upper bound on rank-width from a greedy linear layout.
///
/// Starts at a vertex of minimum degree and repeatedly appends the vertex
/// that keeps the prefix cut-rank smallest (lowest index on ties); the layout
/// becomes a caterpillar decomposition.
pub fn greedy_decomposition(g: &Graph) -> Result<RankDecomposition> {
    let n = g.n();
    if n < 2 {
        return Err(Error::arg("a decomposition needs at least 2 vertices"));
    }
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 2");
    let mut order = vec![start];
    let mut placed = vec![false; n];
    placed[start] = true;
    while order.len() < n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| !placed[v]) {
            order.push(v);
            let r = if n <= 64 {
                let mask = order.iter().fold(0u64, |m, &x| m | 1 << x);
                cut_rank_mask(g, mask, if n == 64 { u64::MAX } else { (1 << n) - 1 })
            } else {
                cut_rank(g, &order)?
            };
            order.pop();
            if best.is_none_or(|(br, _)| r < br) {
                best = Some((r, v));
            }
        }
        let (_, v) = best.expect("an unplaced vertex remains");
        placed[v] = true;
        order.push(v);
    }
    RankDecomposition::new(g, SubcubicTree::caterpillar(&order)?)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
