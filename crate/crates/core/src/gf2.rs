//! Dense binary matrices over GF(2) and the cut-rank function.
//!
//! Rows are packed into `u64` words; elimination XORs whole words at a time.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A `rows × cols` matrix over GF(2), stored row-major and bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Any nonzero entry counts as 1.
    ///
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        let w = &mut self.bits[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Packed words of row `i`; bits past `cols` are always zero.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// Indices of the set bits in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i)
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| BitIter(word).map(move |b| w * WORD + b))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i).collect::<Vec<_>>() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row_words(i).to_vec()).collect();
        eliminate(&mut rows, self.cols)
    }

    /// Finds coefficients `c` with `Σ c_i · row_i = target`, or `None` if the
    /// target is outside the row space. Rows with `c_i = 1` are returned in
    /// ascending order.
    pub fn solve_left(&self, target: &[bool]) -> Option<Vec<usize>> {
        assert_eq!(
            target.len(),
            self.cols,
            "target length must equal column count"
        );
        // Augment each row with a unit vector recording which input rows it combines.
        let combo_words = words_for(self.rows);
        let mut rows: Vec<(Vec<u64>, Vec<u64>)> = (0..self.rows)
            .map(|i| {
                let mut tag = vec![0u64; combo_words];
                tag[i / WORD] |= 1 << (i % WORD);
                (self.row_words(i).to_vec(), tag)
            })
            .collect();
        let mut residual = vec![0u64; self.stride];
        for (j, &b) in target.iter().enumerate() {
            if b {
                residual[j / WORD] |= 1 << (j % WORD);
            }
        }
        let mut combo = vec![0u64; combo_words];
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let (w, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].0[w] & mask != 0) else {
                continue;
            };
            rows.swap(pivot_row, p);
            let (pivot_bits, pivot_tag) = rows[pivot_row].clone();
            for (bits, tag) in &mut rows[pivot_row + 1..] {
                if bits[w] & mask != 0 {
                    xor_into(bits, &pivot_bits);
                    xor_into(tag, &pivot_tag);
                }
            }
            if residual[w] & mask != 0 {
                xor_into(&mut residual, &pivot_bits);
                xor_into(&mut combo, &pivot_tag);
            }
            pivot_row += 1;
        }
        if residual.iter().any(|&w| w != 0) {
            return None;
        }
        Some(
            combo
                .iter()
                .enumerate()
                .flat_map(|(w, &word)| BitIter(word).map(move |b| w * WORD + b))
                .collect(),
        )
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Forward elimination in place; returns the number of pivots found.
pub(crate) fn eliminate(rows: &mut [Vec<u64>], cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let (w, mask) = (col / WORD, 1u64 << (col % WORD));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & mask != 0 {
                xor_into(row, pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a set of vectors packed into single words (at most 64 columns).
pub(crate) fn rank_small(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Rank of `m` over GF(2).
pub fn rank2(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Sorted, deduplicated copy of `set`, checked against the vertex range of `g`.
pub(crate) fn normalize_vertex_set(g: &Graph, set: &[usize]) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&a| a >= g.n()) {
        return Err(Error::arg(format!(
            "vertex {bad} out of range for a graph on {} vertices",
            g.n()
        )));
    }
    Ok(v)
}

/// The adjacency submatrix `Γ(A, V \ A)`, rows indexed by `A` ascending and
/// columns by the complement ascending.
pub fn cut_submatrix(g: &Graph, a: &[usize]) -> Result<Gf2Matrix> {
    let a = normalize_vertex_set(g, a)?;
    let mut in_a = vec![false; g.n()];
    for &v in &a {
        in_a[v] = true;
    }
    let b: Vec<usize> = (0..g.n()).filter(|&v| !in_a[v]).collect();
    Ok(Gf2Matrix::from_fn(a.len(), b.len(), |i, j| {
        g.has_edge(a[i], b[j])
    }))
}

/// `rank2(cut_submatrix(g, a))`.
pub fn cut_rank(g: &Graph, a: &[usize]) -> Result<usize> {
    Ok(cut_submatrix(g, a)?.rank())
}

/// Cut-rank for graphs on at most 64 vertices, with vertex sets as bitmasks.
///
/// `within` restricts the graph to an induced subgraph; `a` must be a subset of it.
pub(crate) fn cut_rank_mask(g: &Graph, a: u64, within: u64) -> usize {
    debug_assert!(g.n() <= 64);
    debug_assert_eq!(a & !within, 0);
    let b = within & !a;
    if a == 0 || b == 0 {
        return 0;
    }
    let mut rows: Vec<u64> = BitIter(a).map(|v| g.row_word(v) & b).collect();
    rank_small(&mut rows)
}
