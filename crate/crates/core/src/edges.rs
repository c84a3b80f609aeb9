//! Edges of the complete graph on `0..n` and a dense bitset over them.

use serde::{Deserialize, Serialize};

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl From<[usize; 2]> for Edge {
    /// Unchecked: a loop `[a, a]` is kept so verifiers can reject it.
    fn from(e: [usize; 2]) -> Self {
        Edge {
            u: e[0].min(e[1]),
            v: e[0].max(e[1]),
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

pub fn total_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic enumeration of all `C(n, 2)` edges.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
}

/// Bitset over the edges of `K_n`, indexed in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    n: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(n: usize) -> Self {
        EdgeSet {
            n,
            words: vec![0; total_edges(n).div_ceil(64)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn index(&self, e: Edge) -> usize {
        let (u, v) = (e.u, e.v);
        u * (2 * self.n - u - 1) / 2 + (v - u - 1)
    }

    pub fn edge_at(&self, mut idx: usize) -> Edge {
        let mut u = 0;
        loop {
            let row = self.n - u - 1;
            if idx < row {
                return Edge { u, v: u + 1 + idx };
            }
            idx -= row;
            u += 1;
        }
    }

    /// Inserts `e`; returns true if it was absent.
    #[inline]
    pub fn insert(&mut self, e: Edge) -> bool {
        let i = self.index(e);
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        let i = self.index(e);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == total_edges(self.n)
    }

    /// Edges not in the set, in lexicographic order.
    pub fn complement(&self) -> Vec<Edge> {
        all_edges(self.n).filter(|e| !self.contains(*e)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        all_edges(self.n).filter(move |e| self.contains(*e))
    }
}
