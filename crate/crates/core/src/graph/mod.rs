//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Every adjacency row is a single `u64`, so neighborhood intersections,
//! clique tests and degree queries are word operations. Graphs are immutable
//! values: every operation that changes the edge set returns a new graph.

mod canon;
mod construct;
mod graph6;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use graph6::{graph6_decode, graph6_encode};

/// One adjacency row per machine word.
pub const MAX_VERTICES: usize = 64;

/// A subset of `{0, ..., 63}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// `{0, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(VertexSet::from_vertices(v))
    }
}

/// A simple undirected graph on vertices `0..n`.
///
/// `adj[v]` is the open neighborhood of `v`. Rows are symmetric, carry no
/// loops and have no bits at positions `>= n`; every constructor checks this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from raw adjacency rows, validating the invariants.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let outside = !VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & outside != 0 {
                return Err(Error::domain(format!("row {v} has bits beyond vertex {}", n.saturating_sub(1))));
            }
            if row >> v & 1 == 1 {
                return Err(Error::domain(format!("loop at vertex {v}")));
            }
            for u in VertexSet(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::domain(format!("edge {v}-{u} is not symmetric")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Rows produced internally by symmetric operations.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        let g = Graph { n: rows.len(), adj: rows };
        debug_assert!(g.check_invariants().is_ok(), "broken adjacency: {g:?}");
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let mut rows = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(format!("edge {u}-{v} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::domain(format!("loop at vertex {u}")));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn check_invariants(&self) -> Result<()> {
        Graph::from_rows(self.adj.clone()).map(|_| ())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// `N[v] = N(v) ∪ {v}`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v]).with(v)
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Δ(G); zero for the graph on no vertices.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// δ(G); zero for the graph on no vertices.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !VertexSet::full(u + 1).0) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.neighbors(v)))
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.neighbors(v).intersection(set).is_empty())
    }

    /// `∩_{x∈C} N(x)`, which is the whole vertex set when `C` is empty.
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(self.vertices(), |acc, v| acc.intersection(self.neighbors(v)))
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices().0;
        let rows = (0..self.n).map(|v| full & !self.adj[v] & !(1u64 << v)).collect();
        Graph::from_rows_unchecked(rows)
    }

    /// `self` on labels `0..n`, `other` shifted to `n..n+m`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let total = self.n + other.n;
        if total > MAX_VERTICES {
            return Err(Error::Capacity(total));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// The subgraph induced on `set`, relabeled to `0..|set|` in increasing
    /// order of original label. The returned map sends new labels to old.
    pub fn induced(&self, set: VertexSet) -> (Graph, Vec<usize>) {
        let map = set.difference(VertexSet(!self.vertices().0)).to_vec();
        let rows = map
            .iter()
            .map(|&old| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.has_edge(old, u))
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        (Graph::from_rows_unchecked(rows), map)
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut rows = vec![0u64; self.n];
        for v in 0..self.n {
            rows[perm[v]] = self.neighbors(v).iter().fold(0u64, |acc, u| acc | 1 << perm[u]);
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Returns a copy with the given pairs added and removed. Additions are
    /// applied before removals.
    pub fn edit(&self, add: &[(usize, usize)], remove: &[(usize, usize)]) -> Graph {
        let mut rows = self.adj.clone();
        for &(u, v) in add {
            if u != v {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        for &(u, v) in remove {
            rows[u] &= !(1 << v);
            rows[v] &= !(1 << u);
        }
        Graph::from_rows_unchecked(rows)
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let next = frontier
                    .iter()
                    .fold(VertexSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
                    .difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Size of the largest clique, via the per-size counts.
    pub fn clique_number(&self) -> usize {
        crate::counting::clique_vector(self).clique_number()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6_encode(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&graph6_encode(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        graph6_decode(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn rejects_broken_rows() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0b000]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert_eq!(Graph::from_rows(vec![0; 65]), Err(Error::Capacity(65)));
    }

    #[test]
    fn common_neighbors_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.common_neighbors(VertexSet::from_vertices([0, 1])), VertexSet::from_vertices([2, 3]));
        assert_eq!(c4().common_neighbors(VertexSet::from_vertices([1, 3])), VertexSet::from_vertices([0, 2]));
        assert_eq!(c4().common_neighbors(VertexSet::EMPTY), VertexSet::full(4));
    }

    #[test]
    fn induced_diagonal_of_c4() {
        let (h, map) = c4().induced(VertexSet::from_vertices([0, 2]));
        assert_eq!(h, Graph::empty(2).unwrap());
        assert_eq!(map, vec![0, 2]);
    }

    #[test]
    fn complement_and_union() {
        assert_eq!(Graph::complete(4).unwrap().complement(), Graph::empty(4).unwrap());
        let g = c4().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        assert_eq!(g.n(), 6);
        assert!(g.has_edge(4, 5));
        assert_eq!(g.components().len(), 2);
        let big = Graph::empty(40).unwrap();
        assert_eq!(big.disjoint_union(&big), Err(Error::Capacity(80)));
    }

    #[test]
    fn vertex_set_display() {
        assert_eq!(VertexSet::from_vertices([3, 0, 5]).to_string(), "{0,3,5}");
        assert_eq!(VertexSet::EMPTY.to_string(), "{}");
        assert_eq!(VertexSet::full(64).len(), 64);
    }
}
