//! Named graph families.

use super::{Graph, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity(n))
    } else {
        Ok(())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        Ok(Graph::from_rows_unchecked(vec![0; n]))
    }

    pub fn complete(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        let full = VertexSet::full(n).0;
        Ok(Graph::from_rows_unchecked((0..n).map(|v| full & !(1u64 << v)).collect()))
    }

    /// `C_n` with edges `i, i+1 (mod n)`.
    pub fn cycle(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        if n < 3 {
            return Err(Error::domain(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `P_n` with edges `i, i+1`.
    pub fn path(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `K_{p,q}` with parts `0..p` and `p..p+q`.
    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph> {
        Graph::complete_multipartite(&[p, q])
    }

    /// Complete multipartite graph with consecutive parts of the given sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
        let n: usize = parts.iter().sum();
        check_capacity(n)?;
        let full = VertexSet::full(n).0;
        let mut rows = vec![0u64; n];
        let mut start = 0;
        for &p in parts {
            let part = VertexSet::full(start + p).0 & !VertexSet::full(start).0;
            for row in &mut rows[start..start + p] {
                *row = full & !part;
            }
            start += p;
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Disjoint union of cliques of the given sizes on consecutive labels.
    pub fn clique_union(sizes: &[usize]) -> Result<Graph> {
        let n: usize = sizes.iter().sum();
        check_capacity(n)?;
        let mut rows = vec![0u64; n];
        let mut start = 0;
        for &p in sizes {
            let block = VertexSet::full(start + p).0 & !VertexSet::full(start).0;
            for (v, row) in rows.iter_mut().enumerate().skip(start).take(p) {
                *row = block & !(1u64 << v);
            }
            start += p;
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// `aK_{r+1} ∪ K_b` where `n = a(r+1) + b` and `0 <= b <= r`.
    pub fn extremal(n: usize, r: usize) -> Result<Graph> {
        check_capacity(n)?;
        let a = n / (r + 1);
        let b = n % (r + 1);
        let mut sizes = vec![r + 1; a];
        if b > 0 {
            sizes.push(b);
        }
        Graph::clique_union(&sizes)
    }

    /// The Turán graph `T_{n,w}`: balanced complete `w`-partite, larger
    /// parts first.
    pub fn turan(n: usize, w: usize) -> Result<Graph> {
        check_capacity(n)?;
        if w == 0 || w > n {
            return Err(Error::domain(format!("Turán graph needs 1 <= w <= n, got n={n}, w={w}")));
        }
        let parts: Vec<usize> = (0..w).map(|i| n / w + usize::from(i < n % w)).collect();
        Graph::complete_multipartite(&parts)
    }

    /// The lex graph `L(n, m)`: the first `m` pairs of `{0..n}` in
    /// lexicographic order as edges.
    pub fn lex(n: usize, m: usize) -> Result<Graph> {
        check_capacity(n)?;
        let pairs = n * n.saturating_sub(1) / 2;
        if m > pairs {
            return Err(Error::domain(format!("lex graph on {n} vertices has at most {pairs} edges, got {m}")));
        }
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .take(m)
            .collect();
        Graph::from_edges(n, &edges)
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are in range")
    }
}
