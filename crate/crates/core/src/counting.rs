//! Exact per-size clique and independent-set counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// `(k_0, ..., k_n)`: `counts[t]` is the number of `t`-vertex cliques.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliqueVector(Vec<u128>);

impl CliqueVector {
    pub fn new(counts: Vec<u128>) -> Self {
        CliqueVector(counts)
    }

    /// `k_t`; zero past the end.
    pub fn get(&self, t: usize) -> u128 {
        self.0.get(t).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u128] {
        &self.0
    }

    pub fn total(&self) -> u128 {
        self.0.iter().sum()
    }

    /// Largest `t` with `k_t > 0`.
    pub fn clique_number(&self) -> usize {
        self.0.iter().rposition(|&k| k > 0).unwrap_or(0)
    }

    /// Drops trailing zeros beyond `k_0`.
    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

impl std::fmt::Display for CliqueVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (t, k) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// Binomial coefficients up to 64 choose 64.
fn binomials() -> &'static [[u128; 65]; 65] {
    static TABLE: std::sync::OnceLock<[[u128; 65]; 65]> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = [[0u128; 65]; 65];
        for n in 0..65 {
            c[n][0] = 1;
            for k in 1..=n {
                c[n][k] = c[n - 1][k - 1] + if k < n { c[n - 1][k] } else { 0 };
            }
        }
        c
    })
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        binomials()[n][k]
    }
}

/// Per-size clique counts by pivoting.
///
/// With candidate set `P` and pivot `p` (the candidate with the most
/// neighbors in `P`), every clique inside `P` either lies in `N[p]` or
/// contains a non-neighbor of `p`. The `p` branch keeps `p` as an optional
/// vertex, each non-neighbor branch forces its vertex; a leaf with `h`
/// forced and `q` optional vertices stands for `C(q, j)` cliques of size
/// `h + j`.
pub fn clique_vector(g: &Graph) -> CliqueVector {
    let mut counts = vec![0u128; g.n() + 1];
    pivot_count(g.rows(), g.vertices().bits(), 0, 0, &mut counts);
    CliqueVector(counts).trimmed()
}

fn pivot_count(rows: &[u64], cand: u64, forced: usize, optional: usize, counts: &mut [u128]) {
    if cand == 0 {
        let c = &binomials()[optional];
        for (j, &ways) in c.iter().enumerate().take(optional + 1) {
            counts[forced + j] += ways;
        }
        return;
    }
    let mut pivot = 0;
    let mut best = 0;
    let mut bits = cand;
    let mut first = true;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = (rows[v] & cand).count_ones();
        if first || d > best {
            pivot = v;
            best = d;
            first = false;
        }
    }
    pivot_count(rows, cand & rows[pivot], forced, optional + 1, counts);
    let mut remaining = cand & !(1u64 << pivot);
    let mut branch = cand & !rows[pivot] & !(1u64 << pivot);
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        pivot_count(rows, remaining & rows[v], forced + 1, optional, counts);
        remaining &= !(1u64 << v);
    }
}

/// Independent sets counted as cliques of the complement.
pub fn independent_vector(g: &Graph) -> CliqueVector {
    clique_vector(&g.complement())
}

/// `k(G)`.
pub fn clique_count(g: &Graph) -> u128 {
    clique_vector(g).total()
}

/// `i(G)`.
pub fn independent_count(g: &Graph) -> u128 {
    independent_vector(g).total()
}

/// `w(C)`: the number of common neighbors of the clique `C`.
pub fn clique_weight(g: &Graph, clique: VertexSet) -> Result<usize> {
    if !clique.is_subset(g.vertices()) || !g.is_clique(clique) {
        return Err(Error::NotClique(clique));
    }
    Ok(g.common_neighbors(clique).len())
}

/// Every `t`-clique exactly once, in increasing order of the bitmask value
/// (equivalently, lexicographic in the vertex lists read from the largest
/// vertex down).
pub fn cliques_of_size(g: &Graph, t: usize) -> CliquesOfSize<'_> {
    let mut stack = Vec::with_capacity(t + 1);
    if t <= g.n() {
        stack.push(Frame { chosen: 0, cand: g.vertices().bits() });
    }
    CliquesOfSize { rows: g.rows(), t, stack }
}

pub struct CliquesOfSize<'g> {
    rows: &'g [u64],
    t: usize,
    stack: Vec<Frame>,
}

/// Cliques grow downward: each new vertex is below every chosen one, and
/// `cand` holds the untried vertices for the next slot.
struct Frame {
    chosen: u64,
    cand: u64,
}

impl Iterator for CliquesOfSize<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while let Some(top) = self.stack.last_mut() {
            let depth = top.chosen.count_ones() as usize;
            if depth == self.t {
                let chosen = top.chosen;
                self.stack.pop();
                return Some(VertexSet(chosen));
            }
            if top.cand == 0 {
                self.stack.pop();
                continue;
            }
            let v = top.cand.trailing_zeros() as usize;
            top.cand &= top.cand - 1;
            if v + 1 < self.t - depth {
                // not enough vertices below v to finish
                continue;
            }
            let chosen = top.chosen | 1u64 << v;
            let mut cand = (1u64 << v) - 1;
            let mut bits = chosen;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                cand &= self.rows[u];
            }
            self.stack.push(Frame { chosen, cand });
        }
        None
    }
}

/// Subset-scan oracle: marks every subset of `V` as complete or not, one
/// subset at a time, and tallies by size. Only for `n <= 24`.
pub fn brute_force_clique_vector(g: &Graph) -> Result<CliqueVector> {
    const LIMIT: usize = 24;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::Limit { what: format!("subset scan over {n} vertices"), limit: LIMIT });
    }
    let rows = g.rows();
    let mut complete = vec![false; 1usize << n];
    let mut counts = vec![0u128; n + 1];
    complete[0] = true;
    counts[0] = 1;
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = complete[rest] && (rows[low] as usize) & rest == rest;
        complete[mask] = ok;
        if ok {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(CliqueVector(counts).trimmed())
}
