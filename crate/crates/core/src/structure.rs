//! Tight cliques, clusters, and the `S_T` / `R_T` data of a tight clique.
//!
//! With `Δ(G) <= r` every clique satisfies `w(C) <= r + 1 - |C|`; the
//! cliques meeting this with equality are tight. A cluster is a maximal
//! tight clique of size at least one.

use serde::Serialize;

use crate::counting::{clique_weight, cliques_of_size};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::record::{ConsistencyRecord, Predicate, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightStructure {
    pub r: usize,
    /// `T`.
    pub tight: VertexSet,
    /// `S_T`, the common neighborhood of `T`.
    pub common: VertexSet,
    /// `R_T`: the non-edges of `G` on `S_T`, with `S_T` relabeled to
    /// `0..s` in increasing order.
    pub deficiency: Graph,
    /// `label_map[i]` is the vertex of `G` behind vertex `i` of `R_T`.
    pub label_map: Vec<usize>,
    pub is_cluster: bool,
}

impl TightStructure {
    pub fn t(&self) -> usize {
        self.tight.len()
    }

    pub fn s(&self) -> usize {
        self.common.len()
    }
}

fn check_cap(g: &Graph, r: usize) -> Result<()> {
    let max = g.max_degree();
    if max > r {
        return Err(Error::DegreeCap { max, cap: r });
    }
    Ok(())
}

/// `w(C) = r + 1 - |C|`. The empty clique has weight `n`.
pub fn is_tight(g: &Graph, r: usize, clique: VertexSet) -> Result<bool> {
    check_cap(g, r)?;
    let w = clique_weight(g, clique)?;
    Ok(w + clique.len() == r + 1)
}

/// Every tight clique of size at least `min_size`, ordered by size and then
/// by bitmask.
///
/// A nonempty tight clique lies inside a single cluster and every nonempty
/// subset of a cluster is tight, so the nonempty ones are generated from
/// the clusters.
pub fn tight_cliques(g: &Graph, r: usize, min_size: usize) -> Result<Vec<VertexSet>> {
    let classes = closed_neighborhood_classes(g, r)?;
    let mut out = Vec::new();
    if min_size == 0 && g.n() == r + 1 {
        out.push(VertexSet::EMPTY);
    }
    let mut sized: Vec<VertexSet> = Vec::new();
    for class in classes {
        let members = class.to_vec();
        for mask in 1u64..1 << members.len() {
            let set = VertexSet::from_vertices(
                members.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v),
            );
            if set.len() >= min_size {
                sized.push(set);
            }
        }
    }
    sized.sort_by_key(|s| (s.len(), s.bits()));
    out.extend(sized);
    Ok(out)
}

/// Classes of `N[x] = N[y]` among the degree-`r` vertices, by least member.
fn closed_neighborhood_classes(g: &Graph, r: usize) -> Result<Vec<VertexSet>> {
    check_cap(g, r)?;
    let mut classes: Vec<(VertexSet, VertexSet)> = Vec::new();
    for x in (0..g.n()).filter(|&x| g.degree(x) == r) {
        let closed = g.closed_neighbors(x);
        match classes.iter_mut().find(|(key, _)| *key == closed) {
            Some((_, members)) => *members = members.with(x),
            None => classes.push((closed, VertexSet::singleton(x))),
        }
    }
    Ok(classes.into_iter().map(|(_, members)| members).collect())
}

/// Grows `{x}` one tight extension at a time, smallest vertex first.
fn grow_tight(g: &Graph, r: usize, x: usize) -> Result<VertexSet> {
    let mut t = VertexSet::singleton(x);
    'grow: loop {
        for y in g.common_neighbors(t).iter() {
            if is_tight(g, r, t.with(y))? {
                t = t.with(y);
                continue 'grow;
            }
        }
        return Ok(t);
    }
}

/// All clusters, ordered by least vertex.
///
/// Computed twice, once by growing tight cliques and once from the
/// closed-neighborhood classes of degree-`r` vertices; a disagreement is
/// reported as [`Error::Inconsistent`].
pub fn clusters(g: &Graph, r: usize) -> Result<Vec<TightStructure>> {
    let classes = closed_neighborhood_classes(g, r)?;
    let mut grown: Vec<VertexSet> = Vec::new();
    for x in 0..g.n() {
        if grown.iter().any(|c| c.contains(x)) || !is_tight(g, r, VertexSet::singleton(x))? {
            continue;
        }
        grown.push(grow_tight(g, r, x)?);
    }
    if grown != classes {
        return Err(Error::Inconsistent(format!(
            "maximal tight cliques {grown:?} differ from closed-neighborhood classes {classes:?} in {g}"
        )));
    }
    grown.into_iter().map(|t| derive(g, r, t)).collect()
}

pub fn derive(g: &Graph, r: usize, tight: VertexSet) -> Result<TightStructure> {
    if !is_tight(g, r, tight)? {
        return Err(Error::NotTight { set: tight, cap: r });
    }
    let common = g.common_neighbors(tight);
    if tight.len() + common.len() != r + 1 {
        return Err(Error::Inconsistent(format!("|T| + |S| != r + 1 for T = {tight} in {g}")));
    }
    let (induced, label_map) = g.induced(common);
    let mut is_cluster = true;
    for y in common.iter() {
        if is_tight(g, r, tight.with(y))? {
            is_cluster = false;
            break;
        }
    }
    Ok(TightStructure { r, tight, common, deficiency: induced.complement(), label_map, is_cluster })
}

/// The `c`-cliques meeting `T` in exactly `c - 1` vertices, by bitmask.
pub fn associated_cliques(g: &Graph, tight: VertexSet, c: usize) -> Vec<VertexSet> {
    if c == 0 {
        return Vec::new();
    }
    cliques_of_size(g, c).filter(|k| k.intersection(tight).len() == c - 1).collect()
}

/// `|N(x) ∖ (T ∪ S)| <= d_R(x)` for every `x ∈ S`. The record carries the
/// vertex with the largest excess.
pub fn outside_degree_check(g: &Graph, ts: &TightStructure) -> ConsistencyRecord {
    let inside = ts.tight.union(ts.common);
    let worst = ts
        .label_map
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, g.neighbors(x).difference(inside).len(), ts.deficiency.degree(i)))
        .max_by_key(|&(x, out, d)| (out as i64 - d as i64, std::cmp::Reverse(x)));
    let subject = format!("G={g} T={}", ts.tight);
    match worst {
        None => ConsistencyRecord::compare(Predicate::OutsideDegree, subject, 0, Relation::Le, 0)
            .with_clique_size(ts.t())
            .with_note("S is empty"),
        Some((x, out, d)) => ConsistencyRecord::compare(Predicate::OutsideDegree, subject, out, Relation::Le, d)
            .with_clique_size(ts.t())
            .with_note(format!("x={x}")),
    }
}
