//! Clique-count increasing rewrites around a tight clique `T`.
//!
//! `G_T` fills `T ∪ S_T` into a `K_{r+1}` and cuts every edge from `S_T` to
//! the rest of the graph. The `K_2` move is the partial version: when `R_T`
//! has a `K_2` component `{u, v}`, add `uv` and cut `u` and `v` loose from
//! the outside.

use serde::Serialize;

use crate::counting::{clique_count, independent_count};
use crate::error::{Error, Result};
use crate::fixed_loss::fixed_loss;
use crate::graph::{Graph, VertexSet};
use crate::record::{ConsistencyRecord, Predicate, Relation};
use crate::structure::{derive, tight_cliques, TightStructure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Move {
    #[serde(rename = "GT")]
    Gt,
    K2,
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Move::Gt => "GT",
            Move::K2 => "K2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RewriteReport {
    pub before: Graph,
    pub after: Graph,
    #[serde(rename = "move")]
    pub mv: Move,
    /// The `K_2` component used, as vertices of `G`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    pub k_before: u128,
    pub k_after: u128,
    pub gain_lower_bound: i128,
    pub structure: TightStructure,
}

impl RewriteReport {
    pub fn gain(&self) -> i128 {
        self.k_after as i128 - self.k_before as i128
    }
}

/// `2^{r+1} - 2^t i(R_T) - φ(R_T)`.
pub fn gain_lower_bound(ts: &TightStructure) -> i128 {
    let i = independent_count(&ts.deficiency) as i128;
    let phi = fixed_loss(&ts.deficiency).phi as i128;
    (1i128 << (ts.r + 1)) - (1i128 << ts.t()) * i - phi
}

/// Whether `T ∪ S` is a `K_{r+1}` whose vertices all have degree exactly `r`
/// and no degree exceeds `r`.
fn saturated(after: &Graph, r: usize, block: VertexSet) -> bool {
    block.len() == r + 1
        && after.is_clique(block)
        && block.iter().all(|v| after.degree(v) == r)
        && after.max_degree() <= r
}

fn cut(g: &Graph, add: &[(usize, usize)], detach: VertexSet, keep: VertexSet) -> Graph {
    let mut remove = Vec::new();
    for v in detach.iter() {
        for u in g.neighbors(v).difference(keep).iter() {
            remove.push((v, u));
        }
    }
    g.edit(add, &remove)
}

/// Rewrites `G` into `G_T`. Fails if `T` is not tight, and reports
/// [`Error::Inconsistent`] if the result is not the expected saturated
/// `K_{r+1}` block.
pub fn apply_gt(g: &Graph, r: usize, tight: VertexSet) -> Result<RewriteReport> {
    let ts = derive(g, r, tight)?;
    gt_from(g, ts)
}

fn gt_from(g: &Graph, ts: TightStructure) -> Result<RewriteReport> {
    let block = ts.tight.union(ts.common);
    let s = ts.common.to_vec();
    let mut add = Vec::new();
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            add.push((u, v));
        }
    }
    let after = cut(g, &add, ts.common, block);
    if !saturated(&after, ts.r, block) {
        return Err(Error::Inconsistent(format!("G_T of {g} at T = {} is not a saturated K_{}", ts.tight, ts.r + 1)));
    }
    Ok(RewriteReport {
        before: g.clone(),
        k_before: clique_count(g),
        k_after: clique_count(&after),
        after,
        mv: Move::Gt,
        pair: None,
        gain_lower_bound: gain_lower_bound(&ts),
        structure: ts,
    })
}

/// The `K_2` components of `R_T`, as vertex pairs of `G` in increasing
/// order.
pub fn k2_components(ts: &TightStructure) -> Vec<(usize, usize)> {
    ts.deficiency
        .components()
        .into_iter()
        .filter(|c| c.len() == 2 && ts.deficiency.is_clique(*c))
        .map(|c| {
            let v = c.to_vec();
            (ts.label_map[v[0]], ts.label_map[v[1]])
        })
        .collect()
}

/// The `K_2` move on the first `K_2` component of `R_T`.
pub fn apply_k2_move(g: &Graph, r: usize, tight: VertexSet) -> Result<RewriteReport> {
    let ts = derive(g, r, tight)?;
    let pair = *k2_components(&ts)
        .first()
        .ok_or_else(|| Error::domain(format!("R_T has no K_2 component for T = {tight}")))?;
    k2_from(g, ts, pair)
}

/// The `K_2` move on a chosen component `{u, v}` of `R_T`.
pub fn apply_k2_move_with(g: &Graph, r: usize, tight: VertexSet, pair: (usize, usize)) -> Result<RewriteReport> {
    let ts = derive(g, r, tight)?;
    let (u, v) = (pair.0.min(pair.1), pair.0.max(pair.1));
    if !k2_components(&ts).contains(&(u, v)) {
        return Err(Error::domain(format!("{{{u},{v}}} is not a K_2 component of R_T for T = {tight}")));
    }
    k2_from(g, ts, (u, v))
}

/// The resulting count is not checked against `k(G)`; see
/// [`k2_gain_check`].
fn k2_from(g: &Graph, ts: TightStructure, pair: (usize, usize)) -> Result<RewriteReport> {
    if ts.t() < 2 {
        return Err(Error::domain(format!("the K_2 move needs |T| >= 2, got T = {}", ts.tight)));
    }
    let block = ts.tight.union(ts.common);
    let ends = VertexSet::from_vertices([pair.0, pair.1]);
    let after = cut(g, &[pair], ends, block);
    if after.max_degree() > ts.r {
        return Err(Error::Inconsistent(format!("K_2 move on {g} at T = {} exceeds degree {}", ts.tight, ts.r)));
    }
    Ok(RewriteReport {
        before: g.clone(),
        k_before: clique_count(g),
        k_after: clique_count(&after),
        after,
        mv: Move::K2,
        pair: Some(pair),
        gain_lower_bound: gain_lower_bound(&ts),
        structure: ts,
    })
}

/// The two profitability thresholds, cross-multiplied:
/// literal `2^t (2^s - i(R) + s + 1) > φ(R)` and corrected
/// `2^t (2^s - i(R)) > φ(R)`. The corrected form is exactly
/// `gain_lower_bound > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Profitability {
    pub literal: bool,
    pub corrected: bool,
}

pub fn gt_profitable(ts: &TightStructure) -> Profitability {
    let s = ts.s() as i128;
    let i = independent_count(&ts.deficiency) as i128;
    let phi = fixed_loss(&ts.deficiency).phi as i128;
    let scale = 1i128 << ts.t();
    Profitability {
        literal: scale * ((1i128 << s) - i + s + 1) > phi,
        corrected: scale * ((1i128 << s) - i) > phi,
    }
}

fn subject(report: &RewriteReport) -> String {
    format!("G={} T={}", report.before, report.structure.tight)
}

/// `k(G_T) >= k(G) + gain_lower_bound`.
pub fn gain_check(report: &RewriteReport) -> ConsistencyRecord {
    ConsistencyRecord::compare(
        Predicate::GainLowerBound,
        subject(report),
        report.k_after,
        Relation::Ge,
        report.k_before as i128 + report.gain_lower_bound,
    )
    .with_clique_size(report.structure.t())
}

/// The literal and corrected profitability predicates, each recorded as an
/// implication: applicable when the threshold holds, passing when the
/// rewrite really gains.
pub fn profit_checks(report: &RewriteReport) -> [ConsistencyRecord; 2] {
    let p = gt_profitable(&report.structure);
    let t = report.structure.t();
    let record = |pred, holds: bool| {
        if holds {
            ConsistencyRecord::compare(pred, subject(report), report.k_after, Relation::Gt, report.k_before)
                .with_clique_size(t)
        } else {
            ConsistencyRecord::not_applicable(pred, subject(report), "threshold not met").with_clique_size(t)
        }
    };
    [record(Predicate::ProfitLiteral, p.literal), record(Predicate::ProfitCorrected, p.corrected)]
}

/// A `K_2` move strictly increases `k`.
pub fn k2_gain_check(report: &RewriteReport) -> ConsistencyRecord {
    let (u, v) = report.pair.unwrap_or_default();
    ConsistencyRecord::compare(Predicate::K2MoveGain, subject(report), report.k_after, Relation::Gt, report.k_before)
        .with_clique_size(report.structure.t())
        .with_note(format!("uv={u}{v}"))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClimbStrategy {
    /// Take the first strictly improving move.
    #[default]
    FirstImprovement,
    /// Take the move with the largest gain, ties to the first.
    BestImprovement,
}

/// Candidate moves in order: tight cliques `T` of size at least one by size
/// then bitmask; for each, `G_T` first, then the `K_2` moves by pair.
fn moves(g: &Graph, r: usize) -> Result<Vec<RewriteReport>> {
    let mut out = Vec::new();
    for t in tight_cliques(g, r, 1)? {
        let ts = derive(g, r, t)?;
        let pairs = if ts.t() >= 2 { k2_components(&ts) } else { Vec::new() };
        out.push(gt_from(g, ts.clone())?);
        for pair in pairs {
            out.push(k2_from(g, ts.clone(), pair)?);
        }
    }
    Ok(out)
}

/// Applies strictly improving moves until none is left or `max_steps` moves
/// were made. Every step is a recount, not a bound.
pub fn hill_climb(g: &Graph, r: usize, max_steps: usize, strategy: ClimbStrategy) -> Result<Vec<RewriteReport>> {
    let mut trace: Vec<RewriteReport> = Vec::new();
    let mut current = g.clone();
    while trace.len() < max_steps {
        let improving = moves(&current, r)?.into_iter().filter(|m| m.k_after > m.k_before);
        let step = match strategy {
            ClimbStrategy::FirstImprovement => improving.into_iter().next(),
            ClimbStrategy::BestImprovement => improving.fold(None, |best: Option<RewriteReport>, m| match best {
                Some(b) if b.gain() >= m.gain() => Some(b),
                _ => Some(m),
            }),
        };
        let Some(step) = step else { break };
        current = step.after.clone();
        trace.push(step);
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staging() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 5)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn gt_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let rep = apply_gt(&c4, 2, set(&[0])).unwrap();
        assert_eq!(rep.after, Graph::from_edges(4, &[(0, 1), (0, 3), (1, 3)]).unwrap());
        assert_eq!((rep.k_before, rep.k_after, rep.gain_lower_bound), (9, 9, 0));

        let k4 = Graph::complete(4).unwrap();
        let rep = apply_gt(&k4, 3, set(&[0, 1])).unwrap();
        assert_eq!(rep.after, k4);
        let rep = apply_gt(&k4, 3, k4.vertices()).unwrap();
        assert_eq!((rep.gain(), rep.gain_lower_bound), (0, 0));

        let g = staging();
        let rep = apply_gt(&g, 3, set(&[0, 1])).unwrap();
        assert_eq!(rep.after, Graph::clique_union(&[4, 1, 1]).unwrap());
        assert_eq!((rep.k_before, rep.k_after, rep.gain_lower_bound), (16, 18, 2));
        assert_eq!(apply_gt(&g, 3, set(&[0])).unwrap().k_after, 18);
        assert_eq!(apply_gt(&g, 3, set(&[2])).unwrap().k_after, 19);

        assert!(matches!(apply_gt(&c4, 2, set(&[0, 1])), Err(Error::NotTight { .. })));
    }

    #[test]
    fn k2_examples() {
        let g = staging();
        let rep = apply_k2_move(&g, 3, set(&[0, 1])).unwrap();
        assert_eq!(rep.pair, Some((2, 3)));
        assert_eq!(rep.after, Graph::clique_union(&[4, 1, 1]).unwrap());
        assert_eq!((rep.k_before, rep.k_after), (16, 18));
        assert!(k2_gain_check(&rep).passed());

        // K_4 minus an edge: 12 cliques before, 16 after
        let g4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let rep = apply_k2_move(&g4, 3, set(&[0, 1])).unwrap();
        assert_eq!(rep.after, Graph::complete(4).unwrap());
        assert_eq!((rep.k_before, rep.k_after), (12, 16));

        let k4 = Graph::complete(4).unwrap();
        assert!(matches!(apply_k2_move(&k4, 3, set(&[0, 1])), Err(Error::Domain(_))));
        assert!(matches!(apply_k2_move(&g, 3, set(&[0])), Err(Error::Domain(_))));
        assert!(matches!(apply_k2_move_with(&g, 3, set(&[0, 1]), (2, 4)), Err(Error::Domain(_))));
    }

    #[test]
    fn gain_bounds() {
        let c4 = Graph::cycle(4).unwrap();
        let ts = derive(&c4, 2, set(&[0])).unwrap();
        assert_eq!(gain_lower_bound(&ts), 0);
        assert_eq!(gt_profitable(&ts), Profitability { literal: true, corrected: false });
        let rep = apply_gt(&c4, 2, set(&[0])).unwrap();
        let [literal, corrected] = profit_checks(&rep);
        assert!(literal.failed());
        assert!(!corrected.applicable);
        assert!(gain_check(&rep).passed());

        let g = staging();
        let ts = derive(&g, 3, set(&[0, 1])).unwrap();
        assert_eq!(gain_lower_bound(&ts), 2);
        assert!(gt_profitable(&ts).corrected);

        let k4 = Graph::complete(4).unwrap();
        let ts = derive(&k4, 3, k4.vertices()).unwrap();
        assert_eq!(gain_lower_bound(&ts), 0);
        assert!(!gt_profitable(&ts).corrected);
    }

    #[test]
    fn climbs() {
        let trace = hill_climb(&staging(), 3, 10, ClimbStrategy::FirstImprovement).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].k_after, 18);
        assert_eq!(trace[0].structure.tight, set(&[0]));

        let best = hill_climb(&staging(), 3, 10, ClimbStrategy::BestImprovement).unwrap();
        assert_eq!(best.last().unwrap().k_after, 19);

        assert!(hill_climb(&Graph::cycle(4).unwrap(), 2, 10, ClimbStrategy::FirstImprovement).unwrap().is_empty());
        for (n, r) in [(7, 2), (10, 3), (9, 4)] {
            let g = Graph::extremal(n, r).unwrap();
            assert!(hill_climb(&g, r, 10, ClimbStrategy::BestImprovement).unwrap().is_empty());
        }
        assert!(hill_climb(&Graph::complete(4).unwrap(), 3, 10, ClimbStrategy::FirstImprovement).unwrap().is_empty());
        assert!(matches!(
            hill_climb(&Graph::complete(4).unwrap(), 2, 10, ClimbStrategy::FirstImprovement),
            Err(Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn climbs_never_lose() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(2..=9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let r = g.max_degree().max(1);
            let trace = hill_climb(&g, r, 20, ClimbStrategy::FirstImprovement).unwrap();
            let mut k = clique_count(&g);
            for step in &trace {
                assert!(step.k_before == k && step.k_after > k);
                assert!(step.after.max_degree() <= r);
                k = step.k_after;
            }
        }
    }
}
