use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::sweep::Tally;
use super::{generate, generate_forms};
use crate::bounds::{decompose, main_bound, main_bound_check, weight_cap_check, weight_identity_check};
use crate::counting::clique_count;
use crate::error::Result;
use crate::graph::{canonical_form, CanonicalForm, Graph};
use crate::record::ConsistencyRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub r: usize,
    pub graph_count: usize,
    pub max_k: u128,
    pub bound: u128,
    pub bound_holds: bool,
    /// Canonical forms reaching `max_k`, sorted.
    pub extremal: Vec<CanonicalForm>,
    pub expected_extremal: Vec<CanonicalForm>,
    pub equality_matches_characterization: bool,
    pub lemma_tallies: BTreeMap<String, Tally>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// The bound holds and the equality cases are exactly the predicted ones.
    pub fn passed(&self) -> bool {
        self.bound_holds && self.equality_matches_characterization
    }
}

/// Canonical forms of the graphs predicted to meet the bound:
/// `aK_{r+1} ∪ K_b`, and for `r = 2` also `(a-1)K_3 ∪ C_4` when `b = 1` and
/// `(a-1)K_3 ∪ C_5` when `b = 2`.
pub fn expected_extremal(n: usize, r: usize) -> Result<Vec<CanonicalForm>> {
    let mut out = vec![canonical_form(&Graph::extremal(n, r)?)];
    let d = decompose(n, r);
    if r == 2 && d.a >= 1 && d.b >= 1 {
        let triangles = Graph::clique_union(&vec![3; d.a - 1])?;
        let cycle = Graph::cycle(3 + d.b)?;
        out.push(canonical_form(&triangles.disjoint_union(&cycle)?));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The main bound on every class of `generate(n, r)`.
pub fn verify_main(n: usize, r: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    let graphs = generate(n, r)?;
    let mut report = verify_on(&graphs, n, r)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every `(n, r)` with `2 <= n <= n_max` and `1 <= r <= n - 1`. Each `n`
/// is generated once without a cap and filtered by maximum degree.
pub fn verify_main_range(n_max: usize) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let start = Instant::now();
        let all: Vec<Graph> = generate_forms(n, n - 1)?.iter().map(CanonicalForm::graph).collect();
        let generated = start.elapsed();
        for r in 1..n {
            let start = Instant::now();
            let capped: Vec<Graph> = all.iter().filter(|g| g.max_degree() <= r).cloned().collect();
            let mut report = verify_on(&capped, n, r)?;
            report.elapsed_ms = (start.elapsed() + generated / (n as u32 - 1)).as_millis() as u64;
            out.push(report);
        }
    }
    Ok(out)
}

/// The main bound over an explicit list of pairwise non-isomorphic graphs,
/// each on `n` vertices with `Δ <= r`.
pub fn verify_on(graphs: &[Graph], n: usize, r: usize) -> Result<VerificationReport> {
    let per_graph: Vec<(u128, Vec<ConsistencyRecord>)> = graphs
        .par_iter()
        .map(|g| {
            let mut recs = vec![main_bound_check(g, r), weight_cap_check(g, r)];
            recs.extend(weight_identity_check(g));
            (clique_count(g), recs)
        })
        .collect();
    let bound = main_bound(n, r);
    let max_k = per_graph.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut extremal: Vec<CanonicalForm> = graphs
        .iter()
        .zip(&per_graph)
        .filter(|(_, (k, _))| *k == max_k)
        .map(|(g, _)| canonical_form(g))
        .collect();
    extremal.sort();
    let expected = expected_extremal(n, r)?;
    let mut lemma_tallies: BTreeMap<String, Tally> = BTreeMap::new();
    for rec in per_graph.iter().flat_map(|(_, recs)| recs) {
        lemma_tallies.entry(rec.predicate.id().to_owned()).or_default().add(rec);
    }
    Ok(VerificationReport {
        n,
        r,
        graph_count: graphs.len(),
        max_k,
        bound,
        bound_holds: max_k <= bound,
        equality_matches_characterization: max_k == bound && extremal == expected,
        extremal,
        expected_extremal: expected,
        lemma_tallies,
        elapsed_ms: 0,
    })
}
