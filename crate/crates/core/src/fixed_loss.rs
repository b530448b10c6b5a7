//! Fixed loss `φ(R) = Σ_{∅≠I∈I(R)} (2^{δ_I} - 1)`, where `δ_I` is the least
//! `R`-degree over `I`.
//!
//! `φ(R_T)` bounds how many cliques the `G_T` rewrite can destroy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{graph6_encode, Graph, VertexSet};
use crate::record::{ConsistencyRecord, Predicate, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLossBreakdown {
    /// `φ(R)`.
    pub phi: u128,
    /// `φ'(R)`: independent sets meeting the degree-one vertices.
    pub phi_degree_one: u128,
    /// `φ''(R)`: the remaining nonempty independent sets.
    pub phi_rest: u128,
    /// `Σ |I| (2^{δ_I} - 1)`.
    pub weighted: u128,
    /// Number of degree-one vertices.
    pub degree_one: usize,
    /// Vertex count of `R`.
    pub s: usize,
}

/// `δ_I`: minimum degree over a nonempty `I`.
pub fn delta_i(r: &Graph, set: VertexSet) -> Result<usize> {
    if !set.is_subset(r.vertices()) {
        return Err(Error::domain(format!("{set} is not a vertex subset of R")));
    }
    set.iter()
        .map(|v| r.degree(v))
        .min()
        .ok_or_else(|| Error::domain("δ_I is undefined for the empty set"))
}

pub fn fixed_loss(r: &Graph) -> FixedLossBreakdown {
    let degree_one = VertexSet::from_vertices((0..r.n()).filter(|&v| r.degree(v) == 1));
    let mut acc = FixedLossBreakdown {
        phi: 0,
        phi_degree_one: 0,
        phi_rest: 0,
        weighted: 0,
        degree_one: degree_one.len(),
        s: r.n(),
    };
    let walk = Walk { r, degree_one: degree_one.bits() };
    walk.extend(r.vertices().bits(), 0, usize::MAX, false, &mut acc);
    acc
}

struct Walk<'a> {
    r: &'a Graph,
    degree_one: u64,
}

impl Walk<'_> {
    /// Visits every independent set obtained by adding vertices of `cand` in
    /// increasing order to the current one.
    fn extend(&self, cand: u64, size: usize, min_deg: usize, meets: bool, acc: &mut FixedLossBreakdown) {
        let mut bits = cand;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let delta = min_deg.min(self.r.degree(v));
            let meets = meets || self.degree_one >> v & 1 == 1;
            let term = (1u128 << delta) - 1;
            acc.phi += term;
            acc.weighted += (size as u128 + 1) * term;
            if meets {
                acc.phi_degree_one += term;
            } else {
                acc.phi_rest += term;
            }
            let next = bits & !self.r.rows()[v];
            self.extend(next, size + 1, delta, meets, acc);
        }
    }
}

/// `φ(K_s) = s(2^{s-1} - 1)`.
pub fn complete_loss(s: usize) -> u128 {
    if s == 0 {
        0
    } else {
        s as u128 * ((1u128 << (s - 1)) - 1)
    }
}

/// Whether `R` has an isolated vertex or an isolated edge.
pub fn has_k1_or_k2_component(r: &Graph) -> bool {
    r.components().iter().any(|c| c.len() <= 2)
}

fn subject(r: &Graph) -> String {
    format!("R={}", graph6_encode(r))
}

/// `φ(R) <= s(2^{s-1} - 1)` and the weighted strengthening
/// `Σ |I|(2^{δ_I} - 1) <= s(2^{s-1} - 1)`.
pub fn max_bound_check(r: &Graph) -> [ConsistencyRecord; 2] {
    let fl = fixed_loss(r);
    let cap = complete_loss(fl.s);
    [
        ConsistencyRecord::compare(Predicate::FixedLossMax, subject(r), fl.phi, Relation::Le, cap),
        ConsistencyRecord::compare(Predicate::FixedLossWeighted, subject(r), fl.weighted, Relation::Le, cap),
    ]
}

/// `φ(K_s) = s(2^{s-1} - 1)`, computed from `K_s` itself.
pub fn complete_value_check(s: usize) -> Result<ConsistencyRecord> {
    let ks = Graph::complete(s)?;
    Ok(ConsistencyRecord::compare(
        Predicate::FixedLossComplete,
        format!("s={s}"),
        fixed_loss(&ks).phi,
        Relation::Eq,
        complete_loss(s),
    ))
}

/// `φ(R) <= 2^s + (s - ℓ - 2) 2^{s-ℓ-1}` for `R` without `K_1` or `K_2`
/// components. Both sides are doubled so the exponent stays nonnegative.
pub fn degree_one_bound_check(r: &Graph) -> ConsistencyRecord {
    if has_k1_or_k2_component(r) {
        return ConsistencyRecord::not_applicable(Predicate::FixedLossDegreeOne, subject(r), "K_1 or K_2 component");
    }
    let fl = fixed_loss(r);
    let (s, l) = (fl.s as i128, fl.degree_one as i128);
    let rhs = (1i128 << (s + 1)) + (s - l - 2) * (1i128 << (s - l));
    ConsistencyRecord::compare(Predicate::FixedLossDegreeOne, subject(r), 2 * fl.phi as i128, Relation::Le, rhs)
        .with_note("both sides doubled")
}

/// `φ'(R) <= (2^ℓ - 1) 2^{s-ℓ-1}`, doubled as above.
pub fn degree_one_split_check(r: &Graph) -> ConsistencyRecord {
    if has_k1_or_k2_component(r) {
        return ConsistencyRecord::not_applicable(Predicate::FixedLossDegreeOneSplit, subject(r), "K_1 or K_2 component");
    }
    let fl = fixed_loss(r);
    let (s, l) = (fl.s as u32, fl.degree_one as u32);
    let rhs = ((1u128 << l) - 1) << (s - l);
    ConsistencyRecord::compare(
        Predicate::FixedLossDegreeOneSplit,
        subject(r),
        2 * fl.phi_degree_one,
        Relation::Le,
        rhs,
    )
    .with_note("both sides doubled")
}
