//! Closed-form bounds and the checks that confront them with a graph.
//!
//! Everything is exact: fractional statements are cross-multiplied, real
//! roots become integer powers, and half-integer weights are doubled.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::counting::{
    binomial, clique_count, clique_vector, clique_weight, cliques_of_size, independent_count, independent_vector,
    CliqueVector,
};
use crate::error::{Error, Result};
use crate::fixed_loss::fixed_loss;
use crate::graph::{Graph, VertexSet};
use crate::record::{ConsistencyRecord, Predicate, Relation};
use crate::structure::{associated_cliques, clusters, tight_cliques, TightStructure};
use crate::transform::{apply_gt, k2_components, RewriteReport};

/// `n = a(r+1) + b` with `0 <= b <= r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub a: usize,
    pub b: usize,
}

pub fn decompose(n: usize, r: usize) -> Decomposition {
    Decomposition { a: n / (r + 1), b: n % (r + 1) }
}

/// `k(aK_{r+1} ∪ K_b) = a(2^{r+1} - 1) + 2^b`.
///
/// # Panics
/// If the value overflows `u128`, which needs `n > 127`.
pub fn main_bound(n: usize, r: usize) -> u128 {
    let Decomposition { a, b } = decompose(n, r);
    let block = if a == 0 { 0 } else { (1u128 << (r + 1)) - 1 };
    (a as u128)
        .checked_mul(block)
        .and_then(|x| x.checked_add(1u128.checked_shl(b as u32)?))
        .expect("main bound exceeds u128")
}

fn pow(base: u128, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// `k(G) <= a(2^{r+1} - 1) + 2^b` when `Δ(G) <= r`.
pub fn main_bound_check(g: &Graph, r: usize) -> ConsistencyRecord {
    let subject = format!("G={g} r={r}");
    if g.max_degree() > r {
        return ConsistencyRecord::not_applicable(Predicate::MainBound, subject, "Δ(G) > r");
    }
    ConsistencyRecord::compare(Predicate::MainBound, subject, clique_count(g), Relation::Le, main_bound(g.n(), r))
}

/// `t k_t = Σ_{C ∈ K_{t-1}} w(C)` for every `t >= 1`, one record per `t`.
pub fn weight_identity_check(g: &Graph) -> Vec<ConsistencyRecord> {
    let k = clique_vector(g);
    (1..=g.n())
        .map(|t| {
            let sum: u128 = cliques_of_size(g, t - 1).map(|c| g.common_neighbors(c).len() as u128).sum();
            ConsistencyRecord::compare(
                Predicate::WeightIdentity,
                format!("G={g} t={t}"),
                t as u128 * k.get(t),
                Relation::Eq,
                sum,
            )
        })
        .collect()
}

/// `w(C) <= r + 1 - |C|` over all nonempty cliques; the record carries the
/// clique with the largest excess.
pub fn weight_cap_check(g: &Graph, r: usize) -> ConsistencyRecord {
    let subject = format!("G={g} r={r}");
    if g.max_degree() > r {
        return ConsistencyRecord::not_applicable(Predicate::WeightCap, subject, "Δ(G) > r");
    }
    let mut worst: Option<(i64, VertexSet, usize)> = None;
    for t in 1..=g.n() {
        for c in cliques_of_size(g, t) {
            let w = g.common_neighbors(c).len();
            let excess = w as i64 + t as i64 - r as i64 - 1;
            if worst.is_none_or(|(e, _, _)| excess > e) {
                worst = Some((excess, c, w));
            }
        }
    }
    match worst {
        None => ConsistencyRecord::compare(Predicate::WeightCap, subject, 0, Relation::Le, 0).with_note("no cliques"),
        Some((_, c, w)) => ConsistencyRecord::compare(Predicate::WeightCap, subject, w, Relation::Le, r + 1 - c.len())
            .with_note(format!("C={c}")),
    }
}

/// `t k_t <= (r - t + 1) k_{t-1}` for `t = 3..=n`.
pub fn strong_inequalities(k: &CliqueVector, n: usize, r: usize) -> Vec<ConsistencyRecord> {
    (3..=n)
        .map(|t| {
            let lhs = BigInt::from(t) * k.get(t);
            let rhs = (BigInt::from(r) - t + 1) * k.get(t - 1);
            ConsistencyRecord::compare(Predicate::StrongInequality, format!("k={k} r={r} t={t}"), lhs, Relation::Le, rhs)
                .with_clique_size(t)
        })
        .collect()
}

pub fn strong_inequalities_hold(k: &CliqueVector, n: usize, r: usize) -> bool {
    strong_inequalities(k, n, r).iter().all(ConsistencyRecord::passed)
}

/// Without tight cliques of size at least two, `G` satisfies the strong
/// inequalities; one record per `t`, or a single not-applicable record.
pub fn strong_inequality_claim(g: &Graph, r: usize) -> Result<Vec<ConsistencyRecord>> {
    if g.max_degree() > r || !tight_cliques(g, r, 2)?.is_empty() {
        return Ok(vec![ConsistencyRecord::not_applicable(
            Predicate::StrongInequality,
            format!("G={g} r={r}"),
            "tight clique of size >= 2 or Δ(G) > r",
        )]);
    }
    Ok(strong_inequalities(&clique_vector(g), g.n(), r))
}

/// `1 + n(2^r - 2)/(r - 1)`.
pub fn strong_chain_bound(n: usize, r: usize) -> Result<BigRational> {
    if r < 2 {
        return Err(Error::domain(format!("the strong chain bound needs r >= 2, got {r}")));
    }
    let num = BigInt::from(n) * ((BigInt::from(1) << r) - 2);
    Ok(BigRational::from_integer(1.into()) + BigRational::new(num, BigInt::from(r - 1)))
}

/// `(r - 1) + n(2^r - 2) <= (r - 1) main_bound(n, r)`, with equality exactly
/// at `r = 3, n = 6`. Needs `a >= 1` and `r >= 3`.
pub fn strong_chain_vs_main(n: usize, r: usize) -> ConsistencyRecord {
    let subject = format!("n={n} r={r}");
    if r < 3 || decompose(n, r).a == 0 {
        return ConsistencyRecord::not_applicable(Predicate::StrongChainVsMain, subject, "needs r >= 3 and a >= 1");
    }
    let lhs = BigInt::from(r - 1) + BigInt::from(n) * ((BigInt::from(1) << r) - 2);
    let rhs = BigInt::from(r - 1) * main_bound(n, r);
    let equal = lhs == rhs;
    let rec = ConsistencyRecord::compare(Predicate::StrongChainVsMain, subject, lhs, Relation::Le, rhs)
        .with_note("multiplied by r - 1");
    let pass = rec.passed() && equal == (r == 3 && n == 6);
    rec.with_pass(pass)
}

/// If `G` satisfies the strong inequalities then
/// `(r - 1) k(G) <= (r - 1) + n(2^r - 2)`.
pub fn strong_chain_check(g: &Graph, r: usize) -> ConsistencyRecord {
    let subject = format!("G={g} r={r}");
    let k = clique_vector(g);
    if r < 2 || g.max_degree() > r || !strong_inequalities_hold(&k, g.n(), r) {
        return ConsistencyRecord::not_applicable(Predicate::StrongChain, subject, "strong inequalities fail or r < 2");
    }
    let lhs = BigInt::from(r - 1) * k.total();
    let rhs = BigInt::from(r - 1) + BigInt::from(g.n()) * ((BigInt::from(1) << r) - 2);
    ConsistencyRecord::compare(Predicate::StrongChain, subject, lhs, Relation::Le, rhs).with_note("multiplied by r - 1")
}

/// If `G` satisfies the strong inequalities, `r >= 3` and `a >= 1`, then
/// `k(G) < a(2^{r+1} - 1) + 2^b`.
pub fn strong_strict_check(g: &Graph, r: usize) -> ConsistencyRecord {
    let subject = format!("G={g} r={r}");
    let k = clique_vector(g);
    if r < 3 || decompose(g.n(), r).a == 0 || g.max_degree() > r || !strong_inequalities_hold(&k, g.n(), r) {
        return ConsistencyRecord::not_applicable(
            Predicate::StrongStrict,
            subject,
            "strong inequalities fail, r < 3 or a = 0",
        );
    }
    ConsistencyRecord::compare(Predicate::StrongStrict, subject, k.total(), Relation::Lt, main_bound(g.n(), r))
}

/// `i(G)^{2d} <= (2^{d+1} - 1)^n` for `d`-regular `G`, `d >= 1`.
pub fn kahn_zhao_check(g: &Graph, d: usize) -> ConsistencyRecord {
    let subject = format!("G={g} d={d}");
    if d == 0 || !g.is_regular(d) {
        return ConsistencyRecord::not_applicable(Predicate::KahnZhao, subject, "not d-regular with d >= 1");
    }
    let i = independent_count(g);
    ConsistencyRecord::compare(Predicate::KahnZhao, subject, pow(i, 2 * d), Relation::Le, pow((1 << (d + 1)) - 1, g.n()))
}

/// `i(G)^{d+1} >= (d+2)^n` for `d`-regular `G`.
pub fn min_ind_check(g: &Graph, d: usize) -> ConsistencyRecord {
    let subject = format!("G={g} d={d}");
    if !g.is_regular(d) {
        return ConsistencyRecord::not_applicable(Predicate::RegularMinIndependent, subject, "not d-regular");
    }
    let i = independent_count(g);
    ConsistencyRecord::compare(Predicate::RegularMinIndependent, subject, pow(i, d + 1), Relation::Ge, pow(d as u128 + 2, g.n()))
}

/// `i(G)^{d+1} >= (d+2)^n` for `Δ(G) <= d`.
pub fn min_ind_capped_check(g: &Graph, d: usize) -> ConsistencyRecord {
    let subject = format!("G={g} d={d}");
    if g.max_degree() > d {
        return ConsistencyRecord::not_applicable(Predicate::CappedMinIndependent, subject, "Δ(G) > d");
    }
    let i = independent_count(g);
    ConsistencyRecord::compare(Predicate::CappedMinIndependent, subject, pow(i, d + 1), Relation::Ge, pow(d as u128 + 2, g.n()))
}

/// The divisibility signposts with parameter `p`:
/// - `G` `p`-regular on `a(p+1)` vertices: `i_t(G) >= (p+1)^t C(a,t)` for
///   `t = 1..=a`, `i(G) >= (p+2)^a`, and every independent `(t-1)`-set has
///   at least `(a-t+1)(p+1)` extensions for `t = 1..=a`;
/// - `Δ(G) <= p` on `a(p+1)` vertices: `k_t(G) <= a C(p+1,t)` for
///   `t = 1..=p+1` and `k(G) <= 1 + a(2^{p+1} - 1)`.
///
/// Inapplicable families come back as a single not-applicable record each.
pub fn signpost_checks(g: &Graph, p: usize) -> Vec<ConsistencyRecord> {
    let n = g.n();
    let subject = |t: Option<usize>| match t {
        Some(t) => format!("G={g} p={p} t={t}"),
        None => format!("G={g} p={p}"),
    };
    let mut out = Vec::new();
    let divides = n.is_multiple_of(p + 1);
    let a = n / (p + 1);

    if divides && g.is_regular(p) {
        let iv = independent_vector(g);
        for t in 1..=a {
            let rhs = pow(p as u128 + 1, t) * binomial(a, t);
            out.push(
                ConsistencyRecord::compare(Predicate::RegularIndependentPerSize, subject(Some(t)), iv.get(t), Relation::Ge, rhs)
                    .with_clique_size(t),
            );
        }
        out.push(ConsistencyRecord::compare(
            Predicate::RegularIndependentTotal,
            subject(None),
            iv.total(),
            Relation::Ge,
            pow(p as u128 + 2, a),
        ));
        let co = g.complement();
        for t in 1..=a {
            let fewest = cliques_of_size(&co, t - 1)
                .map(|set| {
                    let closed = set.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(g.closed_neighbors(v)));
                    n - closed.len()
                })
                .min()
                .unwrap_or(usize::MAX);
            if fewest == usize::MAX {
                continue;
            }
            out.push(
                ConsistencyRecord::compare(
                    Predicate::IndependentExtension,
                    subject(Some(t)),
                    fewest,
                    Relation::Ge,
                    (a + 1 - t) * (p + 1),
                )
                .with_clique_size(t),
            );
        }
    } else {
        let reason = "needs a p-regular graph with (p+1) | n";
        for pred in [
            Predicate::RegularIndependentPerSize,
            Predicate::RegularIndependentTotal,
            Predicate::IndependentExtension,
        ] {
            out.push(ConsistencyRecord::not_applicable(pred, subject(None), reason));
        }
    }

    if divides && g.max_degree() <= p {
        let k = clique_vector(g);
        for t in 1..=p + 1 {
            out.push(
                ConsistencyRecord::compare(
                    Predicate::CappedCliquePerSize,
                    subject(Some(t)),
                    k.get(t),
                    Relation::Le,
                    a as u128 * binomial(p + 1, t),
                )
                .with_clique_size(t),
            );
        }
        out.push(ConsistencyRecord::compare(
            Predicate::CappedCliqueTotal,
            subject(None),
            k.total(),
            Relation::Le,
            1 + a as u128 * ((1u128 << (p + 1)) - 1),
        ));
    } else {
        let reason = "needs Δ(G) <= p with (p+1) | n";
        for pred in [Predicate::CappedCliquePerSize, Predicate::CappedCliqueTotal] {
            out.push(ConsistencyRecord::not_applicable(pred, subject(None), reason));
        }
    }
    out
}

/// `k(T_{n,w}) = Π (1 + part size)`.
pub fn turan_clique_count(n: usize, w: usize) -> u128 {
    if w == 0 {
        return u128::from(n == 0);
    }
    (0..w).map(|i| 1 + (n / w + usize::from(i < n % w)) as u128).product()
}

/// `k(G) <= k(T_{n,ω(G)})`.
pub fn zykov_check(g: &Graph) -> ConsistencyRecord {
    let k = clique_vector(g);
    let w = k.clique_number();
    ConsistencyRecord::compare(Predicate::Zykov, format!("G={g}"), k.total(), Relation::Le, turan_clique_count(g.n(), w))
        .with_note(format!("ω={w}"))
}

/// `i(K_{d,n-d}) = 2^d + 2^{n-d} - 1`.
pub fn galvin_bound(n: usize, d: usize) -> Result<u128> {
    if d > n {
        return Err(Error::domain(format!("d = {d} exceeds n = {n}")));
    }
    Ok((1u128 << d) + (1u128 << (n - d)) - 1)
}

/// `i(G) <= i(K_{d,n-d})` for `δ(G) >= d >= 1` and `n >= 2d`.
pub fn galvin_check(g: &Graph, d: usize) -> ConsistencyRecord {
    let n = g.n();
    let subject = format!("G={g} d={d}");
    if d == 0 || n < 2 * d || g.min_degree() < d {
        return ConsistencyRecord::not_applicable(Predicate::Galvin, subject, "needs δ(G) >= d >= 1 and n >= 2d");
    }
    let bound = galvin_bound(n, d).expect("d <= n/2");
    ConsistencyRecord::compare(Predicate::Galvin, subject, independent_count(g), Relation::Le, bound)
}

fn rewrite_subject(report: &RewriteReport) -> String {
    format!("G={} T={}", report.before, report.structure.tight)
}

/// For a cluster with `k(G_T) <= k(G)`: `φ(R) >= 2^r + s 2^t` and `2^t < s`.
/// `report` is the `G_T` rewrite of the cluster.
pub fn heavy_cluster_check(report: &RewriteReport) -> [ConsistencyRecord; 2] {
    let ts = &report.structure;
    let subject = rewrite_subject(report);
    if !ts.is_cluster || report.k_after > report.k_before {
        let why = "needs a cluster with k(G_T) <= k(G)";
        return [Predicate::HeavyClusterLoss, Predicate::HeavyClusterSize]
            .map(|p| ConsistencyRecord::not_applicable(p, subject.clone(), why).with_clique_size(ts.t()));
    }
    let (t, s) = (ts.t(), ts.s());
    let phi = fixed_loss(&ts.deficiency).phi;
    let floor = (1u128 << ts.r) + (s as u128) * (1u128 << t);
    [
        ConsistencyRecord::compare(Predicate::HeavyClusterLoss, subject.clone(), phi, Relation::Ge, floor),
        ConsistencyRecord::compare(Predicate::HeavyClusterSize, subject, 1u128 << t, Relation::Lt, s),
    ]
    .map(|rec| degenerate_note(rec.with_clique_size(t), s))
}

/// For `r >= 3`, a cluster with `k(G_T) <= k(G)` whose `R` has no `K_2`
/// component, and `2 <= c <= t`: at least `2 C(t, c)` associated
/// `c`-cliques have weight at most `r - c - 1`.
pub fn associated_low_weight_check(report: &RewriteReport, c: usize) -> ConsistencyRecord {
    let ts = &report.structure;
    let g = &report.before;
    let subject = format!("{} c={c}", rewrite_subject(report));
    let r = ts.r;
    let t = ts.t();
    if r < 3 || !ts.is_cluster || report.k_after > report.k_before || !k2_components(ts).is_empty() || c < 2 || c > t {
        return ConsistencyRecord::not_applicable(Predicate::AssociatedLowWeight, subject, "hypotheses fail")
            .with_clique_size(t);
    }
    let low = associated_cliques(g, ts.tight, c)
        .into_iter()
        .filter(|&k| g.common_neighbors(k).len() + c < r)
        .count();
    let rec = ConsistencyRecord::compare(Predicate::AssociatedLowWeight, subject, low, Relation::Ge, 2 * binomial(t, c));
    degenerate_note(rec.with_clique_size(t), ts.s())
}

/// Marks records whose cluster is a whole `K_{r+1}` component.
fn degenerate_note(rec: ConsistencyRecord, s: usize) -> ConsistencyRecord {
    if s == 0 {
        rec.with_note(DEGENERATE_CLUSTER)
    } else {
        rec
    }
}

pub const DEGENERATE_CLUSTER: &str = "s=0: T is a K_{r+1} component";

/// Doubled reweighting: tight cliques of size at least two lose 2, and each
/// clique of size at least two gains 1 per cluster of size at least two it
/// is associated with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discharge {
    /// Per clique size `c`: `(Σ 2w(C), Σ 2w'(C))`.
    pub sums: Vec<(usize, i128, i128)>,
    /// The clique maximizing `2w'(C) - 2(r - |C|)`, with `2w'(C)`.
    pub worst: Option<(VertexSet, i128)>,
}

pub fn discharge(g: &Graph, r: usize) -> Result<Discharge> {
    let big: Vec<TightStructure> = clusters(g, r)?.into_iter().filter(|c| c.t() >= 2).collect();
    let mut sums = Vec::new();
    let mut worst: Option<(VertexSet, i128, i128)> = None;
    for c in 2..=g.n() {
        let mut any = false;
        let (mut w_sum, mut w2_sum) = (0i128, 0i128);
        for k in cliques_of_size(g, c) {
            any = true;
            let w = 2 * clique_weight(g, k)? as i128;
            let mut w2 = w;
            if big.iter().any(|cl| k.is_subset(cl.tight)) {
                w2 -= 2;
            }
            w2 += big.iter().filter(|cl| k.intersection(cl.tight).len() == c - 1).count() as i128;
            w_sum += w;
            w2_sum += w2;
            let excess = w2 - 2 * (r as i128 - c as i128);
            if worst.is_none_or(|(_, _, e)| excess > e) {
                worst = Some((k, w2, excess));
            }
        }
        if !any {
            break;
        }
        sums.push((c, w_sum, w2_sum));
    }
    Ok(Discharge { sums, worst: worst.map(|(k, w2, _)| (k, w2)) })
}

/// Applicability of the reweighting argument: `Δ(G) <= r`, no `K_{r+1}`, a
/// tight clique of size at least two, and every cluster of size at least
/// two has `k(G_T) <= k(G)` and no `K_2` component in `R_T`.
pub fn discharging_applicable(g: &Graph, r: usize) -> Result<bool> {
    if g.max_degree() > r || g.clique_number() > r || tight_cliques(g, r, 2)?.is_empty() {
        return Ok(false);
    }
    for cl in clusters(g, r)?.into_iter().filter(|c| c.t() >= 2) {
        if !k2_components(&cl).is_empty() {
            return Ok(false);
        }
        let rep = apply_gt(g, r, cl.tight)?;
        if rep.k_after > rep.k_before {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One `discharging-sum` record per clique size `c >= 2` and one
/// `discharging-cap` record for the worst clique, or a single
/// not-applicable record of each kind.
pub fn discharging_check(g: &Graph, r: usize) -> Result<Vec<ConsistencyRecord>> {
    let subject = format!("G={g} r={r}");
    if !discharging_applicable(g, r)? {
        let why = "hypotheses of the reweighting fail";
        return Ok(vec![
            ConsistencyRecord::not_applicable(Predicate::DischargingSum, subject.clone(), why),
            ConsistencyRecord::not_applicable(Predicate::DischargingCap, subject, why),
        ]);
    }
    let d = discharge(g, r)?;
    let mut out: Vec<ConsistencyRecord> = d
        .sums
        .iter()
        .map(|&(c, w, w2)| {
            ConsistencyRecord::compare(Predicate::DischargingSum, format!("{subject} c={c}"), w, Relation::Le, w2)
                .with_clique_size(c)
                .with_note("weights doubled")
        })
        .collect();
    if let Some((k, w2)) = d.worst {
        out.push(
            ConsistencyRecord::compare(
                Predicate::DischargingCap,
                format!("{subject} C={k}"),
                w2,
                Relation::Le,
                2 * (r as i128 - k.len() as i128),
            )
            .with_clique_size(k.len())
            .with_note("weights doubled"),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use num_traits::ToPrimitive;

    fn staging() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 5)]).unwrap()
    }

    #[test]
    fn main_bound_values() {
        assert_eq!(decompose(10, 3), Decomposition { a: 2, b: 2 });
        assert_eq!(main_bound(10, 3), 34);
        assert_eq!(main_bound(6, 3), 19);
        assert_eq!(main_bound(4, 4), 16);
        assert_eq!(main_bound(0, 0), 1);
        assert_eq!(main_bound(64, 63), (1u128 << 64) - 1 + 1);
        for n in 0..=20 {
            for r in 0..=10 {
                assert_eq!(clique_count(&Graph::extremal(n, r).unwrap()), main_bound(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn strong_inequality_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let recs = strong_inequalities(&clique_vector(&c5), 5, 2);
        assert_eq!(recs.len(), 3);
        assert!(recs[0].passed());
        let k4 = Graph::complete(4).unwrap();
        let recs = strong_inequalities(&clique_vector(&k4), 4, 3);
        assert_eq!((recs[0].lhs.clone(), recs[0].rhs.clone()), (12.into(), 6.into()));
        assert!(recs[0].failed());
        let pet = Graph::petersen();
        let recs = strong_inequalities(&clique_vector(&pet), 10, 3);
        assert_eq!((recs[0].lhs.clone(), recs[0].rhs.clone()), (0.into(), 15.into()));
        assert!(recs.iter().all(ConsistencyRecord::passed));
        assert!(strong_inequality_claim(&pet, 3).unwrap().iter().all(ConsistencyRecord::passed));
        assert!(!strong_inequality_claim(&k4, 3).unwrap()[0].applicable);
    }

    #[test]
    fn chain_bounds() {
        assert_eq!(strong_chain_bound(6, 3).unwrap(), BigRational::from_integer(19.into()));
        assert_eq!(strong_chain_bound(10, 3).unwrap(), BigRational::from_integer(31.into()));
        assert_eq!(strong_chain_bound(5, 4).unwrap(), BigRational::new(73.into(), 3.into()));
        assert!(strong_chain_bound(5, 1).is_err());
        let mut equalities = Vec::new();
        for r in 3..=8 {
            for a in 1..=4 {
                for b in 0..=r {
                    let n = a * (r + 1) + b;
                    let rec = strong_chain_vs_main(n, r);
                    assert!(rec.passed(), "{rec}");
                    if rec.lhs == rec.rhs {
                        equalities.push((r, n));
                    }
                }
            }
        }
        assert_eq!(equalities, vec![(3, 6)]);
        assert!(!strong_chain_vs_main(3, 3).applicable);
        assert!(!strong_chain_vs_main(9, 2).applicable);
    }

    #[test]
    fn strong_chain_on_graphs() {
        let pet = Graph::petersen();
        let rec = strong_chain_check(&pet, 3);
        assert!(rec.passed());
        assert!(strong_strict_check(&pet, 3).passed());
        assert!(!strong_chain_check(&Graph::complete(4).unwrap(), 3).applicable);
        // K_{3,3}: 1 + 6 + 9 = 16 < 19
        let rec = strong_strict_check(&Graph::complete_bipartite(3, 3).unwrap(), 3);
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (16.into(), 19.into()));
    }

    #[test]
    fn independence_checks() {
        let k2 = Graph::complete(2).unwrap();
        let rec = kahn_zhao_check(&k2, 1);
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (9.into(), 9.into()));
        let c3 = Graph::cycle(3).unwrap();
        let rec = min_ind_check(&c3, 2);
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (64.into(), 64.into()));
        let c5 = Graph::cycle(5).unwrap();
        let kz = kahn_zhao_check(&c5, 2);
        assert_eq!((kz.lhs.to_u64(), kz.rhs.to_u64()), (Some(14641), Some(16807)));
        let lo = min_ind_check(&c5, 2);
        assert_eq!((lo.lhs.to_u64(), lo.rhs.to_u64()), (Some(1331), Some(1024)));
        assert!(kz.passed() && lo.passed());
        assert!(!kahn_zhao_check(&Graph::path(3).unwrap(), 2).applicable);
        assert!(min_ind_capped_check(&Graph::path(3).unwrap(), 2).passed());
    }

    #[test]
    fn signposts() {
        let two_k2 = Graph::clique_union(&[2, 2]).unwrap();
        let recs = signpost_checks(&two_k2, 1);
        let total = recs.iter().find(|r| r.predicate == Predicate::RegularIndependentTotal).unwrap();
        assert_eq!((total.lhs.clone(), total.rhs.clone()), (9.into(), 9.into()));
        let i2 = recs
            .iter()
            .find(|r| r.predicate == Predicate::RegularIndependentPerSize && r.clique_size == Some(2))
            .unwrap();
        assert_eq!((i2.lhs.clone(), i2.rhs.clone()), (4.into(), 4.into()));
        assert!(recs.iter().all(|r| r.pass != Some(false)));

        let two_k4 = Graph::clique_union(&[4, 4]).unwrap();
        let recs = signpost_checks(&two_k4, 3);
        let total = recs.iter().find(|r| r.predicate == Predicate::CappedCliqueTotal).unwrap();
        assert_eq!((total.lhs.clone(), total.rhs.clone()), (31.into(), 31.into()));

        for g in [Graph::cycle(6).unwrap(), Graph::clique_union(&[3, 3]).unwrap()] {
            let recs = signpost_checks(&g, 2);
            let total = recs.iter().find(|r| r.predicate == Predicate::RegularIndependentTotal).unwrap();
            assert!(total.passed() && total.rhs == 16.into());
        }

        let recs = signpost_checks(&Graph::cycle(5).unwrap(), 2);
        assert!(recs.iter().all(|r| !r.applicable));
    }

    #[test]
    fn zykov_and_galvin() {
        assert_eq!(galvin_bound(6, 2).unwrap(), 19);
        let rec = zykov_check(&Graph::cycle(5).unwrap());
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (11.into(), 12.into()));
        let t63 = Graph::turan(6, 3).unwrap();
        let rec = zykov_check(&t63);
        assert_eq!(rec.lhs, rec.rhs);
        assert_eq!(turan_clique_count(0, 0), 1);
        assert_eq!(clique_count(&t63), turan_clique_count(6, 3));
        let k24 = Graph::complete_bipartite(2, 4).unwrap();
        let rec = galvin_check(&k24, 2);
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (19.into(), 19.into()));
        assert!(!galvin_check(&Graph::path(3).unwrap(), 2).applicable);
    }

    #[test]
    fn heavy_cluster_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let rep = apply_gt(&c4, 2, VertexSet::singleton(0)).unwrap();
        let [loss, size] = heavy_cluster_check(&rep);
        assert_eq!((loss.lhs.clone(), loss.rhs.clone()), (2.into(), 8.into()));
        assert!(loss.failed());
        assert_eq!(loss.clique_size, Some(1));
        assert!(size.failed());

        let rep = apply_gt(&staging(), 3, VertexSet::from_vertices([0, 1])).unwrap();
        assert!(heavy_cluster_check(&rep).iter().all(|r| !r.applicable));
        assert!(!associated_low_weight_check(&rep, 2).applicable);
    }

    #[test]
    fn discharging_examples() {
        let recs = discharging_check(&Graph::cycle(5).unwrap(), 2).unwrap();
        assert!(recs.iter().all(|r| !r.applicable));
        let recs = discharging_check(&Graph::extremal(10, 3).unwrap(), 3).unwrap();
        assert!(recs.iter().all(|r| !r.applicable));
        assert!(!discharging_applicable(&staging(), 3).unwrap());
    }

    #[test]
    fn weight_checks() {
        let g = staging();
        assert!(weight_identity_check(&g).iter().all(ConsistencyRecord::passed));
        let rec = weight_cap_check(&g, 3);
        assert!(rec.passed());
        assert!(main_bound_check(&g, 3).passed());
        assert!(!main_bound_check(&g, 2).applicable);
    }
}
