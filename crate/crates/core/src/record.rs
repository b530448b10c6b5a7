//! Outcome of evaluating one inequality on one witness.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Every checked statement. The serialized id is the stable name used in
/// reports and checkpoint files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// `k(G) <= a(2^{r+1}-1) + 2^b` for `Δ(G) <= r`.
    MainBound,
    /// `t k_t = Σ_{C ∈ K_{t-1}} w(C)`.
    WeightIdentity,
    /// `w(C) <= r + 1 - |C|` for `Δ(G) <= r`.
    WeightCap,
    /// Tight cliques sharing a vertex agree with closed-neighborhood classes.
    ClusterPartition,
    /// `|N(x) ∖ (T ∪ S)| <= d_R(x)` for `x ∈ S`.
    OutsideDegree,
    /// `k(G_T) >= k(G) + 2^{r+1} - 2^t i(R) - φ(R)`.
    GainLowerBound,
    /// `G_T` holds `K_{r+1}` on `T ∪ S`, saturates it at degree `r` and
    /// keeps `Δ <= r`.
    RewriteShape,
    /// `2^t (2^s - i(R) + s + 1) > φ(R)` implies `k(G_T) > k(G)`.
    ProfitLiteral,
    /// `2^t (2^s - i(R)) > φ(R)` implies `k(G_T) > k(G)`.
    ProfitCorrected,
    /// Closing a `K_2` component of `R` strictly increases `k`.
    K2MoveGain,
    /// `φ(R) <= s(2^{s-1} - 1)`.
    FixedLossMax,
    /// `Σ |I|(2^{δ_I} - 1) <= s(2^{s-1} - 1)`.
    FixedLossWeighted,
    /// `φ(K_s) = s(2^{s-1} - 1)`.
    FixedLossComplete,
    /// `φ(R) <= 2^s + (s - ℓ - 2) 2^{s-ℓ-1}` without `K_1`/`K_2` components.
    FixedLossDegreeOne,
    /// `φ'(R) <= (2^ℓ - 1) 2^{s-ℓ-1}` without `K_1`/`K_2` components.
    FixedLossDegreeOneSplit,
    /// `t k_t <= (r - t + 1) k_{t-1}`.
    StrongInequality,
    /// Strong inequalities imply `k(G) <= 1 + n(2^r - 2)/(r - 1)`.
    StrongChain,
    /// `1 + n(2^r - 2)/(r - 1) <= a(2^{r+1}-1) + 2^b`, equal only at `r=3, n=6`.
    StrongChainVsMain,
    /// Strong inequalities imply `k(G) < a(2^{r+1}-1) + 2^b`.
    StrongStrict,
    /// Non-improving cluster: `φ(R) >= 2^r + s 2^t`.
    HeavyClusterLoss,
    /// Non-improving cluster: `2^t < s`.
    HeavyClusterSize,
    /// Non-improving cluster without `K_2` components has at least
    /// `2 C(t, c)` associated `c`-cliques of weight `<= r - c - 1`.
    AssociatedLowWeight,
    /// Reweighting does not lose total weight on any clique size `>= 2`.
    DischargingSum,
    /// Reweighted cliques satisfy `w'(C) <= r - |C|`.
    DischargingCap,
    /// `i_t(G) >= (d+1)^t C(a, t)` for `d`-regular `G` on `a(d+1)` vertices.
    RegularIndependentPerSize,
    /// `i(G) >= (d+2)^a` for `d`-regular `G` on `a(d+1)` vertices.
    RegularIndependentTotal,
    /// Every independent `(t-1)`-set extends in `>= (a-t+1)(d+1)` ways.
    IndependentExtension,
    /// `k_t(G) <= a C(r+1, t)` for `Δ(G) <= r` on `a(r+1)` vertices.
    CappedCliquePerSize,
    /// `k(G) <= 1 + a(2^{r+1} - 1)` for `Δ(G) <= r` on `a(r+1)` vertices.
    CappedCliqueTotal,
    /// `i(G)^{2d} <= (2^{d+1} - 1)^n` for `d`-regular `G`.
    KahnZhao,
    /// `i(G)^{d+1} >= (d+2)^n` for `d`-regular `G`.
    RegularMinIndependent,
    /// `i(G)^{d+1} >= (d+2)^n` for `Δ(G) <= d`.
    CappedMinIndependent,
    /// `k(G) <= k(T_{n,ω})`.
    Zykov,
    /// `i(G) <= i(K_{d,n-d})` for `n >= 2d`, `δ(G) >= d`.
    Galvin,
}

impl Predicate {
    pub const ALL: [Predicate; 34] = [
        Predicate::MainBound,
        Predicate::WeightIdentity,
        Predicate::WeightCap,
        Predicate::ClusterPartition,
        Predicate::OutsideDegree,
        Predicate::GainLowerBound,
        Predicate::RewriteShape,
        Predicate::ProfitLiteral,
        Predicate::ProfitCorrected,
        Predicate::K2MoveGain,
        Predicate::FixedLossMax,
        Predicate::FixedLossWeighted,
        Predicate::FixedLossComplete,
        Predicate::FixedLossDegreeOne,
        Predicate::FixedLossDegreeOneSplit,
        Predicate::StrongInequality,
        Predicate::StrongChain,
        Predicate::StrongChainVsMain,
        Predicate::StrongStrict,
        Predicate::HeavyClusterLoss,
        Predicate::HeavyClusterSize,
        Predicate::AssociatedLowWeight,
        Predicate::DischargingSum,
        Predicate::DischargingCap,
        Predicate::RegularIndependentPerSize,
        Predicate::RegularIndependentTotal,
        Predicate::IndependentExtension,
        Predicate::CappedCliquePerSize,
        Predicate::CappedCliqueTotal,
        Predicate::KahnZhao,
        Predicate::RegularMinIndependent,
        Predicate::CappedMinIndependent,
        Predicate::Zykov,
        Predicate::Galvin,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Predicate::MainBound => "main-bound",
            Predicate::WeightIdentity => "weight-identity",
            Predicate::WeightCap => "weight-cap",
            Predicate::ClusterPartition => "cluster-partition",
            Predicate::OutsideDegree => "outside-degree",
            Predicate::GainLowerBound => "gain-lower-bound",
            Predicate::RewriteShape => "rewrite-shape",
            Predicate::ProfitLiteral => "profit-literal",
            Predicate::ProfitCorrected => "profit-corrected",
            Predicate::K2MoveGain => "k2-move-gain",
            Predicate::FixedLossMax => "fixed-loss-max",
            Predicate::FixedLossWeighted => "fixed-loss-weighted",
            Predicate::FixedLossComplete => "fixed-loss-complete",
            Predicate::FixedLossDegreeOne => "fixed-loss-degree-one",
            Predicate::FixedLossDegreeOneSplit => "fixed-loss-degree-one-split",
            Predicate::StrongInequality => "strong-inequality",
            Predicate::StrongChain => "strong-chain",
            Predicate::StrongChainVsMain => "strong-chain-vs-main",
            Predicate::StrongStrict => "strong-strict",
            Predicate::HeavyClusterLoss => "heavy-cluster-loss",
            Predicate::HeavyClusterSize => "heavy-cluster-size",
            Predicate::AssociatedLowWeight => "associated-low-weight",
            Predicate::DischargingSum => "discharging-sum",
            Predicate::DischargingCap => "discharging-cap",
            Predicate::RegularIndependentPerSize => "regular-independent-per-size",
            Predicate::RegularIndependentTotal => "regular-independent-total",
            Predicate::IndependentExtension => "independent-extension",
            Predicate::CappedCliquePerSize => "capped-clique-per-size",
            Predicate::CappedCliqueTotal => "capped-clique-total",
            Predicate::KahnZhao => "kahn-zhao",
            Predicate::RegularMinIndependent => "regular-min-independent",
            Predicate::CappedMinIndependent => "capped-min-independent",
            Predicate::Zykov => "zykov",
            Predicate::Galvin => "galvin",
        }
    }

    pub fn from_id(id: &str) -> Option<Predicate> {
        Predicate::ALL.into_iter().find(|p| p.id() == id)
    }

    /// Fatal unless the statement is one whose literal form is known to
    /// have counterexamples.
    pub fn severity(self) -> Severity {
        match self {
            Predicate::ProfitLiteral
            | Predicate::HeavyClusterLoss
            | Predicate::HeavyClusterSize
            | Predicate::AssociatedLowWeight
            | Predicate::DischargingSum
            | Predicate::DischargingCap => Severity::Warning,
            _ => Severity::Fatal,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Fatal,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn parse_decimal<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
}

/// `lhs relation rhs`, evaluated on `subject`. Both sides are exact integers;
/// statements with fractions are recorded in cross-multiplied form, noted
/// in `note`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyRecord {
    pub predicate: Predicate,
    pub subject: String,
    #[serde(serialize_with = "decimal", deserialize_with = "parse_decimal")]
    pub lhs: BigInt,
    pub relation: Relation,
    #[serde(serialize_with = "decimal", deserialize_with = "parse_decimal")]
    pub rhs: BigInt,
    pub applicable: bool,
    /// `None` exactly when not applicable.
    pub pass: Option<bool>,
    /// Size of the tight clique or cluster the record is about, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clique_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ConsistencyRecord {
    pub fn compare(
        predicate: Predicate,
        subject: impl Into<String>,
        lhs: impl Into<BigInt>,
        relation: Relation,
        rhs: impl Into<BigInt>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = relation.holds(&lhs, &rhs);
        ConsistencyRecord {
            predicate,
            subject: subject.into(),
            lhs,
            relation,
            rhs,
            applicable: true,
            pass: Some(pass),
            clique_size: None,
            note: None,
        }
    }

    pub fn not_applicable(predicate: Predicate, subject: impl Into<String>, reason: impl Into<String>) -> Self {
        ConsistencyRecord {
            predicate,
            subject: subject.into(),
            lhs: BigInt::from(0),
            relation: Relation::Eq,
            rhs: BigInt::from(0),
            applicable: false,
            pass: None,
            clique_size: None,
            note: Some(reason.into()),
        }
    }

    /// Overrides the verdict where the claim is more than one comparison.
    pub fn with_pass(mut self, pass: bool) -> Self {
        if self.applicable {
            self.pass = Some(pass);
        }
        self
    }

    pub fn with_clique_size(mut self, t: usize) -> Self {
        self.clique_size = Some(t);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.pass == Some(true)
    }

    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }
}

impl fmt::Display for ConsistencyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.pass {
            None => "n/a",
            Some(true) => "pass",
            Some(false) => "FAIL",
        };
        write!(f, "{:<5} {} [{}]", verdict, self.predicate, self.subject)?;
        if self.applicable {
            write!(f, " {} {} {}", self.lhs, self.relation.symbol(), self.rhs)?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_roundtrip() {
        for p in Predicate::ALL {
            assert_eq!(Predicate::from_id(p.id()), Some(p));
            assert_eq!(serde_json::to_value(p).unwrap(), serde_json::Value::String(p.id().into()));
        }
    }

    #[test]
    fn verdicts() {
        let r = ConsistencyRecord::compare(Predicate::Zykov, "x", 3, Relation::Le, 3);
        assert!(r.passed());
        let r = ConsistencyRecord::compare(Predicate::Zykov, "x", 3, Relation::Lt, 3);
        assert!(r.failed());
        let na = ConsistencyRecord::not_applicable(Predicate::Zykov, "x", "why").with_pass(true);
        assert_eq!(na.pass, None);
        let json = serde_json::to_value(ConsistencyRecord::compare(Predicate::KahnZhao, "y", BigInt::from(1u128 << 100), Relation::Le, 1)).unwrap();
        assert_eq!(json["lhs"], "1267650600228229401496703205376");
        let back: ConsistencyRecord = serde_json::from_value(json).unwrap();
        assert_eq!(back.lhs, BigInt::from(1u128 << 100));
    }
}
