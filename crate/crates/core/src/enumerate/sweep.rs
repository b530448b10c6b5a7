//! Deterministic, resumable evaluation of every checked statement on every
//! small graph.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate, generate_forms};
use crate::bounds::{
    discharging_check, galvin_check, heavy_cluster_check, kahn_zhao_check, main_bound_check, min_ind_capped_check,
    min_ind_check, signpost_checks, strong_chain_check, strong_chain_vs_main, strong_inequality_claim,
    strong_strict_check, weight_cap_check, weight_identity_check, zykov_check, associated_low_weight_check,
};
use crate::error::{Error, Result};
use crate::fixed_loss::{complete_value_check, degree_one_bound_check, degree_one_split_check, max_bound_check};
use crate::graph::{CanonicalForm, Graph};
use crate::record::{ConsistencyRecord, Predicate, Relation, Severity};
use crate::structure::{clusters, derive, outside_degree_check, tight_cliques};
use crate::transform::{apply_gt, gain_check, k2_components, k2_gain_check, profit_checks, apply_k2_move_with};

const CHECKPOINT_MAGIC: &str = "# cliquecap sweep checkpoint v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_max: usize,
    pub r_max: usize,
    /// Largest `R` for the fixed-loss statements; defaults to
    /// `min(n_max, 7)`.
    pub s_max: usize,
    pub workers: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    /// Failure witnesses kept per tally key; `None` keeps all.
    pub witness_limit: Option<usize>,
    /// Stop after computing this many new units (for interrupted runs).
    pub max_new_units: Option<usize>,
}

impl SweepConfig {
    pub fn new(n_max: usize, r_max: usize) -> Self {
        SweepConfig {
            n_max,
            r_max,
            s_max: n_max.min(7),
            workers: None,
            checkpoint: None,
            witness_limit: None,
            max_new_units: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub applicable: u64,
    pub passed: u64,
    pub failed: u64,
    pub not_applicable: u64,
}

impl Tally {
    pub fn add(&mut self, rec: &ConsistencyRecord) {
        match rec.pass {
            None => self.not_applicable += 1,
            Some(ok) => {
                self.applicable += 1;
                if ok {
                    self.passed += 1;
                } else {
                    self.failed += 1;
                }
            }
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.applicable += other.applicable;
        self.passed += other.passed;
        self.failed += other.failed;
        self.not_applicable += other.not_applicable;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSummary {
    pub unit: String,
    pub graphs: u64,
    /// graph6 of the last graph evaluated.
    pub last: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
struct UnitOutcome {
    tallies: BTreeMap<String, Tally>,
    failures: Vec<ConsistencyRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n_max: usize,
    pub r_max: usize,
    pub s_max: usize,
    /// False when the run stopped early; resume from the checkpoint.
    pub complete: bool,
    pub units: Vec<UnitSummary>,
    pub tallies: BTreeMap<String, Tally>,
    pub failures: Vec<ConsistencyRecord>,
    pub fatal_failures: u64,
    pub warning_failures: u64,
}

impl SweepReport {
    pub fn tally(&self, key: &str) -> Tally {
        self.tallies.get(key).copied().unwrap_or_default()
    }

    pub fn failures_of(&self, p: Predicate) -> impl Iterator<Item = &ConsistencyRecord> {
        self.failures.iter().filter(move |f| f.predicate == p)
    }
}

/// Predicates about a tight clique `T`; their tallies are also split by
/// `|T| = 1` and `|T| >= 2`.
fn scoped(p: Predicate) -> bool {
    matches!(
        p,
        Predicate::OutsideDegree
            | Predicate::GainLowerBound
            | Predicate::RewriteShape
            | Predicate::ProfitLiteral
            | Predicate::ProfitCorrected
            | Predicate::K2MoveGain
            | Predicate::HeavyClusterLoss
            | Predicate::HeavyClusterSize
            | Predicate::AssociatedLowWeight
    )
}

fn keys(rec: &ConsistencyRecord) -> Vec<String> {
    let id = rec.predicate.id();
    let mut out = vec![id.to_owned()];
    if scoped(rec.predicate) {
        match rec.clique_size {
            Some(t) if t >= 2 => out.push(format!("{id}[t>=2]")),
            Some(_) => out.push(format!("{id}[t=1]")),
            None => {}
        }
    }
    out
}

impl UnitOutcome {
    fn absorb(&mut self, recs: Vec<ConsistencyRecord>, limit: Option<usize>) {
        for rec in recs {
            let ks = keys(&rec);
            for k in &ks {
                self.tallies.entry(k.clone()).or_default().add(&rec);
            }
            if rec.failed() {
                let kept = self.failures.iter().filter(|f| f.predicate == rec.predicate).count();
                if limit.is_none_or(|l| kept < l) {
                    self.failures.push(rec);
                }
            }
        }
    }

    fn merge(&mut self, other: &UnitOutcome, limit: Option<usize>) {
        for (k, t) in &other.tallies {
            self.tallies.entry(k.clone()).or_default().merge(t);
        }
        for f in &other.failures {
            let kept = self.failures.iter().filter(|g| g.predicate == f.predicate).count();
            if limit.is_none_or(|l| kept < l) {
                self.failures.push(f.clone());
            }
        }
    }
}

fn inconsistency(p: Predicate, subject: String, e: &Error) -> ConsistencyRecord {
    ConsistencyRecord::compare(p, subject, 0, Relation::Eq, 1).with_note(e.to_string())
}

/// Every statement about `(G, r)`. Statements that depend only on `G` are
/// evaluated once, in the unit `r = max(Δ(G), 1)`.
pub(crate) fn graph_records(g: &Graph, r: usize) -> Result<Vec<ConsistencyRecord>> {
    let mut out = vec![
        main_bound_check(g, r),
        weight_cap_check(g, r),
        strong_chain_check(g, r),
        strong_strict_check(g, r),
        kahn_zhao_check(g, r),
        min_ind_check(g, r),
        min_ind_capped_check(g, r),
    ];
    out.extend(strong_inequality_claim(g, r)?);
    out.extend(signpost_checks(g, r));
    out.extend(discharging_check(g, r)?);

    if r == g.max_degree().max(1) {
        out.extend(weight_identity_check(g));
        out.push(zykov_check(g));
        let d = g.min_degree().min(g.n() / 2);
        out.push(galvin_check(g, d));
    }

    let mut gt_reports = BTreeMap::new();
    for t in tight_cliques(g, r, 1)? {
        let subject = format!("G={g} T={t}");
        let ts = derive(g, r, t)?;
        out.push(outside_degree_check(g, &ts));
        match apply_gt(g, r, t) {
            Ok(rep) => {
                out.push(
                    ConsistencyRecord::compare(Predicate::RewriteShape, subject.clone(), 1, Relation::Eq, 1)
                        .with_clique_size(ts.t()),
                );
                out.push(gain_check(&rep));
                out.extend(profit_checks(&rep));
                gt_reports.insert(t, rep);
            }
            Err(e @ Error::Inconsistent(_)) => {
                out.push(inconsistency(Predicate::RewriteShape, subject.clone(), &e).with_clique_size(ts.t()))
            }
            Err(e) => return Err(e),
        }
        if ts.t() >= 2 {
            for pair in k2_components(&ts) {
                match apply_k2_move_with(g, r, t, pair) {
                    Ok(rep) => out.push(k2_gain_check(&rep)),
                    Err(e @ Error::Inconsistent(_)) => {
                        out.push(inconsistency(Predicate::K2MoveGain, subject.clone(), &e).with_clique_size(ts.t()))
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }

    match clusters(g, r) {
        Ok(cs) => {
            out.push(ConsistencyRecord::compare(Predicate::ClusterPartition, format!("G={g} r={r}"), 1, Relation::Eq, 1));
            for cl in cs {
                let Some(rep) = gt_reports.get(&cl.tight) else { continue };
                out.extend(heavy_cluster_check(rep));
                for c in 2..=cl.t().max(2) {
                    out.push(associated_low_weight_check(rep, c));
                }
            }
        }
        Err(e @ Error::Inconsistent(_)) => {
            out.push(inconsistency(Predicate::ClusterPartition, format!("G={g} r={r}"), &e))
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn fixed_loss_records(r: &Graph) -> Vec<ConsistencyRecord> {
    let mut out: Vec<ConsistencyRecord> = max_bound_check(r).into();
    out.push(degree_one_bound_check(r));
    out.push(degree_one_split_check(r));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unit {
    FixedLoss { s_max: usize },
    Graphs { n: usize, r: usize },
}

impl Unit {
    fn label(self) -> String {
        match self {
            Unit::FixedLoss { s_max } => format!("fixed-loss:s<={s_max}"),
            Unit::Graphs { n, r } => format!("graphs:n={n}:r={r}"),
        }
    }
}

fn units(cfg: &SweepConfig) -> Vec<Unit> {
    let mut out = vec![Unit::FixedLoss { s_max: cfg.s_max }];
    for n in 1..=cfg.n_max {
        for r in 1..=cfg.r_max.min(n - 1) {
            out.push(Unit::Graphs { n, r });
        }
    }
    out
}

fn run_unit(unit: Unit, limit: Option<usize>) -> Result<(UnitSummary, UnitOutcome)> {
    let mut outcome = UnitOutcome::default();
    let mut count = 0u64;
    let mut last = String::new();
    match unit {
        Unit::FixedLoss { s_max } => {
            for s in 0..=s_max {
                outcome.absorb(vec![complete_value_check(s)?], limit);
                let rs: Vec<CanonicalForm> = generate_forms(s, s.saturating_sub(1))?;
                let per: Vec<Vec<ConsistencyRecord>> = rs.par_iter().map(|f| fixed_loss_records(&f.graph())).collect();
                for recs in per {
                    outcome.absorb(recs, limit);
                }
                count += rs.len() as u64;
                if let Some(f) = rs.last() {
                    last = f.to_string();
                }
            }
        }
        Unit::Graphs { n, r } => {
            outcome.absorb(vec![strong_chain_vs_main(n, r)], limit);
            let graphs = generate(n, r)?;
            let per: Vec<Result<Vec<ConsistencyRecord>>> = graphs.par_iter().map(|g| graph_records(g, r)).collect();
            for recs in per {
                outcome.absorb(recs?, limit);
            }
            count = graphs.len() as u64;
            if let Some(g) = graphs.last() {
                last = g.to_string();
            }
        }
    }
    Ok((UnitSummary { unit: unit.label(), graphs: count, last }, outcome))
}

fn header(cfg: &SweepConfig) -> String {
    format!(
        "{CHECKPOINT_MAGIC}\n# params n_max={} r_max={} s_max={} witness_limit={}\n# fields: unit graphs last-graph6 outcome-json\n",
        cfg.n_max,
        cfg.r_max,
        cfg.s_max,
        cfg.witness_limit.map_or("all".to_owned(), |l| l.to_string()),
    )
}

fn ck_err(path: &std::path::Path, msg: impl std::fmt::Display) -> Error {
    Error::Checkpoint(format!("{}: {msg}", path.display()))
}

/// Completed units recorded in an existing checkpoint.
fn load_checkpoint(path: &std::path::Path, cfg: &SweepConfig) -> Result<BTreeMap<String, (UnitSummary, UnitOutcome)>> {
    let mut done = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(ck_err(path, e)),
    };
    let want = header(cfg);
    let want: Vec<&str> = want.lines().collect();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| ck_err(path, e))?;
        if i < want.len() {
            if line != want[i] {
                return Err(ck_err(path, format!("header line {} is {line:?}, expected {:?}", i + 1, want[i])));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(4, ' ');
        let (Some(unit), Some(graphs), Some(last), Some(json)) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(ck_err(path, format!("line {} is truncated", i + 1)));
        };
        let graphs = graphs.parse().map_err(|e| ck_err(path, format!("line {}: {e}", i + 1)))?;
        let outcome: UnitOutcome =
            serde_json::from_str(json).map_err(|e| ck_err(path, format!("line {}: {e}", i + 1)))?;
        let last = if last == "-" { String::new() } else { last.to_owned() };
        done.insert(unit.to_owned(), (UnitSummary { unit: unit.to_owned(), graphs, last }, outcome));
    }
    Ok(done)
}

fn append_unit(path: &std::path::Path, cfg: &SweepConfig, summary: &UnitSummary, outcome: &UnitOutcome) -> Result<()> {
    let fresh = !path.exists();
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(|e| ck_err(path, e))?;
    let json = serde_json::to_string(outcome).map_err(|e| ck_err(path, e))?;
    let last = if summary.last.is_empty() { "-" } else { &summary.last };
    let mut text = if fresh { header(cfg) } else { String::new() };
    text.push_str(&format!("{} {} {} {}\n", summary.unit, summary.graphs, last, json));
    f.write_all(text.as_bytes()).and_then(|_| f.flush()).map_err(|e| ck_err(path, e))
}

/// Runs every unit (the fixed-loss family, then `(n, r)` for
/// `1 <= r <= min(r_max, n - 1)`) and merges the outcomes in unit order.
/// The report does not depend on the worker count or on interruptions.
pub fn consistency_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    super::with_workers(cfg.workers, || sweep_inner(cfg))?
}

fn sweep_inner(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut done = match &cfg.checkpoint {
        Some(p) => load_checkpoint(p, cfg)?,
        None => BTreeMap::new(),
    };
    let mut total = UnitOutcome::default();
    let mut summaries = Vec::new();
    let mut fresh = 0usize;
    let mut complete = true;
    for unit in units(cfg) {
        let label = unit.label();
        let (summary, outcome) = match done.remove(&label) {
            Some(entry) => entry,
            None => {
                if cfg.max_new_units.is_some_and(|m| fresh >= m) {
                    complete = false;
                    break;
                }
                let entry = run_unit(unit, cfg.witness_limit)?;
                if let Some(p) = &cfg.checkpoint {
                    append_unit(p, cfg, &entry.0, &entry.1)?;
                }
                fresh += 1;
                entry
            }
        };
        total.merge(&outcome, cfg.witness_limit);
        summaries.push(summary);
    }
    let (mut fatal, mut warning) = (0, 0);
    for (key, t) in &total.tallies {
        if let Some(p) = Predicate::from_id(key) {
            match p.severity() {
                Severity::Fatal => fatal += t.failed,
                Severity::Warning => warning += t.failed,
            }
        }
    }
    Ok(SweepReport {
        n_max: cfg.n_max,
        r_max: cfg.r_max,
        s_max: cfg.s_max,
        complete,
        units: summaries,
        tallies: total.tallies,
        failures: total.failures,
        fatal_failures: fatal,
        warning_failures: warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn small_sweep() {
        let rep = consistency_sweep(&SweepConfig::new(5, 4)).unwrap();
        assert!(rep.complete);
        assert_eq!(rep.fatal_failures, 0, "{:#?}", rep.failures.iter().filter(|f| f.predicate.severity() == Severity::Fatal).collect::<Vec<_>>());
        assert!(rep.tally("gain-lower-bound").applicable > 0);
        let c4 = Graph::cycle(4).unwrap();
        let c4_literal = rep.failures_of(Predicate::ProfitLiteral).any(|f| {
            let g = crate::graph::graph6_decode(f.subject.split(' ').next().unwrap().trim_start_matches("G=")).unwrap();
            crate::graph::canonical_form(&g) == crate::graph::canonical_form(&c4) && f.clique_size == Some(1)
        });
        assert!(c4_literal);
    }

    #[test]
    fn c4_records() {
        let c4 = Graph::cycle(4).unwrap();
        let recs = graph_records(&c4, 2).unwrap();
        let heavy = recs
            .iter()
            .find(|r| r.predicate == Predicate::HeavyClusterLoss && r.subject.ends_with(&format!("T={}", VertexSet::singleton(0))))
            .unwrap();
        assert!(heavy.failed());
    }

    #[test]
    fn deterministic_and_resumable() {
        let mut cfg = SweepConfig::new(5, 3);
        cfg.workers = Some(1);
        let one = serde_json::to_string(&consistency_sweep(&cfg).unwrap()).unwrap();
        cfg.workers = Some(3);
        let three = serde_json::to_string(&consistency_sweep(&cfg).unwrap()).unwrap();
        assert_eq!(one, three);

        let dir = tempfile::tempdir().unwrap();
        cfg.checkpoint = Some(dir.path().join("ck.txt"));
        cfg.max_new_units = Some(3);
        let partial = consistency_sweep(&cfg).unwrap();
        assert!(!partial.complete);
        cfg.max_new_units = None;
        let resumed = serde_json::to_string(&consistency_sweep(&cfg).unwrap()).unwrap();
        assert_eq!(one, resumed);
        // a second resume reads everything back from the file
        let again = serde_json::to_string(&consistency_sweep(&cfg).unwrap()).unwrap();
        assert_eq!(one, again);

        let mut other = cfg.clone();
        other.n_max = 6;
        assert!(matches!(consistency_sweep(&other), Err(Error::Checkpoint(_))));
    }
}
