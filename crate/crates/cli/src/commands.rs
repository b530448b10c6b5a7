use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use cliquecap::counting::{brute_force_clique_vector, clique_count, independent_count};
use cliquecap::enumerate::{consistency_sweep, generate, verify_main, verify_main_range, with_workers, SweepConfig};
use cliquecap::structure::{clusters, tight_cliques};
use cliquecap::transform::{apply_gt, apply_k2_move_with, hill_climb, ClimbStrategy, RewriteReport};
use cliquecap::{clique_vector, graph6_decode, independent_vector, CliqueVector, Error, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{write_json, write_table, ReportDocument, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Process exit status, in increasing severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    InputErrors = 3,
    Violation = 4,
    Internal = 5,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => Status::Internal as i32,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub type CliResult = Result<Status, CliError>;

pub struct Context {
    pub argv: Vec<String>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub seed: u64,
    pub checkpoint: Option<PathBuf>,
    pub out: Box<dyn Write>,
    pub start: Instant,
}

impl Context {
    fn emit<P: Serialize, R: Serialize>(
        &mut self,
        parameters: P,
        results: R,
        table: impl FnOnce(&mut dyn Write, &R) -> io::Result<()>,
    ) -> Result<(), CliError> {
        match self.format.unwrap_or(Format::Json) {
            Format::Table => table(&mut self.out, &results)?,
            Format::Json => {
                let doc = ReportDocument {
                    command: &self.argv,
                    parameters,
                    results,
                    version: VERSION,
                    wall_time_ms: self.start.elapsed().as_millis() as u64,
                };
                write_json(&mut self.out, &doc)?;
            }
        }
        self.out.flush()?;
        Ok(())
    }

    fn pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        Ok(with_workers(self.workers, f)?)
    }
}

/// Reads a file, or standard input for `None` and `-`.
pub fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn set_string(set: VertexSet) -> String {
    set.to_string()
}

// ---- count

#[derive(Serialize)]
struct GraphSummary {
    line: usize,
    graph6: String,
    n: usize,
    edges: usize,
    max_degree: usize,
    min_degree: usize,
    clique_vector: CliqueVector,
    clique_total: u128,
    independent_vector: CliqueVector,
    independent_total: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight_cliques: Option<Vec<VertexSet>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clusters: Option<Vec<VertexSet>>,
}

#[derive(Serialize)]
struct LineError {
    line: usize,
    error: String,
}

#[derive(Serialize)]
pub struct CountResults {
    graphs: Vec<GraphSummary>,
    errors: Vec<LineError>,
}

#[derive(Serialize)]
struct CountParams<'a> {
    input: &'a str,
    tight: bool,
    r: Option<usize>,
}

fn summarize(line: usize, text: &str, tight_r: Option<usize>) -> Result<GraphSummary, Error> {
    let g = graph6_decode(text)?;
    let (tight, cls) = match tight_r {
        Some(r) => {
            let t = tight_cliques(&g, r, 1)?;
            let c = clusters(&g, r)?.into_iter().map(|c| c.tight).collect();
            (Some(t), Some(c))
        }
        None => (None, None),
    };
    let k = clique_vector(&g);
    let i = independent_vector(&g);
    Ok(GraphSummary {
        line,
        graph6: text.to_owned(),
        n: g.n(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        clique_total: k.total(),
        clique_vector: k,
        independent_total: i.total(),
        independent_vector: i,
        tight_cliques: tight,
        clusters: cls,
    })
}

pub fn count(ctx: &mut Context, input: Option<&Path>, tight: bool, r: Option<usize>) -> CliResult {
    let text = read_input(input)?;
    let tight_r = if tight { r } else { None };
    let mut results = CountResults { graphs: Vec::new(), errors: Vec::new() };
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match summarize(idx + 1, line, tight_r) {
            Ok(s) => results.graphs.push(s),
            Err(e @ Error::Inconsistent(_)) => return Err(e.into()),
            Err(e) => results.errors.push(LineError { line: idx + 1, error: e.to_string() }),
        }
    }
    let status = if results.errors.is_empty() { Status::Ok } else { Status::InputErrors };
    let source = input.map_or("-".to_owned(), |p| p.display().to_string());
    ctx.emit(CountParams { input: &source, tight, r }, results, |out, res| {
        let mut header = vec!["line", "graph6", "n", "m", "Δ", "δ", "k-vector", "k", "i-vector", "i"];
        if tight_r.is_some() {
            header.extend(["tight cliques", "clusters"]);
        }
        let rows: Vec<Vec<String>> = res
            .graphs
            .iter()
            .map(|s| {
                let mut row = vec![
                    s.line.to_string(),
                    s.graph6.clone(),
                    s.n.to_string(),
                    s.edges.to_string(),
                    s.max_degree.to_string(),
                    s.min_degree.to_string(),
                    s.clique_vector.to_string(),
                    s.clique_total.to_string(),
                    s.independent_vector.to_string(),
                    s.independent_total.to_string(),
                ];
                if let (Some(t), Some(c)) = (&s.tight_cliques, &s.clusters) {
                    row.push(t.iter().copied().map(set_string).collect::<Vec<_>>().join(" "));
                    row.push(c.iter().copied().map(set_string).collect::<Vec<_>>().join(" "));
                }
                row
            })
            .collect();
        write_table(out, &header, &rows)?;
        for e in &res.errors {
            writeln!(out, "error on line {}: {}", e.line, e.error)?;
        }
        Ok(())
    })?;
    Ok(status)
}

// ---- verify

#[derive(Serialize)]
struct VerifyParams {
    n: Option<usize>,
    r: Option<usize>,
    sweep: Option<(usize, usize)>,
    s_max: Option<usize>,
    witness_limit: Option<usize>,
}

pub struct SweepArgs {
    pub n_max: usize,
    pub r_max: usize,
    pub s_max: Option<usize>,
    pub witness_limit: Option<usize>,
    pub max_units: Option<usize>,
}

fn main_rows(reports: &[cliquecap::enumerate::VerificationReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|v| {
            vec![
                v.n.to_string(),
                v.r.to_string(),
                v.graph_count.to_string(),
                v.max_k.to_string(),
                v.bound.to_string(),
                if v.passed() { "ok" } else { "VIOLATION" }.to_owned(),
                v.extremal.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect()
}

const MAIN_HEADER: [&str; 7] = ["n", "r", "graphs", "max k", "bound", "status", "extremal"];

pub fn verify_single(ctx: &mut Context, n: usize, r: usize) -> CliResult {
    let report = ctx.pool(|| verify_main(n, r))??;
    let status = if report.passed() { Status::Ok } else { Status::Violation };
    let params = VerifyParams { n: Some(n), r: Some(r), sweep: None, s_max: None, witness_limit: None };
    ctx.emit(params, report, |out, rep| {
        write_table(out, &MAIN_HEADER, &main_rows(std::slice::from_ref(rep)))?;
        let tallies: Vec<Vec<String>> = rep
            .lemma_tallies
            .iter()
            .map(|(k, t)| vec![k.clone(), t.applicable.to_string(), t.passed.to_string(), t.failed.to_string()])
            .collect();
        writeln!(out)?;
        write_table(out, &["check", "applicable", "passed", "failed"], &tallies)
    })?;
    Ok(status)
}

#[derive(Serialize)]
pub struct SweepResults {
    main: Vec<cliquecap::enumerate::VerificationReport>,
    consistency: cliquecap::enumerate::SweepReport,
}

pub fn verify_sweep(ctx: &mut Context, args: SweepArgs) -> CliResult {
    let mut cfg = SweepConfig::new(args.n_max, args.r_max);
    if let Some(s) = args.s_max {
        cfg.s_max = s;
    }
    cfg.workers = ctx.workers;
    cfg.checkpoint = ctx.checkpoint.clone();
    cfg.witness_limit = args.witness_limit;
    cfg.max_new_units = args.max_units;
    let main: Vec<_> = ctx
        .pool(|| verify_main_range(args.n_max))??
        .into_iter()
        .filter(|v| v.r <= args.r_max)
        .collect();
    let consistency = consistency_sweep(&cfg)?;
    let violated = main.iter().any(|v| !v.passed()) || consistency.fatal_failures > 0;
    let params = VerifyParams {
        n: None,
        r: None,
        sweep: Some((args.n_max, args.r_max)),
        s_max: Some(cfg.s_max),
        witness_limit: args.witness_limit,
    };
    ctx.emit(params, SweepResults { main, consistency }, |out, res| {
        write_table(out, &MAIN_HEADER, &main_rows(&res.main))?;
        writeln!(out)?;
        let c = &res.consistency;
        let rows: Vec<Vec<String>> = c
            .tallies
            .iter()
            .map(|(k, t)| {
                vec![
                    k.clone(),
                    t.applicable.to_string(),
                    t.passed.to_string(),
                    t.failed.to_string(),
                    t.not_applicable.to_string(),
                ]
            })
            .collect();
        write_table(out, &["check", "applicable", "passed", "failed", "n/a"], &rows)?;
        writeln!(out)?;
        writeln!(out, "units: {}{}", c.units.len(), if c.complete { "" } else { " (incomplete)" })?;
        writeln!(out, "fatal failures: {}, warning failures: {}", c.fatal_failures, c.warning_failures)?;
        for f in &c.failures {
            writeln!(out, "{f}")?;
        }
        Ok(())
    })?;
    Ok(if violated { Status::Violation } else { Status::Ok })
}

// ---- transform

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Strategy {
    First,
    Best,
}

impl From<Strategy> for ClimbStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::First => ClimbStrategy::FirstImprovement,
            Strategy::Best => ClimbStrategy::BestImprovement,
        }
    }
}

pub enum Mode {
    Greedy { strategy: Strategy, max_steps: usize },
    Move { tight: Vec<usize>, k2: Option<(usize, usize)> },
}

#[derive(Serialize)]
struct TransformParams<'a> {
    graph6: &'a str,
    r: usize,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<ClimbStrategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tight: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<(usize, usize)>,
}

#[derive(Serialize)]
pub struct TransformResults {
    initial: Graph,
    k_initial: u128,
    trace: Vec<RewriteReport>,
    #[serde(rename = "final")]
    last: Graph,
    k_final: u128,
}

/// The first non-empty line of `text`.
pub fn first_graph6(text: &str) -> Result<String, CliError> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(str::to_owned)
        .ok_or_else(|| CliError::Usage("no graph6 input".into()))
}

pub fn transform(ctx: &mut Context, graph6: &str, r: usize, mode: Mode) -> CliResult {
    let g = graph6_decode(graph6)?;
    if g.max_degree() > r {
        return Err(Error::DegreeCap { max: g.max_degree(), cap: r }.into());
    }
    let mut params = TransformParams {
        graph6,
        r,
        mode: "greedy",
        strategy: None,
        max_steps: None,
        tight: None,
        pair: None,
    };
    let trace = match mode {
        Mode::Greedy { strategy, max_steps } => {
            params.strategy = Some(strategy.into());
            params.max_steps = Some(max_steps);
            hill_climb(&g, r, max_steps, strategy.into())?
        }
        Mode::Move { tight, k2 } => {
            if let Some(&v) = tight.iter().find(|&&v| v >= g.n()) {
                return Err(CliError::Usage(format!("vertex {v} out of range for {} vertices", g.n())));
            }
            let t = VertexSet::from_vertices(tight);
            params.tight = Some(t);
            params.pair = k2;
            match k2 {
                None => {
                    params.mode = "GT";
                    vec![apply_gt(&g, r, t)?]
                }
                Some(pair) => {
                    params.mode = "K2";
                    vec![apply_k2_move_with(&g, r, t, pair)?]
                }
            }
        }
    };
    let last = trace.last().map_or_else(|| g.clone(), |s| s.after.clone());
    let results = TransformResults { k_initial: clique_count(&g), initial: g, trace, k_final: clique_count(&last), last };
    ctx.emit(params, results, |out, res| {
        let rows: Vec<Vec<String>> = res
            .trace
            .iter()
            .enumerate()
            .map(|(i, s)| {
                vec![
                    (i + 1).to_string(),
                    s.mv.to_string(),
                    s.structure.tight.to_string(),
                    s.pair.map_or(String::new(), |(u, v)| format!("{u},{v}")),
                    s.k_before.to_string(),
                    s.k_after.to_string(),
                    s.gain().to_string(),
                    s.gain_lower_bound.to_string(),
                    s.after.to_string(),
                ]
            })
            .collect();
        write_table(out, &["step", "move", "T", "pair", "k before", "k after", "gain", "gain bound", "graph6"], &rows)?;
        writeln!(out, "k: {} -> {}  final: {}", res.k_initial, res.k_final, res.last)
    })?;
    Ok(Status::Ok)
}

// ---- gen

#[derive(Serialize)]
struct GenParams {
    n: usize,
    r: usize,
    regular: Option<usize>,
}

#[derive(Serialize)]
pub struct GenResults {
    count: usize,
    graphs: Vec<Graph>,
}

pub fn gen(ctx: &mut Context, n: usize, r: usize, regular: Option<usize>) -> CliResult {
    let mut graphs = ctx.pool(|| generate(n, r))??;
    if let Some(d) = regular {
        graphs.retain(|g| g.is_regular(d));
    }
    match ctx.format {
        None => {
            for g in &graphs {
                writeln!(ctx.out, "{g}")?;
            }
            ctx.out.flush()?;
        }
        Some(_) => {
            let results = GenResults { count: graphs.len(), graphs };
            ctx.emit(GenParams { n, r, regular }, results, |out, res| {
                let rows: Vec<Vec<String>> = res
                    .graphs
                    .iter()
                    .map(|g| {
                        vec![g.to_string(), g.edge_count().to_string(), clique_count(g).to_string(), independent_count(g).to_string()]
                    })
                    .collect();
                write_table(out, &["graph6", "m", "k", "i"], &rows)
            })?;
        }
    }
    Ok(Status::Ok)
}

// ---- oracle

#[derive(Serialize)]
struct OracleParams {
    n: usize,
    graphs: usize,
    density: Option<f64>,
    seed: u64,
}

#[derive(Serialize)]
struct Mismatch {
    graph6: Graph,
    what: &'static str,
    fast: CliqueVector,
    brute_force: CliqueVector,
}

#[derive(Serialize)]
pub struct OracleResults {
    checked: usize,
    mismatches: Vec<Mismatch>,
}

/// Compares the pivoted counts with subset enumeration on seeded random
/// graphs, for both cliques and independent sets.
pub fn oracle(ctx: &mut Context, n: usize, graphs: usize, density: Option<f64>) -> CliResult {
    if let Some(p) = density.filter(|p| !(0.0..=1.0).contains(p)) {
        return Err(CliError::Usage(format!("density {p} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut mismatches = Vec::new();
    for _ in 0..graphs {
        let p = density.unwrap_or_else(|| rng.gen_range(0.05..0.95));
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        let checks = [("cliques", clique_vector(&g), brute_force_clique_vector(&g)?), (
            "independent sets",
            independent_vector(&g),
            brute_force_clique_vector(&g.complement())?,
        )];
        for (what, fast, brute) in checks {
            if fast != brute {
                mismatches.push(Mismatch { graph6: g.clone(), what, fast, brute_force: brute });
            }
        }
    }
    let status = if mismatches.is_empty() { Status::Ok } else { Status::Internal };
    let params = OracleParams { n, graphs, density, seed: ctx.seed };
    ctx.emit(params, OracleResults { checked: graphs, mismatches }, |out, res| {
        writeln!(out, "checked {} graphs, {} mismatches", res.checked, res.mismatches.len())?;
        for m in &res.mismatches {
            writeln!(out, "{} {}: fast {} brute force {}", m.graph6, m.what, m.fast, m.brute_force)?;
        }
        Ok(())
    })?;
    Ok(status)
}
