use std::io::Write;
use std::process::{Command, Output, Stdio};

use cliquecap::{canonical_form, graph6_decode, graph6_encode, Graph};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cliquecap"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn cliquecap");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Parses and validates a report document, returning it.
fn document(out: &Output, command: &str) -> Value {
    let doc: Value = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    validate(&doc, command);
    doc
}

fn is_count(v: &Value) -> bool {
    v.is_u64()
}

fn is_vector(v: &Value) -> bool {
    v.as_array().is_some_and(|a| !a.is_empty() && a[0] == 1 && a.iter().all(is_count))
}

fn is_set(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(is_count))
}

fn is_graph6(v: &Value) -> bool {
    v.as_str().is_some_and(|s| graph6_decode(s).is_ok())
}

fn has(obj: &Value, key: &str, pred: fn(&Value) -> bool) {
    let v = obj.get(key).unwrap_or_else(|| panic!("missing {key} in {obj}"));
    assert!(pred(v), "bad {key}: {v}");
}

/// The structural schema of every document the binary writes.
fn validate(doc: &Value, command: &str) {
    let top = doc.as_object().expect("object");
    let mut keys: Vec<&str> = top.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["command", "parameters", "results", "version", "wall_time_ms"]);
    let argv = doc["command"].as_array().expect("command echo");
    assert!(argv.iter().all(Value::is_string));
    assert!(argv.iter().any(|a| a == command), "{argv:?} lacks {command}");
    assert!(doc["parameters"].is_object());
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    assert!(doc["wall_time_ms"].is_u64());
    let res = &doc["results"];
    match command {
        "count" => {
            for g in res["graphs"].as_array().expect("graphs") {
                for k in ["line", "n", "edges", "max_degree", "min_degree", "clique_total", "independent_total"] {
                    has(g, k, is_count);
                }
                has(g, "graph6", is_graph6);
                has(g, "clique_vector", is_vector);
                has(g, "independent_vector", is_vector);
                for k in ["tight_cliques", "clusters"] {
                    if let Some(sets) = g.get(k) {
                        assert!(sets.as_array().unwrap().iter().all(is_set));
                    }
                }
            }
            for e in res["errors"].as_array().expect("errors") {
                has(e, "line", is_count);
                has(e, "error", Value::is_string);
            }
        }
        "verify" => {
            let reports: Vec<&Value> = match res.get("main") {
                Some(m) => {
                    let c = &res["consistency"];
                    for k in ["n_max", "r_max", "s_max", "fatal_failures", "warning_failures"] {
                        has(c, k, is_count);
                    }
                    has(c, "complete", Value::is_boolean);
                    for t in c["tallies"].as_object().expect("tallies").values() {
                        for k in ["applicable", "passed", "failed", "not_applicable"] {
                            has(t, k, is_count);
                        }
                    }
                    for f in c["failures"].as_array().expect("failures") {
                        has(f, "predicate", Value::is_string);
                        has(f, "subject", Value::is_string);
                        has(f, "relation", Value::is_string);
                        has(f, "lhs", |v| v.as_str().is_some_and(|s| s.parse::<i128>().is_ok()));
                        has(f, "rhs", |v| v.as_str().is_some_and(|s| s.parse::<i128>().is_ok()));
                    }
                    m.as_array().expect("main").iter().collect()
                }
                None => vec![res],
            };
            for rep in reports {
                for k in ["n", "r", "graph_count", "max_k", "bound", "elapsed_ms"] {
                    has(rep, k, is_count);
                }
                has(rep, "bound_holds", Value::is_boolean);
                has(rep, "equality_matches_characterization", Value::is_boolean);
                has(rep, "extremal", |v| v.as_array().is_some_and(|a| a.iter().all(is_graph6)));
                has(rep, "expected_extremal", |v| v.as_array().is_some_and(|a| a.iter().all(is_graph6)));
                assert!(rep["lemma_tallies"].is_object());
            }
        }
        "transform" => {
            has(res, "initial", is_graph6);
            has(res, "final", is_graph6);
            has(res, "k_initial", is_count);
            has(res, "k_final", is_count);
            for step in res["trace"].as_array().expect("trace") {
                has(step, "before", is_graph6);
                has(step, "after", is_graph6);
                has(step, "move", |v| v == "GT" || v == "K2");
                has(step, "k_before", is_count);
                has(step, "k_after", is_count);
                has(step, "gain_lower_bound", Value::is_i64);
                has(&step["structure"], "tight", is_set);
                has(&step["structure"], "deficiency", is_graph6);
            }
        }
        "gen" => {
            has(res, "count", is_count);
            has(res, "graphs", |v| v.as_array().is_some_and(|a| a.iter().all(is_graph6)));
            assert_eq!(res["count"].as_u64().unwrap() as usize, res["graphs"].as_array().unwrap().len());
        }
        "oracle" => {
            has(res, "checked", is_count);
            assert!(res["mismatches"].is_array());
        }
        other => panic!("unknown command {other}"),
    }
}

fn g6(g: &Graph) -> String {
    graph6_encode(g)
}

fn canonical(s: &str) -> String {
    canonical_form(&graph6_decode(s).unwrap()).as_str().to_owned()
}

#[test]
fn count_cycle() {
    let out = run(&["count"], &format!("{}\n", g6(&Graph::cycle(5).unwrap())));
    assert_eq!(code(&out), 0);
    let doc = document(&out, "count");
    let g = &doc["results"]["graphs"][0];
    assert_eq!(g["clique_vector"], serde_json::json!([1, 5, 5]));
    assert_eq!(g["independent_total"], 11);
    assert_eq!(g["max_degree"], 2);
}

#[test]
fn count_tight() {
    let out = run(&["count", "--tight", "-r", "2"], &g6(&Graph::cycle(4).unwrap()));
    let doc = document(&out, "count");
    let tight = doc["results"]["graphs"][0]["tight_cliques"].as_array().unwrap().clone();
    assert_eq!(tight, serde_json::json!([[0], [1], [2], [3]]).as_array().unwrap().clone());
}

#[test]
fn count_partial_failure() {
    let input = format!("{}\nnot graph6!\n\n{}\n", g6(&Graph::cycle(4).unwrap()), g6(&Graph::complete(3).unwrap()));
    let out = run(&["count"], &input);
    assert_eq!(code(&out), 3);
    let doc = document(&out, "count");
    assert_eq!(doc["results"]["graphs"].as_array().unwrap().len(), 2);
    assert_eq!(doc["results"]["graphs"][1]["line"], 4);
    assert_eq!(doc["results"]["errors"][0]["line"], 2);
}

#[test]
fn big_counts_are_exact() {
    let out = run(&["count"], &g6(&Graph::complete(64).unwrap()));
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("\"clique_total\": 18446744073709551616"), "{text}");
    assert!(!text.contains("e+"));
}

#[test]
fn verify_examples() {
    let out = run(&["verify", "6", "3"], "");
    assert_eq!(code(&out), 0);
    let doc = document(&out, "verify");
    let res = &doc["results"];
    assert_eq!((res["max_k"].as_u64(), res["bound"].as_u64()), (Some(19), Some(19)));
    let k4k2 = canonical_form(&Graph::clique_union(&[4, 2]).unwrap());
    assert_eq!(res["extremal"], serde_json::json!([k4k2.as_str()]));

    let doc = document(&run(&["verify", "4", "2"], ""), "verify");
    assert_eq!(doc["results"]["extremal"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_sweep_is_worker_independent() {
    let one = run(&["verify", "--sweep", "5", "4", "--workers", "1"], "");
    let three = run(&["verify", "--sweep", "5", "4", "--workers", "3"], "");
    assert_eq!(code(&one), 0);
    let (a, b) = (document(&one, "verify"), document(&three, "verify"));
    assert_eq!(a["results"]["consistency"], b["results"]["consistency"]);
    assert_eq!(a["results"]["consistency"]["fatal_failures"], 0);
    assert_eq!(a["results"]["main"].as_array().unwrap().len(), 10);
}

#[test]
fn verify_sweep_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("sweep.ck");
    let ck = ck.to_str().unwrap();
    let args = ["verify", "--sweep", "5", "3", "--checkpoint", ck];
    let partial = document(&run(&[&args[..], &["--max-units", "2"]].concat(), ""), "verify");
    assert_eq!(partial["results"]["consistency"]["complete"], false);
    let resumed = document(&run(&args, ""), "verify");
    let fresh = document(&run(&["verify", "--sweep", "5", "3"], ""), "verify");
    assert_eq!(resumed["results"]["consistency"], fresh["results"]["consistency"]);
    assert_eq!(resumed["results"]["consistency"]["complete"], true);
}

#[test]
fn transform_move() {
    let out = run(&["transform", &g6(&Graph::cycle(4).unwrap()), "-r", "2", "--move", "0"], "");
    assert_eq!(code(&out), 0);
    let doc = document(&out, "transform");
    let res = &doc["results"];
    let k3k1 = canonical_form(&Graph::clique_union(&[3, 1]).unwrap());
    assert_eq!(canonical(res["final"].as_str().unwrap()), k3k1.as_str());
    assert_eq!(res["k_initial"], res["k_final"]);
    assert_eq!(res["trace"][0]["move"], "GT");
}

#[test]
fn transform_k2_move() {
    // K_4 minus the edge 23, r = 3: T = {0,1}, R_T = K_2 on {2,3}
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
    let out = run(&["transform", &g6(&g), "-r", "3", "--move", "0,1", "--k2", "2,3"], "");
    let doc = document(&out, "transform");
    assert_eq!(doc["results"]["trace"][0]["move"], "K2");
    assert_eq!((doc["results"]["k_initial"].as_u64(), doc["results"]["k_final"].as_u64()), (Some(12), Some(16)));
}

#[test]
fn transform_greedy() {
    let staging = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (3, 5)]).unwrap();
    let doc = document(&run(&["transform", "-r", "3", "--greedy"], &g6(&staging)), "transform");
    assert_eq!(doc["results"]["k_final"], 18);
    let doc = document(&run(&["transform", "-r", "3", "--greedy", "--strategy", "best"], &g6(&staging)), "transform");
    assert_eq!(doc["results"]["k_final"], 19);

    let doc = document(&run(&["transform", &g6(&Graph::complete(4).unwrap()), "-r", "3", "--greedy"], ""), "transform");
    assert!(doc["results"]["trace"].as_array().unwrap().is_empty());
}

#[test]
fn transform_errors() {
    let c4 = g6(&Graph::cycle(4).unwrap());
    assert_eq!(code(&run(&["transform", &c4, "-r", "2", "--move", "0,1"], "")), 2);
    assert_eq!(code(&run(&["transform", &c4, "-r", "1", "--greedy"], "")), 2);
    assert_eq!(code(&run(&["transform", &c4, "-r", "2"], "")), 2);
}

#[test]
fn gen_lines() {
    let lines = |args: &[&str]| stdout(&run(args, "")).lines().map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(lines(&["gen", "4", "2"]).len(), 7);
    let regular = lines(&["gen", "6", "2", "--regular", "2"]);
    let mut got: Vec<String> = regular.iter().map(|s| canonical(s)).collect();
    got.sort();
    let mut want: Vec<String> = [Graph::cycle(6).unwrap(), Graph::clique_union(&[3, 3]).unwrap()]
        .iter()
        .map(|g| canonical_form(g).as_str().to_owned())
        .collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(lines(&["gen", "3", "0"]), vec![g6(&Graph::empty(3).unwrap())]);
    assert_eq!(lines(&["gen", "5", "4", "--workers", "1"]), lines(&["gen", "5", "4", "--workers", "4"]));
    assert_eq!(code(&run(&["gen", "13", "2"], "")), 2);

    let doc = document(&run(&["gen", "4", "2", "--format", "json"], ""), "gen");
    assert_eq!(doc["results"]["count"], 7);
}

#[test]
fn oracle_is_seeded() {
    let a = document(&run(&["oracle", "--n", "12", "--graphs", "40", "--seed", "7"], ""), "oracle");
    let b = document(&run(&["oracle", "--n", "12", "--graphs", "40", "--seed", "7"], ""), "oracle");
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["results"]["checked"], 40);
    assert!(a["results"]["mismatches"].as_array().unwrap().is_empty());
    assert_eq!(code(&run(&["oracle", "--n", "30", "--graphs", "1"], "")), 2);
}

#[test]
fn table_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "5", "2", "--out", path.to_str().unwrap()], "");
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    validate(&doc, "verify");

    let text = stdout(&run(&["count", "--format", "table"], &g6(&Graph::cycle(5).unwrap())));
    assert!(text.lines().next().unwrap().starts_with("line"));
    assert!(text.contains("(1,5,5)"));
}

#[test]
fn usage_errors() {
    assert_eq!(code(&run(&["verify"], "")), 2);
    assert_eq!(code(&run(&["count", "--tight"], "")), 2);
    assert_eq!(code(&run(&["frobnicate"], "")), 2);
    assert_eq!(code(&run(&["count", "/no/such/file"], "")), 2);
}
