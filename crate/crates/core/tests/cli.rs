use std::path::Path;
use std::process::{Command, Output};

fn nntrav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nntrav")).args(args).env_remove("NNTRAV_SEED").output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_then_traverse() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "lr.json");
    let out = nntrav(&["generate", "lr-pow2", "--m", "2", "--k", "1", "--output", &g]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let sidecar: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(format!("{g}.sidecar.json")).unwrap()).unwrap();
    assert_eq!(sidecar["family"], "lr-pow2");

    let report = json(&nntrav(&["traverse", "--input", &g, "--start", "0"]));
    assert_eq!(report["n"], 9);
    assert_eq!(report["traversal"].as_array().unwrap().len(), 9);
    assert_eq!(report["metric"], true);
    assert_eq!(report["log_bound"]["within"], true);
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "m.json");
    assert!(nntrav(&["generate", "random-metric", "--n", "8", "--max-weight", "9", "--seed", "7", "--output", &g]).status.success());
    let first = std::fs::read(&g).unwrap();
    assert!(nntrav(&["generate", "random-metric", "--n", "8", "--max-weight", "9", "--seed", "7", "--output", &g]).status.success());
    assert_eq!(first, std::fs::read(&g).unwrap());

    let a = nntrav(&["traverse", "--input", &g, "--ties", "random", "--seed", "3"]);
    let b = nntrav(&["traverse", "--input", &g, "--ties", "random", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_nntrav"))
        .args(["traverse", "--input", &g, "--ties", "random"])
        .env("NNTRAV_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn alternative_formats() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "k.json");
    assert!(nntrav(&["generate", "complete", "--n", "4", "--output", &g]).status.success());
    let edges = nntrav(&["generate", "complete", "--n", "4", "--format", "edges"]);
    let text = String::from_utf8(edges.stdout).unwrap();
    assert!(text.starts_with("n 4"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.starts_with('n')).count(), 6);

    let dot = String::from_utf8(nntrav(&["traverse", "--input", &g, "--format", "dot"]).stdout).unwrap();
    assert!(dot.contains("graph"));
    let csv = String::from_utf8(nntrav(&["traverse", "--input", &g, "--format", "csv"]).stdout).unwrap();
    assert!(csv.lines().count() >= 2);
}

#[test]
fn simulate_and_duel_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "p.json");
    assert!(nntrav(&["generate", "path", "--n", "5", "--output", &g]).status.success());
    let out = nntrav(&["simulate", "--input", &g, "--start", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["r1_r2"]["ok"], true);
    assert_eq!(summary["explored"], 5);

    let out = nntrav(&["duel", "nn", "clique", "--n", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["steps"], 10);
    assert_eq!(summary["meets_bound"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(nntrav(&["generate", "lr-pow2", "--m", "0", "--k", "1"]).status.code(), Some(3));
    assert_eq!(nntrav(&["traverse", "--input", "/definitely/missing.json"]).status.code(), Some(5));
    assert_eq!(nntrav(&["no-such-command"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "lr.json");
    assert!(nntrav(&["generate", "lr-pow2", "--m", "2", "--k", "1", "--output", &g]).status.success());
    assert_eq!(nntrav(&["simulate", "--input", &g, "--budget", "1"]).status.code(), Some(4));
    assert_eq!(nntrav(&["traverse", "--input", &g, "--start", "99"]).status.code(), Some(3));

    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(nntrav(&["traverse", "--input", &bad]).status.code(), Some(3));
}

#[test]
fn empty_bench_suite_prints_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let suite = path(dir.path(), "suite.json");
    std::fs::write(&suite, r#"{"rows":[]}"#).unwrap();
    let out = nntrav(&["bench", "--suite", &suite]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), ["# nntrav-bench v1", "family,n,m,k,agent,adversary,value,bound,ratio,seed"]);
}

#[test]
fn small_bench_suite_runs_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let suite = path(dir.path(), "suite.json");
    std::fs::write(
        &suite,
        r#"{"rows":[{"family":"lr-pow2","m":3,"k":1},{"family":"clique","n":5,"agent":"nn"},{"family":"killer","n":12},{"family":"sim","n":8,"rate":0.2}]}"#,
    )
    .unwrap();
    let out = nntrav(&["bench", "--suite", &suite]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let families: Vec<&str> = text.lines().skip(2).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(families, ["lr-pow2", "clique", "dfs-killer", "sim"]);
}
