use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mrdlab"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(Path::new(env!("CARGO_MANIFEST_DIR")), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against `tests/golden/<name>`; `MRDLAB_BLESS=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("MRDLAB_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "output differs from golden {name}");
}

fn ok_golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    golden(name, &stdout(&o));
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("stderr is not JSON: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn counts() {
    ok_golden("count_gaussian_4_2.json", &["count", "gaussian", "--n", "4", "--m", "2"]);
    ok_golden("count_gaussian_4_2_q3.json", &["count", "gaussian", "--n", "4", "--m", "2", "--q", "3"]);
    ok_golden("count_intersecting.json", &["count", "intersecting", "--k", "1", "--l", "2", "--m", "2", "--n", "4"]);
    ok_golden("count_products.json", &["count", "products", "--k", "1", "--l", "1", "--m", "1", "--n", "3"]);
    ok_golden("count_orbits.json", &["count", "orbits", "--m", "3", "--n", "3"]);
}

#[test]
fn homogeneous_weight_tables() {
    ok_golden("homweight_right_2x3.tsv", &["homweight", "table", "--m", "2", "--n", "3", "--q", "2", "--side", "right"]);
    ok_golden("homweight_left_2x3.tsv", &["homweight", "table", "--m", "2", "--n", "3", "--side", "left"]);
}

#[test]
fn geometry_stats() {
    let o = run(&["geom", "stats", "--m", "3", "--n", "2", "--q", "2"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((v["points"].as_u64(), v["lines"].as_u64(), v["planes"].as_u64()), (Some(64), Some(112), Some(28)));
    golden("geom_stats_3x2.json", &stdout(&o));
    ok_golden("geom_stats_2x2_q8.json", &["geom", "stats", "--m", "2", "--n", "2", "--q", "8", "--poly", "1,1,0,1"]);
}

#[test]
fn gabidulin_code_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["code", "gabidulin", "--m", "3", "--n", "2", "--k", "1", "--q", "2", "--out", "c.mat"]);
    assert_eq!(o.status.code(), Some(0));
    golden("code_gabidulin_321.json", &stdout(&o));
    golden("code_gabidulin_321.mat", &std::fs::read_to_string(dir.path().join("c.mat")).unwrap());

    let good = run_in(dir.path(), &["dist", "check", "--k", "1", "--uniform", "c.mat"]);
    assert_eq!(stdout(&good), "{\"k_good\": true}\n");
    let check = run_in(dir.path(), &["code", "check", "--k", "1", "--in", "c.mat"]);
    assert_eq!(stdout(&check), stdout(&o));
    // Not 2-good: the witness is reported, and the run itself succeeds.
    let bad = run_in(dir.path(), &["dist", "check", "--k", "2", "--uniform", "c.mat"]);
    assert_eq!(bad.status.code(), Some(0));
    golden("dist_check_321_k2.json", &stdout(&bad));
    let classify = run_in(dir.path(), &["dist", "classify", "--k", "1", "--uniform", "c.mat"]);
    golden("dist_classify_321.json", &stdout(&classify));
}

#[test]
fn weighted_distribution_files() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("d.dist"),
        "# q=2 m=1 n=1\nw 1/3\n0\n\nw 2/3\n1\n",
    )
    .unwrap();
    let o = run_in(dir.path(), &["dist", "check", "--k", "1", "--in", "d.dist"]);
    golden("dist_check_weighted.json", &stdout(&o));
}

#[test]
fn minimum_dense_search() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(dir.path(), &["search", "min-dense", "--m", "3", "--n", "2", "--q", "2", "--k", "1", "--witness", "w.txt"]);
    assert_eq!(o.status.code(), Some(0));
    golden("search_321.json", &stdout(&o));
    golden("search_321_witness.txt", &std::fs::read_to_string(dir.path().join("w.txt")).unwrap());
    let dense = run_in(dir.path(), &["geom", "check-dense", "--k", "1", "--in", "w.txt"]);
    assert_eq!(stdout(&dense), "{\"dense\": true, \"unblocked\": null}\n");

    ok_golden("search_321_decide5.json", &["search", "min-dense", "--m", "3", "--n", "2", "--k", "1", "--decide", "5"]);
}

#[test]
fn exhausted_budget_exits_with_one() {
    let o = run(&["search", "min-dense", "--m", "3", "--n", "2", "--k", "2", "--budget-nodes", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "budget_exhausted");
    assert_eq!(v["proof"], false);
}

#[test]
fn random_coding_commands() {
    ok_golden("rc_bound.json", &["rc", "intersect", "--m", "2", "--n", "3", "--k", "2", "--bound"]);
    ok_golden("rc_exact.json", &["rc", "intersect", "--m", "2", "--n", "3", "--k", "2"]);
    ok_golden("rc_estimate.json", &["rc", "intersect", "--m", "2", "--n", "3", "--k", "2", "--estimate", "--trials", "5000", "--seed", "3"]);
    ok_golden("rc_joint_linear.json", &["rc", "joint-check", "--k", "2", "--full", "--m", "2", "--n", "2"]);
    ok_golden("rc_joint_affine.json", &["rc", "joint-check", "--k", "2", "--mode", "affine", "--full", "--m", "2", "--n", "2"]);
    ok_golden("rc_fset_random.json", &["rc", "fset-extract", "--random", "6", "--length", "8", "--seed", "5"]);
    ok_golden("rc_fset_separating.json", &["rc", "fset-extract", "--random", "6", "--length", "8", "--seed", "5", "--family", "separating"]);

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("v.txt"), "0 0 1 1\n0 1 0 1\n0,1,1,0\n").unwrap();
    let o = run_in(dir.path(), &["rc", "fset-extract", "--in", "v.txt", "--k", "2"]);
    golden("rc_fset_file.json", &stdout(&o));
}

#[test]
fn estimates_ignore_the_thread_count() {
    let args = ["rc", "intersect", "--m", "2", "--n", "3", "--k", "2", "--estimate", "--trials", "20000", "--seed", "9"];
    let one = run(&[&args[..], &["--threads", "1"]].concat());
    let four = run(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(stdout(&one), stdout(&four));
}

#[test]
fn fast_battery_passes() {
    let o = run(&["verify", "--fast"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let passing = out.lines().filter(|l| l.split('\t').nth(4) == Some("ok")).count();
    assert!(passing >= 20, "only {passing} passing checks");
    assert!(!out.lines().any(|l| l.split('\t').nth(4) == Some("FAIL")));

    let json = run(&["verify", "--scope", "fast", "--json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 15);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["verify", "--scope", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["geom"]).status.code(), Some(2));
    assert_eq!(run(&["count", "gaussian", "--n", "x", "--m", "1"]).status.code(), Some(2));
    let o = run(&["dist", "check", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "Usage");
}

#[test]
fn computational_errors_are_json_on_stderr() {
    let o = run(&["geom", "check-dense", "--k", "1", "--in", "/nonexistent/points.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "Io");

    let o = run(&["dist", "check", "--k", "3", "--full", "--m", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "ParameterOutOfRange");

    let o = run(&["geom", "stats", "--m", "2", "--n", "2", "--q", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr_json(&o)["message"].is_string());

    // Joint laws need a k-good distribution.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z.mat"), "# q=2 m=2 n=2\n0 0\n0 0\n").unwrap();
    let o = run_in(dir.path(), &["rc", "joint-check", "--k", "1", "--uniform", "z.mat"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "PropertyNotVerified");
}

#[test]
fn help_is_available_at_every_level() {
    let levels: &[&[&str]] = &[
        &[],
        &["count"],
        &["count", "gaussian"],
        &["code", "gabidulin"],
        &["dist", "check"],
        &["homweight", "table"],
        &["geom", "stats"],
        &["geom", "check-dense"],
        &["search", "min-dense"],
        &["rc", "joint-check"],
        &["rc", "intersect"],
        &["rc", "fset-extract"],
        &["verify"],
    ];
    for args in levels {
        let o = run(&[*args, &["--help"]].concat());
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("Usage"));
    }
}
