use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn thom(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thom"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).unwrap();
    write("K3.g", "3 3\n0 1\n1 2\n0 2\n");
    write("C4.g", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    write("P3.g", "3 2\n0 1\n0 2\n");
    write("bad.g", "3 1\n0 7\n");
    write("E3.hg", "3 1 3\n0 1 2\n");
    write("K5_3.hg", "5 10 3\n0 1 2\n0 1 3\n0 1 4\n0 2 3\n0 2 4\n0 3 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    dir
}

#[test]
fn counts_triangles() {
    let d = fixtures();
    let o = thom(d.path(), &["count", "K3.g", "K3.g"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "6\n");
}

#[test]
fn threshold_search_on_the_four_cycle() {
    let d = fixtures();
    let o = thom(d.path(), &["search-threshold", "C4.g", "--n", "4", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("best 28\n"));
    assert!(text.contains("witness 101\n"));
    let o = thom(d.path(), &["search-all", "C4.g", "--n", "4", "--m", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["best"], "32");
    assert_eq!(v["threshold"], false);
}

#[test]
fn verify_runs_a_suite() {
    let d = fixtures();
    let o = thom(d.path(), &["verify", "local-move"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS] 04 local-move"));
    let again = thom(d.path(), &["verify", "local-move"]);
    assert_eq!(o.stdout, again.stdout);
    let listed = thom(d.path(), &["verify", "--list", "--csv"]);
    assert_eq!(stdout(&listed).lines().count(), 15);
}

#[test]
fn usage_errors_exit_with_two() {
    let d = fixtures();
    for args in [
        &["count", "K3.g"][..],
        &["count", "K3.g", "K3.g", "--bogus"],
        &["count", "K3.g", "missing.g"],
        &["verify", "no-such-suite"],
        &["search-threshold", "C4.g", "--n", "0", "--m", "1"],
        &["two-star", "--c", "0.1", "--d", "0.5", "--k", "0", "--mode", "2lead"],
    ] {
        assert_eq!(thom(d.path(), args).status.code(), Some(2), "{args:?}");
    }
    let o = thom(d.path(), &["count", "bad.g", "K3.g"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.g") && err.contains("line 2"), "{err}");
}

#[test]
fn thresholdize_writes_graph_and_log() {
    let d = fixtures();
    let o = thom(d.path(), &["thresholdize", "C4.g", "--log", "moves.txt"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(d.path().join("T.g"), &o.stdout).unwrap();
    let check = thom(d.path(), &["is-threshold", "T.g"]);
    assert!(stdout(&check).starts_with("threshold true\n"));
    let log = std::fs::read_to_string(d.path().join("moves.txt")).unwrap();
    assert!(log.ends_with("total 1 count 5\n"));
    let not = thom(d.path(), &["is-threshold", "C4.g"]);
    assert_eq!(stdout(&not), "threshold false\n");
}

#[test]
fn fractional_outputs() {
    let d = fixtures();
    assert_eq!(stdout(&thom(d.path(), &["domexp", "K3.g"])), "3/2\n");
    let o = thom(d.path(), &["alpha-star", "P3.g", "--csv"]);
    assert_eq!(stdout(&o), "alpha_star,weights,zeros,halves,ones\n2,0 1 1,1,0,2\n");
}

#[test]
fn janson_table_as_csv() {
    let d = fixtures();
    let o = thom(d.path(), &["janson", "P3.g", "--n-grid", "8", "--m-grid", "16..20:2", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,m,bound,best"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn limit_and_two_star() {
    let d = fixtures();
    let o = thom(d.path(), &["limit-search", "P3.g", "--c", "0.3", "--grid", "40", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["edge_density"].as_f64().unwrap() - 0.3).abs() < 1e-9);
    assert!(v["effective_parts"].as_u64().unwrap() <= 2);
    let o = thom(d.path(), &["two-star", "--c", "0.2", "--d", "0.6", "--k", "0.2", "--mode", "1lead", "--beta", "0.3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["f"].as_f64().unwrap() - v["objective"].as_f64().unwrap()).abs() < 1e-12);
    assert_eq!(v["no_interior_max"], true);
}

#[test]
fn hypergraph_commands() {
    let d = fixtures();
    assert_eq!(stdout(&thom(d.path(), &["hyper-count", "E3.hg", "K5_3.hg"])), "60\n");
    let o = thom(d.path(), &["hyper-is-threshold", "K5_3.hg"]);
    assert_eq!(stdout(&o), "threshold true\n");
    let o = thom(d.path(), &["hyper-thresholdize", "K5_3.hg", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["edges_removed"], 0);
}

#[test]
fn output_file_option() {
    let d = fixtures();
    let out: PathBuf = d.path().join("count.json");
    let o = thom(d.path(), &["count", "K3.g", "K3.g", "--json", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["count"], "6");
}
