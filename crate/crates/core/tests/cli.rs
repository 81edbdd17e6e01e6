use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use domstruct::io::report::{read_report, ReportDocument, Verdict, REPORT_SCHEMA_V1};
use tempfile::tempdir;

fn domstruct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domstruct")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn construct_prints_trace() {
    let dir = tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let json = dir.path().join("t.json");
    let o = domstruct(&["construct", "-i", &c4, "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("-> m=6 in 1 steps"), "{}", stdout(&o));
    let trace: serde_json::Value = serde_json::from_str(&fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(trace["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_and_solve() {
    let dir = tempdir().unwrap();
    let k4 = write(dir.path(), "k4.g6", "C~\n");
    let o = domstruct(&["oracle", "-i", &k4]);
    assert!(stdout(&o).contains("gamma=1"));
    let o = domstruct(&["oracle", "-i", &k4, "--all"]);
    assert!(stdout(&o).contains("(4 sets)"));
    let o = domstruct(&["solve", "-i", &k4, "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Match"));
    // solve refuses non-cubic input
    let c5 = write(dir.path(), "c5.g6", "Dhc\n");
    let o = domstruct(&["solve", "-i", &c5]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_writes_schema_valid_report() {
    let dir = tempdir().unwrap();
    let petersen = write(dir.path(), "petersen.g6", "IheA@GUAo\n");
    let json = dir.path().join("r.json");
    let o = domstruct(&["verify", "-i", &petersen, "--json", json.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&json).unwrap();
    let doc: ReportDocument = read_report(&text).unwrap();
    assert_eq!(doc.graph_id, "petersen");
    assert_eq!(doc.oracle_gamma, Some(3));
    assert!(doc.runtimes.is_empty());
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA_V1).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(jsonschema::validator_for(&schema).unwrap().is_valid(&value));
}

#[test]
fn strict_exit_code_follows_refutations() {
    let dir = tempdir().unwrap();
    // a cubic graph on 10 vertices whose labeling candidate lies in no minimum dominating set
    let g = write(dir.path(), "g.g6", "IAYcH`W_o\n");
    let o = domstruct(&["verify", "-i", &g]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("REFUTED"));
    let o = domstruct(&["verify", "-i", &g, "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    let o = domstruct(&["corpus", "-i", &g, "--strict"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corpus_sources() {
    let dir = tempdir().unwrap();
    let six = write(dir.path(), "six.g6", "EFz_\nE{Sw\n");
    let json = dir.path().join("c.json");
    let o = domstruct(&["corpus", "-i", &six, "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let run: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(run["reports"].as_array().unwrap().len(), 2);
    assert_eq!(run["summary"]["graphs"], 2);

    let empty = write(dir.path(), "empty.g6", "");
    let o = domstruct(&["corpus", "-i", &empty, "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 graphs"));

    let edges = dir.path().join("edges");
    fs::create_dir(&edges).unwrap();
    write(&edges, "k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    write(&edges, "c6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let o = domstruct(&["corpus", "--dir", edges.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let run: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let ids: Vec<&str> = run["reports"].as_array().unwrap().iter().map(|r| r["graph_id"].as_str().unwrap()).collect();
    assert_eq!(ids, vec!["c6.txt", "k4.txt"]);

    let o = domstruct(&["corpus"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("27 graphs"));
}

#[test]
fn gen_is_deterministic_and_cubic() {
    let a = domstruct(&["gen", "-n", "12", "--count", "3", "--seed", "9"]);
    let b = domstruct(&["gen", "-n", "12", "--count", "3", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let graphs = domstruct::io::parse_graph6_lines(&stdout(&a)).unwrap();
    assert_eq!(graphs.len(), 3);
    assert!(graphs.iter().all(|g| g.n() == 12 && g.degree_profile().is_cubic && g.is_connected()));
    assert_eq!(domstruct(&["gen", "-n", "5"]).status.code(), Some(1));
}

#[test]
fn export_dot_marks_added_edges_and_labels() {
    let dir = tempdir().unwrap();
    let c4 = write(dir.path(), "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let o = domstruct(&["export-dot", "-i", &c4, "--k-graph", "--labels"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph \"c4\" {"));
    assert_eq!(dot.matches("origin=added").count(), 2);
    assert_eq!(dot.matches("labeled=true").count(), 1);
    let o = domstruct(&["export-dot", "-i", &c4]);
    assert!(!stdout(&o).contains("origin=added"));
}

#[test]
fn usage_and_io_errors_exit_one() {
    assert_eq!(domstruct(&["nonsense"]).status.code(), Some(1));
    assert_eq!(domstruct(&["verify"]).status.code(), Some(1));
    assert_eq!(domstruct(&["verify", "-i", "/nonexistent/g.g6"]).status.code(), Some(1));
    assert_eq!(domstruct(&["--help"]).status.code(), Some(0));
    let dir = tempdir().unwrap();
    let bad = write(dir.path(), "bad.g6", "C~x\n");
    let o = domstruct(&["oracle", "-i", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn verdict_names_are_stable() {
    let names: Vec<&str> = Verdict::ALL.iter().map(|v| v.as_str()).collect();
    assert_eq!(names, ["HOLDS", "REFUTED", "SKIPPED", "STRUCTURE_VIOLATION", "BUDGET_EXCEEDED"]);
}
