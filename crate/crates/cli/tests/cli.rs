//! Runs the `pgg` binary on small files and checks output and exit status.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pgg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";
const PATH5: &str = "5 4\n0 1\n1 2\n2 3\n3 4\n";
const FOUR_TRIANGLES: &str = "9 12\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n4 5\n4 6\n5 6\n6 7\n6 8\n7 8\n";

#[test]
fn solve_exit_codes() {
    let d = TempDir::new().unwrap();
    let ft = write(d.path(), "ft.graph", FOUR_TRIANGLES);
    let o = pgg(&["solve", "--graph", &ft, "--pattern", "101", "--method", "brute"]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stdout(&o).starts_with("NONE"));

    let c5 = write(d.path(), "c5.graph", C5);
    for method in ["brute", "cnf"] {
        let o = pgg(&["solve", "--graph", &c5, "--pattern", "101", "--method", method, "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["status"], "FOUND");
        assert_eq!(v["witness"], "11111");
    }

    let bad = write(d.path(), "bad.graph", "3 1\n0 x\n");
    let o = pgg(&["solve", "--graph", &bad, "--pattern", "101"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = pgg(&["solve", "--graph", &c5, "--pattern", "1x1"]);
    assert_eq!(code(&o), 2);
    let o = pgg(&["solve", "--graph", &c5, "--pattern", "101", "--cap", "4"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cap"));
}

#[test]
fn solve_json_is_byte_identical_across_runs() {
    let d = TempDir::new().unwrap();
    let c5 = write(d.path(), "c5.graph", C5);
    let args = ["solve", "--graph", &c5, "--pattern", "101", "--method", "cnf", "--format", "json"];
    assert_eq!(pgg(&args).stdout, pgg(&args).stdout);
}

#[test]
fn solve_all_and_dimacs() {
    let d = TempDir::new().unwrap();
    let p5 = write(d.path(), "p5.graph", PATH5);
    let o = pgg(&["solve", "--graph", &p5, "--pattern", "101", "--all", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "01001"), "{}", stdout(&o));

    let out = d.path().join("enc.cnf");
    let o = pgg(&[
        "solve", "--graph", &p5, "--pattern", "101", "--format", "dimacs", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p cnf ")));
}

#[test]
fn verify_reports_deviators() {
    let d = TempDir::new().unwrap();
    let p5 = write(d.path(), "p5.graph", PATH5);
    let o = pgg(&["verify", "--graph", &p5, "--pattern", "101", "--profile", "01001"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("NTPNE"));

    let o = pgg(&["verify", "--graph", &p5, "--pattern", "101", "--profile", "11111", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["deviator"]["node"], 0);
    assert_eq!(v["deviator"]["productive_neighbors"], 1);

    let o = pgg(&["verify", "--graph", &p5, "--pattern", "01", "--profile", "00000"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("TRIVIAL"));

    let o = pgg(&["verify", "--graph", &p5, "--pattern", "101", "--profile", "0100"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("length"));
}

#[test]
fn reduce_writes_round_trippable_artifacts() {
    let d = TempDir::new().unwrap();
    let cnf = write(d.path(), "one.cnf", "p cnf 3 1\n1 2 3 0\n");
    let prefix = d.path().join("one");
    let o = pgg(&["reduce", "--cnf", &cnf, "--out", prefix.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("21 nodes"));

    let graph = d.path().join("one.graph");
    let text = fs::read_to_string(&graph).unwrap();
    let g = pgg_core::Graph::parse_text(&text).unwrap();
    assert_eq!(g.n(), 21);
    assert_eq!(g.to_text(), text);
    let labels: pgg_core::reductions::LabelMap =
        serde_json::from_str(&fs::read_to_string(d.path().join("one.labels.json")).unwrap()).unwrap();
    assert_eq!(labels.labels.len(), 21);
    assert!(fs::read_to_string(d.path().join("one.dot")).unwrap().starts_with("graph"));

    // the emitted graph can be fed straight back to the solver
    let o = pgg(&["solve", "--graph", graph.to_str().unwrap(), "--pattern", "101"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn reduce_solve_and_errors() {
    let d = TempDir::new().unwrap();
    let xxx = write(d.path(), "xxx.cnf", "p cnf 1 1\n1 1 1 0\n");
    let o = pgg(&["reduce", "--cnf", &xxx, "--solve"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("61 nodes") && stderr(&o).contains("UNSATISFIABLE"));
    assert!(stdout(&o).starts_with("61 "));

    let sat = write(d.path(), "sat.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 3 0\n");
    let o = pgg(&["reduce", "--cnf", &sat, "--solve", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("SATISFIABLE x1="));
    let _: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();

    let two = write(d.path(), "two.cnf", "p cnf 3 1\n1 2 0\n");
    let o = pgg(&["reduce", "--cnf", &two]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("malformed clause"));
}

#[test]
fn classify_examples() {
    let o = pgg(&["classify", "--pattern", "101"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("101 NP_COMPLETE"));
    assert!(stdout(&o).contains("VALID chain"));

    let o = pgg(&["classify", "--pattern", "111", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "ALWAYS_TRUE");
    assert!(v.get("chain").is_none());

    let o = pgg(&["classify", "--pattern", "1001", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NP_COMPLETE");
    let steps = v["chain"]["steps"].as_array().unwrap();
    assert_eq!(steps.last().unwrap()["base"], "THM2_ISOLATED_ODD");

    assert_eq!(code(&pgg(&["classify", "--pattern", "10a"])), 2);
}

#[test]
fn gadget_emission() {
    let o = pgg(&["gadget", "negation", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("[label=").count(), 9);
    assert!(dot.contains("label=\"t2\", style=filled"));

    let d = TempDir::new().unwrap();
    let out = d.path().join("clause.graph");
    let o = pgg(&["gadget", "clause", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# port l1 = "));
    assert_eq!(pgg_core::Graph::parse_text(&text).unwrap().n(), 21);

    let o = pgg(&["gadget", "add1", "--m", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"], 8 * 2 + 7);
    assert!(v["ports"].get("b").is_some());

    assert_eq!(code(&pgg(&["gadget", "force1", "--m", "0"])), 2);
    assert_eq!(code(&pgg(&["gadget", "nope"])), 2);
}

#[test]
fn dynamics_outcomes() {
    let d = TempDir::new().unwrap();
    let p2 = write(d.path(), "p2.graph", "2 1\n0 1\n");
    let o = pgg(&["dynamics", "--graph", &p2, "--pattern", "11", "--start", "00"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("FIXPOINT after 2 updates"));

    let ft = write(d.path(), "ft.graph", FOUR_TRIANGLES);
    for schedule in ["round-robin", "lowest-deviator"] {
        let o = pgg(&[
            "dynamics", "--graph", &ft, "--pattern", "101", "--schedule", schedule, "--format", "json",
        ]);
        assert_eq!(code(&o), 1);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_ne!(v["terminal"], "FIXPOINT");
    }

    assert_eq!(code(&pgg(&["dynamics", "--graph", &p2, "--pattern", "11", "--start", "000"])), 2);
}

#[test]
fn selftest_passes() {
    let o = pgg(&["selftest"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL "));
    assert!(text.contains("PASS negative control"));
    assert!(text.contains("ALL PASS: 8 contracts"));

    let o = pgg(&["selftest", "--group", "isolated-odd", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["contracts"].as_array().unwrap().len(), 2);
}

#[test]
fn experiments_are_seeded() {
    let args = ["experiment", "double", "--seed", "9", "--trials", "30", "--format", "json"];
    let a = pgg(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, pgg(&args).stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["trials"], 30);
}

#[test]
fn unsupported_format_is_an_error() {
    let o = pgg(&["classify", "--pattern", "101", "--format", "dot"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("does not support"));
}
