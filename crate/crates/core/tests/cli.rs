use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use prosimpl::io::Loader;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prosimpl")).current_dir(fixtures()).args(args).output().unwrap()
}

fn record(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("prosimpl-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sd_of_the_triangle() {
    let d = scratch("sd");
    let (out, gamma) = (d.join("sd.json"), d.join("gamma.json"));
    let o = run(&["sd", "--input", "sset/delta2.json", "--iterations", "1", "--output", path(&out), "--emit-gamma", path(&gamma)]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(&o);
    assert!(r["summary"].as_str().unwrap().contains("(7, 12, 6)"));
    // emitted files load and validate again
    let (l, v) = Loader::open(&out).unwrap();
    let x = l.sset(&v).unwrap();
    assert!(x.validate().is_empty());
    assert_eq!(x.counts(), vec![7, 12, 6]);
    let (l, v) = Loader::open(&gamma).unwrap();
    let g = l.smap(&v, None, None).unwrap();
    assert!(g.validate().is_empty());
    assert_eq!(g.target().counts(), vec![3, 3, 1]);
}

#[test]
fn homology_of_the_projective_plane() {
    let o = run(&["homology", "sset/rp2.json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(&o);
    assert_eq!(r["result"]["degrees"][1]["torsion"], serde_json::json!([2]));
    assert_eq!(r["result"]["degrees"][1]["rank"], 0);
}

#[test]
fn boundary_matrices_are_exported() {
    let d = scratch("matrices");
    let prefix = d.join("d");
    let o = run(&["homology", "sset/delta1.json", "--export-matrices", path(&prefix)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(d.join("d1.txt")).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().any(|t| t == "-1")), "{text}");
}

#[test]
fn identity_pro_map_has_no_obstruction() {
    let o = run(&["check-proeq", "--promap", "id.json", "--fibrant", "bz2.json", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(&o);
    assert_eq!(r["result"]["status"], "NoObstructionFound");
    assert_eq!(r["result"]["budgets"]["dim"], 3);
}

#[test]
fn collapse_is_a_completed_negative_verdict() {
    let o = run(&["check-proeq", "--promap", "collapse.json", "--fibrant", "pt.json", "bz2.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(record(&o)["result"]["status"], "NotProEquivalence");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["check-proeq", "--promap", "collapse.json", "--fibrant", "pt.json", "bz2.json", "--meta"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    // timing only on stderr
    assert!(String::from_utf8_lossy(&a.stderr).contains("elapsed_ms"));
    assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    let (c, d) = (run(&["export-dot", "--face-poset", "sset/delta2.json"]), run(&["export-dot", "--face-poset", "sset/delta2.json"]));
    assert_eq!(c.stdout, d.stdout);
    assert!(String::from_utf8_lossy(&c.stdout).starts_with("digraph"));
}

#[test]
fn parallel_flag_does_not_change_the_record() {
    let a = run(&["check-proeq", "--promap", "collapse.json", "--fibrant", "pt.json", "bz2.json"]);
    let b = run(&["check-proeq", "--promap", "collapse.json", "--fibrant", "pt.json", "bz2.json", "--parallel"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn refinement_from_files() {
    let o = run(&["refine-solve", "--promap", "refine.json", "--fibrant", "s0.json", "--object", "0", "--n", "0", "--map", "refine_map.json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = record(&o);
    assert_eq!(r["result"]["status"], "solved");
    assert_eq!(r["result"]["alpha"], "1<0");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["sd", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let d = scratch("bad");
    let bad = d.join("bad.json");
    std::fs::write(&bad, r#"{"simplices": [["a"], ["e"]], "faces": {"e": ["a", "b"]}}"#).unwrap();
    let o = run(&["validate", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(record(&o)["status"], "error");

    let o = Command::new(env!("CARGO_BIN_EXE_prosimpl"))
        .current_dir(fixtures())
        .env("PROSIMPL_MAX_SIMPLICES", "20")
        .args(["sd", "--input", "sset/torus.json", "--iterations", "1"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["sd", "--input", "sset/torus.json", "--iterations", "1", "--max-simplices", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn every_fixture_validates_from_the_command_line() {
    for entry in std::fs::read_dir(fixtures().join("sset")).unwrap() {
        let p = entry.unwrap().path();
        let o = run(&["validate", path(&p)]);
        assert_eq!(o.status.code(), Some(0), "{}", p.display());
    }
    for n in ["id.json", "collapse.json", "refine.json", "inclusion.json", "category/cospan.json", "complex/torus.json"] {
        assert_eq!(run(&["validate", n]).status.code(), Some(0), "{n}");
    }
}
