//! End-to-end runs of the `bidegree-lab` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bidegree-lab"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    (status.code().unwrap_or(-1), String::from_utf8(stdout).unwrap(), String::from_utf8(stderr).unwrap())
}

fn write_suite(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("t.suite");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn core_suite_meets_every_expectation() {
    let (code, out, err) = run(lab().arg("verify").arg(root().join("suites/paper-core.suite")));
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("summary: 26 checks, 26 met, 0 unmet"), "{out}");
}

#[test]
fn empty_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(dir.path(), "name = \"empty\"\n");
    let (code, out, _) = run(lab().arg("verify").arg(&suite));
    assert_eq!(code, 0);
    assert_eq!(out, "suite empty (rng_seed 0)\nsummary: 0 checks, 0 met, 0 unmet\n");
}

fn perturbed_suite(expect: &str) -> String {
    let data = root().join("data/hpt.poly");
    format!(
        "name = \"perturbed\"\n[[check]]\nid = \"p\"\nkind = \"conics\"\nanchor = \"moved conic\"\n\
         expect = \"{expect}\"\nfile = {data:?}\nequation = \"Q\"\nideals = [\"perturbed\"]\n"
    )
}

#[test]
fn expected_failure_is_a_met_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(dir.path(), &perturbed_suite("fail"));
    let (code, out, _) = run(lab().arg("verify").arg(&suite));
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("suite perturbed"));
    assert!(out.contains("ok   p"), "{out}");
}

#[test]
fn unmet_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(dir.path(), &perturbed_suite("pass"));
    let (code, out, _) = run(lab().arg("verify").arg(&suite));
    assert_eq!(code, 1);
    assert!(out.contains("MISS p"), "{out}");
}

#[test]
fn bad_suite_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write_suite(dir.path(), "name = \"x\"\n[[check]]\nid = \"a\"\nkind = \"nope\"\n");
    let (code, _, err) = run(lab().arg("verify").arg(&suite));
    assert_eq!(code, 2);
    assert!(err.contains("kind"), "{err}");
}

#[test]
fn json_report_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let suite = root().join("suites/paper-core.suite");
    let mut reports = Vec::new();
    for threads in ["1", "4"] {
        let json = dir.path().join(format!("r{threads}.json"));
        let (code, out, _) =
            run(lab().env("BIDEGREE_LAB_THREADS", threads).arg("verify").arg(&suite).arg("--json-report").arg(&json));
        assert_eq!(code, 0);
        let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        for c in value["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("elapsed_ms");
        }
        reports.push((out, value));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0].1["checks"].as_array().unwrap().len(), 26);
}

#[test]
fn classify_emits_table2_csv() {
    let (code, out, _) = run(lab().args(["classify", "--emit", "table2", "--format", "csv", "--facts"]).arg(root().join("data/paper.facts")));
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 55);
    assert_eq!(out, std::fs::read_to_string(root().join("data/table2.csv")).unwrap());
}

#[test]
fn classify_reports_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let facts = dir.path().join("bad.facts");
    std::fs::write(&facts, "T 1 3 1 2 proved impossible\n").unwrap();
    let (code, _, err) = run(lab().args(["classify", "--facts"]).arg(&facts));
    assert_eq!(code, 1, "{err}");
}

#[test]
fn parse_reports_syntax_errors() {
    let (code, _, err) = run(lab().args(["parse", "--expr", "y0^2+"]));
    assert_eq!(code, 2);
    assert!(err.contains("syntax error"), "{err}");
    let (code, out, _) = run(lab().args(["parse", "--expr", "(y0 + y1)^2*x0"]));
    assert_eq!(code, 0);
    assert_eq!(out, "y0^2*x0 + 2*y0*y1*x0 + y1^2*x0\nbidegree (2,1)\n");
}

#[test]
fn parse_uses_declared_tables() {
    let (code, out, _) = run(lab().args(["parse", "--expr", "X2*y1", "--vars"]).arg(root().join("data/reference.poly")));
    assert_eq!(code, 0);
    assert!(out.ends_with("bidegree (1,1)\n"), "{out}");
    let (code, _, err) = run(lab().args(["parse", "--expr", "w", "--vars"]).arg(root().join("data/reference.poly")));
    assert_eq!(code, 2);
    assert!(err.contains("unknown variable"), "{err}");
}

#[test]
fn check_identity_passes_and_fails() {
    let (code, out, _) = run(lab().arg("check-identity").arg("--id").arg(root().join("data/id-absorb.poly")));
    assert_eq!(code, 0);
    assert!(out.contains("verdict: PASS"));
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(root().join("data/id-absorb.poly")).unwrap().replace("cofactor = y1", "cofactor = y0");
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, src).unwrap();
    let (code, out, _) = run(lab().arg("check-identity").arg("--id").arg(&bad));
    assert_eq!(code, 1);
    assert!(out.contains("verdict: FAIL"));
}

#[test]
fn groebner_member_and_radical() {
    let file = root().join("data/hpt.poly");
    let (code, out, _) = run(lab().args(["groebner", "member", "--name", "C_y1", "--elem", "Q", "--ideal"]).arg(&file));
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("normal form: 0"));
    let (code, _, _) = run(lab().args(["groebner", "member", "--name", "C_y1", "--elem", "y0", "--ideal"]).arg(&file));
    assert_eq!(code, 1);
    let (code, _, _) = run(lab().args(["groebner", "radical", "--name", "R_y0", "--elem", "y0*x3", "--ideal"]).arg(&file));
    assert_eq!(code, 0);
    let (code, _, err) = run(lab().args(["groebner", "member", "--elem", "y0", "--ideal"]).arg(&file));
    assert_eq!(code, 2, "several ideals need --name: {err}");
}

#[test]
fn families_build_prints_equations() {
    let seed = root().join("data/hpt.poly");
    let (code, out, err) = run(lab()
        .args(["families", "build", "--variant", "double-cone", "--d", "2", "--f", "2", "--bind", "G=Q", "--seed"])
        .arg(&seed));
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("F = y0^2*t + a*b"), "{out}");
    assert!(out.contains("component Y0 on b"), "{out}");
    let (code, out, _) = run(lab().args([
        "families", "build", "--variant", "double-cone", "--d", "2", "--f", "3", "--random-vars", "y0:Y y1:Y y2:Y x0:X x1:X x2:X",
    ]));
    assert_eq!(code, 0);
    assert!(out.contains("degree: (2,3)"), "{out}");
    let (code, _, _) = run(lab().args(["families", "build", "--variant", "nope", "--d", "2", "--f", "2"]));
    assert_eq!(code, 2);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = run(lab().arg("frobnicate"));
    assert_eq!(code, 2);
    let (code, _, _) = run(lab().arg("verify").arg("/nonexistent/x.suite"));
    assert_eq!(code, 2);
}
