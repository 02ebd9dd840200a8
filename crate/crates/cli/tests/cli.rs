use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twisted-homology"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn torsion(v: &Value) -> Vec<u64> {
    v["torsion"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect()
}

#[test]
fn compute_examples() {
    let o = run(&["compute", "--g", "3", "--s", "1", "--coeffs", "twisted"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H1 = Z2 ⊕ Z2 ⊕ Z2"), "{}", stdout(&o));

    let o = run(&["compute", "--g", "9", "--s", "0", "--coeffs", "twisted"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("H1 = Z2 ⊕ Z2\n"), "{}", stdout(&o));

    let o = run(&["compute", "--g", "2", "--s", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("N_{2,0}"));
}

#[test]
fn compute_json_fields() {
    let o = run(&["--json", "compute", "--g", "5", "--s", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["genus", "boundary", "coefficients", "free_rank", "torsion", "kernel_rank", "matched_expected"]
    );
    assert_eq!(v["genus"], 5);
    assert_eq!(v["free_rank"], 0);
    assert_eq!(torsion(&v), [2, 2, 2]);
    assert_eq!(v["matched_expected"], true);
}

#[test]
fn compute_trivial_coefficients() {
    let o = run(&["compute", "--g", "4", "--s", "1", "--coeffs", "trivial", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["coefficients"], "trivial");
    assert_eq!(v["matched_expected"], true);
}

#[test]
fn table_examples() {
    let o = run(&["table", "--g-min", "3", "--g-max", "12", "--s", "both", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 19);
    let cells: Vec<(u64, u64)> = rows.iter().map(|r| (r["genus"].as_u64().unwrap(), r["boundary"].as_u64().unwrap())).collect();
    let want: Vec<(u64, u64)> = (3..=12).map(|g| (g, 1)).chain((4..=12).map(|g| (g, 0))).collect();
    assert_eq!(cells, want);
    for r in rows {
        let g = r["genus"].as_u64().unwrap();
        assert_eq!(torsion(r), if g <= 6 { vec![2, 2, 2] } else { vec![2, 2] }, "{r}");
        assert_eq!(r["matched_expected"], true);
    }

    let o = run(&["table", "--g-min", "7", "--g-max", "7", "--s", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(torsion(&v["rows"][0]), [2, 2]);

    assert_eq!(code(&run(&["table", "--g-min", "1", "--g-max", "2"])), 2);
    assert_eq!(code(&run(&["table", "--g-min", "6", "--g-max", "5"])), 2);
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "--g", "6", "--s", "0", "action"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = run(&["--json", "verify", "--g", "6", "--s", "0", "action"]);
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["module_compatible"], true);
    let rels = v["relations"].as_array().unwrap();
    assert!(rels.iter().all(|r| r["in_module"] == true));
    let modulo: Vec<&str> = rels.iter().filter(|r| r["exact"] == false).map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(modulo, ["B3", "F"]);

    let o = run(&["--json", "verify", "--g", "5", "--s", "1", "kernel"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["winner"], "minus");
    let minus = &v["variants"][0];
    assert_eq!(minus["membership"], true);
    assert_eq!(minus["generation"], true);
    assert_eq!(minus["independence"], true);

    assert_eq!(code(&run(&["verify", "--g", "3", "--s", "0", "action"])), 2);
}

#[test]
fn run_braid_toy() {
    let p = scratch("braid.pres", "group braid\ngen a b\nrel a b a = b a b\n");
    let r = scratch("braid-trivial.json", r#"{"dimension": 1, "generators": {"a": {"matrix": [[1]]}, "b": {"matrix": [[1]]}}}"#);
    let o = bin().args(["run", "--json", "--presentation"]).arg(&p).arg("--representation").arg(&r).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["free_rank"], 1);
    assert!(torsion(&v).is_empty());
}

#[test]
fn run_rejects_bad_inputs() {
    let p = scratch("bad-braid.pres", "gen a b\nrel a b a = b a b\n");
    let singular = scratch("singular.json", r#"{"dimension": 2, "generators": {"a": {"matrix": [[2, 0], [0, 1]]}, "b": {"matrix": [[1, 0], [0, 1]]}}}"#);
    let o = bin().arg("run").arg("--presentation").arg(&p).arg("--representation").arg(&singular).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`a`"));

    // x y x != y x y for these two elementary matrices
    let broken = scratch("broken.json", r#"{"dimension": 2, "generators": {"a": {"matrix": [[1, 1], [0, 1]]}, "b": {"matrix": [[1, 0], [1, 1]]}}}"#);
    let o = bin().arg("run").arg("--presentation").arg(&p).arg("--representation").arg(&broken).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("relation #0"));

    let missing = scratch("missing.json", r#"{"dimension": 1, "generators": {"a": {"matrix": [[1]]}}}"#);
    let o = bin().arg("run").arg("--presentation").arg(&p).arg("--representation").arg(&missing).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`b`"));

    let garbled = scratch("garbled.pres", "gen a\nrel a = a ?\n");
    let o = bin().arg("run").arg("--presentation").arg(&garbled).arg("--representation").arg(&missing).output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 11"));
}

#[test]
fn emit_run_round_trip_matches_compute() {
    for (g, s) in [(3, 1), (4, 1), (4, 0), (6, 0), (7, 1)] {
        let (gs, ss) = (g.to_string(), s.to_string());
        let emit = |artifact: &str| stdout(&run(&["emit", "--g", &gs, "--s", &ss, "--artifact", artifact]));
        let p = scratch(&format!("n{g}{s}.pres"), &emit("presentation"));
        let r = scratch(&format!("n{g}{s}.rep.json"), &emit("representation"));
        let m = scratch(&format!("n{g}{s}.mod.json"), &emit("module"));
        let o = bin()
            .args(["--json", "run", "--presentation"])
            .arg(&p)
            .arg("--representation")
            .arg(&r)
            .arg("--module")
            .arg(&m)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let ran = json(&o);
        let direct = json(&run(&["--json", "compute", "--g", &gs, "--s", &ss]));
        for key in ["free_rank", "torsion", "kernel_rank"] {
            assert_eq!(ran[key], direct[key], "N_{{{g},{s}}} {key}");
        }
    }
}

#[test]
fn emit_formats() {
    let o = run(&["emit", "--g", "4", "--s", "1", "--format", "dsl"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("gen a1 a2 a3"), "{}", stdout(&o));
    let o = run(&["emit", "--g", "4", "--s", "0", "--artifact", "module", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["rank"], 4);
    assert_eq!(code(&run(&["emit", "--g", "4", "--s", "1", "--format", "json"])), 2);
    assert_eq!(code(&run(&["emit", "--g", "2", "--s", "1"])), 2);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["table", "--g-min", "3", "--g-max", "8"][..],
        &["--json", "table", "--g-min", "3", "--g-max", "8", "--s", "0"],
        &["emit", "--g", "6", "--s", "0", "--artifact", "representation"],
        &["emit", "--g", "8", "--s", "0"],
        &["verify", "--g", "6", "--s", "1", "kernel"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
