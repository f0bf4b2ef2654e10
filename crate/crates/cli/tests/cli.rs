use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dga")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

#[test]
fn minimal_document_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "min.json", r#"{"field": "Q"}"#);
    let o = dga(&["run", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["results"], Value::Array(vec![]));
}

#[test]
fn explicit_dual_numbers_load_and_compute() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{
      "field": "Q",
      "algebras": {"D": {"degrees": {"0": 2}, "unit": 0,
                         "mult": [[0, 0, ["1/1", "0/1"]], [0, 1, [0, 1]], [1, 0, [0, 1]]]}},
      "jobs": [{"op": "homology", "algebra": "D", "degrees": [-1, 1]},
               {"op": "hh", "algebra": "D", "degrees": [0, 4]}]
    }"#;
    let f = write(dir.path(), "d.json", doc);
    let o = dga(&["run", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    let dims = |i: usize| -> Vec<u64> {
        r["results"][i]["result"]["groups"].as_array().unwrap().iter().map(|g| g["dim"].as_u64().unwrap()).collect()
    };
    assert_eq!(dims(0), [0, 2, 0]);
    assert_eq!(dims(1), [2, 1, 1, 1, 1]);
    assert_eq!(r["results"][1]["result"]["groups"][0]["status"], "EXACT");
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p.json", r#"{"field": "F6"}"#);
    assert_eq!(dga(&["run", &f]).status.code(), Some(2));
    // schema violation names the offending path
    let f = write(dir.path(), "s.json", r#"{"field": "Q", "jobs": [{"op": "hh", "degres": [0, 1]}]}"#);
    let o = dga(&["run", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("jobs[0]"));
    // non-associative product: witness in the message
    let bad = r#"{"field": "Q", "algebras": {"A": {"degrees": {"0": 3}, "unit": 0,
        "mult": [[0, 0, [1, 0, 0]], [0, 1, [0, 1, 0]], [0, 2, [0, 0, 1]], [1, 0, [0, 1, 0]], [2, 0, [0, 0, 1]],
                 [1, 1, [0, 0, 1]], [1, 2, [0, 1, 0]]]}}}"#;
    let f = write(dir.path(), "a.json", bad);
    let o = dga(&["run", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("algebras.A"));
    let dup = r#"{"field": "Q", "algebras": {"A": {"degrees": {"0": 1}, "unit": 0, "mult": [[0, 0, [1]], [0, 0, [1]]]}}}"#;
    let o = dga(&["run", &write(dir.path(), "d.json", dup)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("duplicate"));
}

#[test]
fn scope_and_instability_codes() {
    assert_eq!(dga(&["theorem-a", "--algebra", "dual_numbers"]).status.code(), Some(4));
    let o = dga(&["lurie", "--algebra", "square_zero_class:-1", "--no-stabilize"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(report(&o)["results"][0]["result"]["report"]["associative"], 3);
    assert_eq!(dga(&["lurie", "--algebra", "square_zero_class:-1"]).status.code(), Some(0));
}

#[test]
fn single_shot_forms() {
    let o = dga(&["hh", "--algebra", "dual_numbers", "--degrees", "0", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = dga(&["adjunction-check", "--field", "F2", "--bimodule", "dual_numbers", "--point", "1,0", "--target", "dual_numbers"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = dga(&["bar-check", "--algebra", "dual_numbers", "--pretty"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("quasi_iso: true"));
}

#[test]
fn cache_reuse_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let a = dga(&["hh", "--algebra", "dual_numbers", "--cache-dir", c]);
    let b = dga(&["hh", "--algebra", "dual_numbers", "--cache-dir", c]);
    assert_eq!(a.stdout, b.stdout);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    // corrupt the stored dims: the entry fails its digest and is recomputed
    let text = std::fs::read_to_string(&entries[0]).unwrap().replace("\"dim\":2", "\"dim\":7");
    std::fs::write(&entries[0], text).unwrap();
    let c2 = dga(&["hh", "--algebra", "dual_numbers", "--cache-dir", c]);
    assert_eq!(a.stdout, c2.stdout);
    let plain = dga(&["hh", "--algebra", "dual_numbers"]);
    assert_eq!(a.stdout, plain.stdout);
}

#[test]
fn output_file_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = dga(&["lurie", "--algebra", "ground", "--out", out.to_str().unwrap(), "--timing"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(r["timing_ms"].is_u64());
    assert_eq!(r["results"][0]["result"]["report"]["commutative"], 2);
}
