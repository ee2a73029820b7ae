use std::path::PathBuf;
use std::process::{Command, Output};

#[path = "../src/report.rs"]
#[allow(dead_code)]
mod report;

use report::{Report, Status};

fn wiman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wiman")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wiman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// The shipped catalog with only `id` kept, after `edit`.
fn catalog_with(id: &str, edit: impl FnOnce(&mut serde_json::Value)) -> String {
    let text = include_str!("../../core/data/catalog.json");
    let mut cat: serde_json::Value = serde_json::from_str(text).unwrap();
    let entries = cat["entries"].as_array_mut().unwrap();
    entries.retain(|e| e["id"] == id);
    assert_eq!(entries.len(), 1);
    edit(&mut entries[0]);
    cat.to_string()
}

#[test]
fn bring_verifies() {
    let o = wiman(&["verify", "--entry", "p4q-15-bring"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("120 (expected 120)"), "{out}");
    assert!(out.contains("{1: 1, 2: 25, 3: 20, 4: 30, 5: 24, 6: 20}"), "{out}");
}

#[test]
fn perturbed_coefficient_fails_invariance() {
    let cat = catalog_with("p4q-15-bring", |e| e["model"]["terms"][0]["c"] = serde_json::json!([[0, -2, 1]]));
    let path = scratch("perturbed.json", &cat);
    let o = wiman(&["--catalog", path.to_str().unwrap(), "--json", "verify"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Fail);
    let failed: Vec<_> = r.entries[0].checks.iter().filter(|c| c.status == Status::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].name, "invariance");
}

#[test]
fn wrong_expected_order_fails() {
    let cat = catalog_with("p4q-01", |e| e["expected"]["order"] = serde_json::json!(4));
    let path = scratch("wrong-order.json", &cat);
    let o = wiman(&["--catalog", path.to_str().unwrap(), "verify"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("2 (expected 4)"));
}

#[test]
fn input_errors_exit_2() {
    let broken = scratch("broken.json", "{");
    assert_eq!(wiman(&["--catalog", broken.to_str().unwrap(), "verify"]).status.code(), Some(2));
    assert_eq!(wiman(&["verify", "--entry", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(wiman(&["zeuthen", "--genus", "1"]).status.code(), Some(2));
    assert_eq!(wiman(&["--catalog", "/nonexistent/catalog.json", "verify"]).status.code(), Some(2));
    assert_eq!(wiman(&["fixed", "--entry", "p4q-01", "--generator", "9"]).status.code(), Some(2));
}

#[test]
fn json_is_reproducible_and_round_trips() {
    let args = ["--json", "--seed", "5", "verify", "--entry", "p4q-01", "--entry", "p5-160", "--entry", "p4c-15"];
    let a = wiman(&args);
    let b = wiman(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r.seed, 5);
    let ids: Vec<_> = r.entries.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["p4c-15", "p4q-01", "p5-160"]);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again.as_bytes(), a.stdout.as_slice());
}

#[test]
fn job_count_does_not_change_the_report() {
    let base = ["--json", "verify", "--entry", "p4q-02", "--entry", "p4q-03", "--entry", "p4q-04"];
    let one = wiman(&[&["--jobs", "1"], &base[..]].concat());
    let four = wiman(&[&["--jobs", "4"], &base[..]].concat());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn zeuthen_genus_4_primes() {
    let o = wiman(&["--json", "zeuthen", "--genus", "4", "--primes-only"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut ns: Vec<u64> = v.as_array().unwrap().iter().map(|s| s["n"].as_u64().unwrap()).collect();
    ns.dedup();
    assert_eq!(ns, [2, 3, 5]);
}

#[test]
fn zeuthen_genus_2_has_order_5_on_the_line() {
    let o = wiman(&["--json", "zeuthen", "--genus", "2", "--max-n", "10"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|s| s["n"] == 5 && s["p_prime"] == 0));
}

#[test]
fn chars_example() {
    let o = wiman(&["--json", "chars", "--theta", "0", "--delta", "75"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["gamma_prime"], 24);
    assert_eq!(v["p"], 4);
}

#[test]
fn delta5_of_g192() {
    let o = wiman(&["delta5", "--entry", "p5-192"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("factorization verified"), "{out}");
    assert!(out.contains("polar triangle: pass"), "{out}");
}

#[test]
fn probe_is_labelled_evidence() {
    let o = wiman(&["--json", "probe", "--entry", "p5-64", "--prime", "241", "--ext", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["evidence_only"], true);
    assert_eq!(v["probes"][0]["prime"]["q"], 241);
    assert_eq!(v["probes"][0]["smoothness"]["outcome"], "NoSingularityFound");
}

#[test]
fn group_and_fixed() {
    let o = wiman(&["group", "--entry", "p4q-01"]);
    assert_eq!(o.status.code(), Some(0));
    let o = wiman(&["--json", "fixed", "--entry", "p5-192"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
