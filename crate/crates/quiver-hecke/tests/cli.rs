//! The `qhecke` binary end to end.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use quiver_hecke::cli_io::{EXIT_BUDGET, EXIT_CONFIG, EXIT_IO, EXIT_VERIFY_FAILED};

fn qhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhecke")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qhecke-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn basis_has_one_record_set_per_pair_of_tableaux() {
    let v = json(&qhecke(&["basis", "--e", "4", "--sigma", "0", "--h", "2", "--n", "4"]));
    // (2,2), (2,1,1), (1⁴): 2² + 3² + 1².
    assert_eq!(v["elements"].as_array().unwrap().len(), 14);
    assert_eq!(v["dim"], 14);
    let sizes: Vec<u64> = v["cells"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![2, 3, 1]);
}

#[test]
fn render_sample_element() {
    let out = scratch("sample.svg");
    let o = qhecke(&["render", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("version=\"1.1\""));
    assert_eq!(svg.matches("class=\"strand\"").count(), 13);
    assert_eq!(svg.matches("class=\"dot\"").count(), 3);
    let again = qhecke(&["render"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), svg);
}

#[test]
fn render_walk() {
    let o = qhecke(&["render", "--e", "5", "--h", "3", "--path", "1,2,3,1,2,3"]);
    let svg = String::from_utf8(o.stdout).unwrap();
    assert!(svg.contains("class=\"walk\""));
}

#[test]
fn corrupted_golden_fails_verify() {
    let gold = scratch("gold.json");
    let o = qhecke(&["basis", "--n", "3", "--out", gold.to_str().unwrap()]);
    assert!(o.status.success());
    let ok = qhecke(&["verify", "--n", "3", "--golden", gold.to_str().unwrap()]);
    assert_eq!(json(&ok)["golden"]["matches"], true);
    let text = fs::read_to_string(&gold).unwrap().replacen("\"degree\": 0", "\"degree\": 7", 1);
    let bad = scratch("bad.json");
    fs::write(&bad, text).unwrap();
    let o = qhecke(&["verify", "--n", "3", "--golden", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_VERIFY_FAILED));
}

#[test]
fn failures_have_distinct_codes() {
    assert_eq!(qhecke(&["basis", "--e", "2"]).status.code(), Some(EXIT_CONFIG));
    assert_eq!(qhecke(&["basis", "--n", "4", "--budget", "0"]).status.code(), Some(EXIT_BUDGET));
    assert_eq!(qhecke(&["basis", "--config", "/nonexistent/job.kv"]).status.code(), Some(EXIT_IO));
}

#[test]
fn config_file_with_overrides() {
    let cfg = scratch("job.kv");
    fs::write(&cfg, "# gram job\ne = 5\nh = 3\nn = 3\nmodulus = 7\n").unwrap();
    let v = json(&qhecke(&["gram", "--config", cfg.to_str().unwrap(), "--n", "4"]));
    assert_eq!(v["params"]["n"], 4);
    assert_eq!(v["field"], "F_7");
    assert!(v["cells"].as_array().unwrap().iter().all(|c| c["symmetric"] == true));
}
