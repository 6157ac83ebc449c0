use std::process::{Command, Output};

use serde_json::Value;

fn fmk(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fmk"));
    cmd.args(args).env_remove("FMK_FIELD");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn strip_timings(mut v: Value) -> Value {
    for r in v["results"].as_array_mut().expect("results") {
        r.as_object_mut().expect("object").remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_all_passes() {
    let out = fmk(&["verify", "all", "--samples", "40"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.starts_with("PASS lemma_phi_unique")));
}

#[test]
fn json_report_schema() {
    let out = fmk(&["verify", "lemma_phi_unique", "phi_squared_zero", "--json"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["field"], "q");
    assert_eq!(v["seed"], 0);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0]["name"], "lemma_phi_unique");
    assert_eq!(results[0]["status"], "pass");
    assert_eq!(results[0]["details"]["dim"], 1);
    assert!(results[0]["elapsed_ms"].is_number());
    assert!(!results[1]["description"].as_str().unwrap().is_empty());
}

#[test]
fn mutation_fails_with_block_diff() {
    let out = fmk(&["verify", "curvature_T_s", "--mutate", "curvature_T_s", "--json"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let r = &v["results"][0];
    assert_eq!(r["status"], "fail");
    assert_eq!(r["mutated"], true);
    let blocks = r["details"]["failures"][0]["blocks"].as_array().unwrap();
    assert!(!blocks.is_empty());
}

#[test]
fn every_negative_control_fails() {
    let list = fmk(&["verify", "--list"], &[]);
    let names: Vec<String> =
        String::from_utf8_lossy(&list.stdout).lines().filter_map(|l| l.split_whitespace().next().map(String::from)).collect();
    assert!(names.len() >= 16);
    for name in names {
        let out = fmk(&["verify", &name, "--mutate", &name, "--samples", "30", "--json"], &[]);
        assert_eq!(out.status.code(), Some(1), "{name}");
        let v = json(&out);
        assert!(!v["results"][0]["details"]["failures"].as_array().unwrap().is_empty(), "{name}");
    }
}

#[test]
fn deterministic_given_seed_and_field() {
    let args = ["verify", "superexchange_sampled", "composition_associativity", "--seed", "7", "--samples", "50", "--json"];
    let a = strip_timings(json(&fmk(&args, &[])));
    let b = strip_timings(json(&fmk(&args, &[])));
    assert_eq!(a, b);
}

#[test]
fn field_from_environment() {
    let out = fmk(&["verify", "phi_closed", "--json"], &[("FMK_FIELD", "p=5")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["field"], "p=5");
    let out = fmk(&["--field", "q", "verify", "phi_closed", "--json"], &[("FMK_FIELD", "p=5")]);
    assert_eq!(json(&out)["field"], "q");
    let out = fmk(&["verify", "phi_closed"], &[("FMK_FIELD", "p=2")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_check_is_an_error() {
    let out = fmk(&["verify", "no_such_check"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_check"));
}

#[test]
fn dims_reports_the_phi_line() {
    let out = fmk(&["dims", "--source", "T_s", "--target", "T_s", "--degree", "-2,2,1", "--cohomology", "--shape"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dim_candidates"], 7);
    assert_eq!(v["dim_closed"], 1);
    assert_eq!(v["dim_cohomology"], 1);
    assert!(v["shape"].get("3,1").is_none());
    assert_eq!(v["shape"]["1,3"], 2);
    let out = fmk(&["dims", "--source", "T_s", "--target", "T_s", "--degree", "-3,2,1"], &[]);
    let v = json(&out);
    assert_eq!(v["dim_candidates"], 0);
    assert!(v.get("dim_cohomology").is_none());
}

#[test]
fn eval_prints_canonical_forms() {
    let out = fmk(&["eval", "xi_s * xi_s"], &[]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");
    let out = fmk(&["eval", "hd * u"], &[]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(-xi2 + xi1)*one");
    let out = fmk(&["eval", "x1 +"], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 4"));
    let out = fmk(&["eval", "--json", "nu1"], &[]);
    assert!(json(&out)["algebra"].is_array());
}
