use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn orbitflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitflag")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name].iter().collect();
    p.to_str().unwrap().to_string()
}

#[test]
fn bounds_of_the_seven_step_flag() {
    let out = orbitflag(&["bounds", "--bfv", "2,4,1,12,3,3,3", "--type", "2,4,5,12,15,18,21", "--n", "24"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["lower_bound"], 2);
    assert_eq!(v["upper_bound"], 22);
    assert_eq!(v["upper_certificate"], serde_json::json!([4, 5, 6, 7]));
    assert_eq!(v["seed"], 0);
}

#[test]
fn bounds_csv_joins_vectors() {
    let out = orbitflag(&["bounds", "--bfv", "2,2,8", "--type", "2,4,8", "--n", "16", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header = reader.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let cell = |name: &str| rows[0].get(header.iter().position(|h| h == name).unwrap()).unwrap().to_string();
    assert_eq!(cell("best_friend_vector"), "2;2;8");
    assert_eq!(cell("type"), "2;4;8");
    assert_eq!(cell("lower_bound"), "8");
}

#[test]
fn construct_exit_codes() {
    let out = orbitflag(&["construct", "--bfv", "2,3", "--n", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["verdict"], "not_realizable");
    assert!(v["reason"].as_str().unwrap().contains("lcm equals n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lcm equals n"));

    let out = orbitflag(&["construct", "--bfv", "2,4,8,1,1", "--n", "16"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["verdict"], "unknown");
}

#[test]
fn construct_writes_a_flag_that_analyzes_back() {
    let dir = tempfile::tempdir().unwrap();
    let flag_path = dir.path().join("flag.json");
    let flag_path = flag_path.to_str().unwrap();
    let out = orbitflag(&["construct", "--bfv", "3,2,1", "--n", "18", "--flag-out", flag_path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["plan"]["k_i"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["plan"]["l"], 6);
    assert_eq!(v["plan"]["s"], 3);
    assert_eq!(v["flag"]["q"], 2);

    let budget = dir.path().join("budget.toml");
    std::fs::write(&budget, "scan_cap = 1000\n").unwrap();
    let out = orbitflag(&["analyze", "--in", flag_path, "--budget", budget.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let a = json(&out);
    assert_eq!(a["best_friend_vector"], serde_json::json!([3, 2, 1]));
    assert_eq!(a["cardinality"], (1u64 << 18) - 1);
    assert_eq!(a["scan"]["performed"], false);
    assert_eq!(a["min_distance"], Value::Null);
    assert!(String::from_utf8_lossy(&out.stderr).contains("scan cap"));
}

#[test]
fn analyze_fixture_and_errors() {
    let out = orbitflag(&["analyze", "--in", &fixture("flag_n16.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["best_friend_vector"], serde_json::json!([2, 4, 8, 1, 1]));
    assert_eq!(v["field"]["n"], 16);
    let d = v["min_distance"].as_u64().unwrap();
    assert!(d >= v["bounds"]["lower_bound"].as_u64().unwrap());
    assert!(d <= v["bounds"]["upper_bound"].as_u64().unwrap());

    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    };
    let empty = write("empty.json", r#"{"q":2,"n":4,"subspaces":[]}"#);
    assert_eq!(orbitflag(&["analyze", "--in", &empty]).status.code(), Some(2));
    let unnested = write(
        "unnested.json",
        r#"{"q":2,"n":4,"subspaces":[{"basis":["g^0"]},{"basis":["g^1","g^2"]}]}"#,
    );
    assert_eq!(orbitflag(&["analyze", "--in", &unnested]).status.code(), Some(2));
    let garbage = write("garbage.json", "not json");
    assert_eq!(orbitflag(&["analyze", "--in", &garbage]).status.code(), Some(2));
    assert_eq!(orbitflag(&["analyze", "--in", &fixture("flag_n16.json"), "--n", "12"]).status.code(), Some(2));
}

#[test]
fn dvec_reports() {
    let out = orbitflag(&["dvec", "--type", "4,5,12,15", "--d", "2,0,14,18", "--n", "24"]);
    assert_eq!(json(&out)["feasible"], true);

    let out = orbitflag(&["dvec", "--type", "2,3", "--d", "2,6", "--n", "6", "--search"]);
    let v = json(&out);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["search"]["mode"], "exhaustive");
    assert_eq!(v["search"]["found"], false);

    let out = orbitflag(&["dvec", "--type", "2,4", "--d", "4,0", "--n", "6", "--search"]);
    let v = json(&out);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["search"]["found"], true);
}

#[test]
fn realizable_with_oracle() {
    let out = orbitflag(&["realizable", "--bfv", "2,2", "--n", "6", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["oracle"]["realizable"], true);
    assert_eq!(v["oracle"]["agrees"], true);

    let out = orbitflag(&["realizable", "--bfv", "2,2", "--n", "4", "--oracle"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["oracle"]["realizable"], false);
}

#[test]
fn verify_metric_passes_and_is_byte_stable() {
    let args = ["verify", "--suite", "metric", "--q", "2", "--n", "6", "--seed", "11"];
    let a = orbitflag(&args);
    let b = orbitflag(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 11);
    let other = orbitflag(&["verify", "--suite", "metric", "--q", "2", "--n", "6", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["construct", "--bfv", "2,4,8,1,1", "--n", "24", "--format", "csv"],
        vec!["analyze", "--in", &fixture("flag_n12.json")],
        vec!["dvec", "--type", "1,2", "--d", "2,2", "--n", "5", "--search", "--seed", "3"],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        assert_eq!(orbitflag(&args).stdout, orbitflag(&args).stdout, "{args:?}");
    }
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(orbitflag(&["bounds", "--bfv", "2,x", "--type", "2", "--n", "4"]).status.code(), Some(2));
    assert_eq!(orbitflag(&["bounds", "--bfv", "2", "--type", "2"]).status.code(), Some(2));
    assert_eq!(orbitflag(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(orbitflag(&["field-info", "--q", "6", "--n", "2"]).status.code(), Some(2));
    assert_eq!(orbitflag(&["field-info", "--n", "4", "--modulus", "1,0,0,0,1"]).status.code(), Some(2));
}

#[test]
fn field_info_lists_subfields() {
    let out = orbitflag(&["field-info", "--q", "2", "--n", "4"]);
    let v = json(&out);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 0, 1, 1]));
    let degrees: Vec<u64> = v["subfields"].as_array().unwrap().iter().map(|s| s["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [1, 2, 4]);
    assert_eq!(v["subfields"][1]["generator_exponent"], 5);
}
