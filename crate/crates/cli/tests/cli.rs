use std::process::{Command, Output};

fn wallcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn scenario_list_has_the_named_examples() {
    let o = wallcross(&["scenarios"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> =
        json(&o).as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap().to_string()).collect();
    for want in ["pentagon", "seiberg-witten-k2", "macmahon-d0d6", "gl3-identity"] {
        assert!(names.iter().any(|n| n == want), "{want}");
    }
    assert_eq!(names.len(), 13);
}

#[test]
fn unknown_scenario_is_a_usage_error() {
    let o = wallcross(&["run", "no-such-thing"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown scenario"));
}

#[test]
fn missing_flags_are_usage_errors() {
    assert_eq!(wallcross(&["kronecker", "--k", "2"]).status.code(), Some(2));
    assert_eq!(wallcross(&["run", "pentagon", "--params", "[1]"]).status.code(), Some(2));
}

#[test]
fn kronecker_csv_table() {
    let o = wallcross(&["kronecker", "--k", "2", "--deg", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "a,b,k,omega");
    assert!(rows.contains(&"1,1,2,\"-2\""));
    assert!(rows.contains(&"6,5,2,\"1\""));
    // Six entries on each of the two slopes plus the diagonal one.
    assert_eq!(rows.len() - 1, 13);
}

#[test]
fn identities_report() {
    let o = wallcross(&["identities", "--deg", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pentagon"], true);
    assert_eq!(v["conjugation"], true);
}

#[test]
fn hall_example_spec_passes() {
    let o = wallcross(&["hall", "--spec", "data/f2x3.json", "--deg", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["ideal_counts"], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn hall_budget_is_enforced() {
    let o = wallcross(&["hall", "--spec", "data/f2x3.json", "--deg", "3", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coefficient_budget_refuses_large_degrees() {
    let o = wallcross(&["kronecker", "--k", "2", "--deg", "400"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn gln_single_crossing() {
    let o = wallcross(&["gln", "--config", "data/gln3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["a"][0][2], "1");
    assert_eq!(v["crossings"].as_array().unwrap().len(), 1);
    assert_eq!(v["crossings"][0]["t"], "1/2");
}

#[test]
fn transport_pentagon() {
    let o = wallcross(&["transport", "--config", "data/pentagon.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["output"].as_array().unwrap().len(), 3);
    assert_eq!(v["recomposes"], true);
}

#[test]
fn mutation_is_an_involution() {
    let o = wallcross(&["mutate", "--quiver", "kronecker-3", "--vertex", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["involution"], true);
}

#[test]
fn runs_are_byte_identical() {
    let args = ["run", "gl3-identity", "--params", r#"{"loops": 5}"#];
    let a = wallcross(&args);
    let b = wallcross(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scenario_report_to_file() {
    let dir = std::env::temp_dir().join(format!("wallcross-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("macmahon.json");
    let o = wallcross(&["run", "macmahon-d0d6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn thread_cap_must_be_positive() {
    let o = Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .arg("scenarios")
        .env("WALLCROSS_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
