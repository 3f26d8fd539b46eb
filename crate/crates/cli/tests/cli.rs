use std::process::{Command, Output};

fn wsd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn restricted_matrix_json() {
    let o = wsd(&["matrix", "L0", "--restrict-v", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["name"], "L0");
    assert_eq!(v["dim"], 6);
    assert_eq!(v["entries"][4][0], "-1/2");
    assert_eq!(v["entries"][5][1], "-1/2");
}

#[test]
fn j_and_h0_on_v() {
    let o = wsd(&["matrix", "J", "--restrict-v", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in 0..6 {
        assert_eq!(v["entries"][k][k], "-2*i");
    }
    let o = wsd(&["matrix", "H0", "--restrict-v", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let diag: Vec<&str> = (0..6).map(|k| v["entries"][k][k].as_str().unwrap()).collect();
    assert_eq!(diag, ["-1", "-1", "0", "0", "1", "1"]);
}

#[test]
fn full_matrix_is_64_square() {
    let o = wsd(&["matrix", "E10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 64);
    assert_eq!(v["entries"].as_array().unwrap().len(), 64);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(wsd(&["matrix", "Nope"]).status.code(), Some(2));
    assert_eq!(wsd(&["table", "nope"]).status.code(), Some(2));
    assert_eq!(wsd(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(wsd(&["closure", "--generators", "L0,Nope"]).status.code(), Some(2));
    assert_eq!(wsd(&[]).status.code(), Some(2));
}

#[test]
fn non_invariant_restriction_fails() {
    let o = wsd(&["matrix", "E10", "--restrict-v"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("leaves V"));
}

#[test]
fn tables() {
    let o = wsd(&["table", "isotypical", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][3]["values"], serde_json::json!(["1", "0", "9", "0", "9", "0", "1"]));
    let o = wsd(&["table", "mdeg"]);
    assert!(stdout(&o).contains("(0,1,1)"));
    let o = wsd(&["table", "weights", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0], serde_json::json!({"label": "L0", "values": ["2", "1", "1"]}));
}

#[test]
fn closure_dimensions() {
    let o = wsd(&["closure", "--generators", "L0,Lam0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    let o = wsd(&["closure", "--generators", "J", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 1);
    let o = wsd(&["closure", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 35);
}

#[test]
fn round_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_wsd"))
        .args(["closure"])
        .env("WSD_MAX_ROUNDS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("still growing"));
    let o = Command::new(env!("CARGO_BIN_EXE_wsd"))
        .args(["closure"])
        .env("WSD_MAX_ROUNDS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn passing_suite_exits_0_and_round_trips() {
    let o = wsd(&["verify", "--suite", "clifford", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = wsd_core::VerificationReport::from_json(&text).unwrap();
    assert!(report.pass);
    assert_eq!(report.to_json() + "\n", text);
    assert!(report.checks.iter().any(|c| c.id == "clifford/EI-plus-IE"));
}

#[test]
fn sl6_suite_reports_dimension_and_kernel() {
    let o = wsd(&["verify", "--suite", "sl6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("closure of L_j, Λ_j, V_j, A_j has dimension 35"));
    assert!(text.contains("kernel of restriction to V is 0"));
}

#[test]
fn serre_suite_exits_1_on_e3_modulus() {
    let o = wsd(&["verify", "--suite", "serre", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let report = wsd_core::VerificationReport::from_json(&stdout(&o)).unwrap();
    let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["serre/e-unit-modulus"]);
}

#[test]
fn verify_all_covers_nine_suites() {
    let o = wsd(&["verify", "--format", "json"]);
    let report = wsd_core::VerificationReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.suite, "all");
    let mut suites: Vec<&str> = report.checks.iter().map(|c| c.id.split('/').next().unwrap()).collect();
    suites.dedup();
    assert_eq!(suites, ["clifford", "so2", "sl6", "quadratic", "cartan", "serre", "mdeg", "spans", "s3"]);
    // The only failing check is the e3 modulus discrepancy, so the exit code is 1.
    assert_eq!(report.summary.failed, 1);
    assert_eq!(o.status.code(), Some(1));
}
