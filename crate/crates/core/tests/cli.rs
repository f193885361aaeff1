use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn parabolic(args: &[&str], env_cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_parabolic"));
    cmd.args(args).env_remove("PARABOLIC_CACHE_DIR");
    if let Some(dir) = env_cache {
        cmd.env("PARABOLIC_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn riley_five_three_coefficients() {
    let out = parabolic(&["riley", "--p", "5", "--q", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let coeffs: Vec<&str> = v["riley"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1/1", "0/1", "-1/1", "0/1", "1/1"]);
    assert_eq!(v["eps"], serde_json::json!([1, -1, -1, 1]));
}

#[test]
fn signature_three_one_genus_four() {
    let out = parabolic(&["signature", "--p", "3", "--q", "1", "--g", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["sigma"], serde_json::json!(16));
}

#[test]
fn colored_signature_trivial_color() {
    let plain = json_of(&parabolic(&["signature", "--p", "7", "--q", "3", "--g", "3"], None));
    let colored = json_of(&parabolic(&["signature", "--p", "7", "--q", "3", "--g", "3", "--colors", "0"], None));
    assert_eq!(plain["sigma"], colored["sigma"]);
    assert_eq!(colored["colors"], serde_json::json!([0]));
}

#[test]
fn invsum_second_sum_vanishes() {
    let out = parabolic(&["invsum", "--pmax", "25"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["p", "q", "sum1", "sum2", "expected1"]);
    let mut n = 0;
    for r in rows.records() {
        let r = r.unwrap();
        assert_eq!(&r[3], "0/1");
        assert_eq!(r[2], r[4]);
        n += 1;
    }
    assert!(n > 50);
}

#[test]
fn torsion_reports_match() {
    for rep in ["1", "2"] {
        let out = parabolic(&["torsion", "--p", "9", "--q", "5", "--rep", rep], None);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json_of(&out)["match"], serde_json::json!(true));
    }
}

#[test]
fn invalid_input_exits_two_with_record() {
    for args in [
        vec!["riley", "--p", "9", "--q", "3"],
        vec!["riley", "--p", "-5", "--q", "3"],
        vec!["signature", "--p", "5", "--q", "3", "--g", "2", "--colors", "7"],
        vec!["asymptotic", "--a", "3", "--b", "2", "--c", "4", "--d", "4"],
        vec!["torsion", "--p", "5", "--q", "3", "--rep", "3"],
        vec!["frobenius", "--p", "5", "--q", "3", "--format", "csv"],
        vec!["signature", "--p", "5", "--q", "3", "--g", "2", "--threads", "0"],
    ] {
        let out = parabolic(&args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = parabolic(&["riley", "--p", "9", "--q", "3"], None);
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["status"], "invalid_input");
}

#[test]
fn failing_suite_exits_one_with_record() {
    let out = parabolic(&["verify", "--suite", "asymptotics"], None);
    assert_eq!(out.status.code(), Some(1));
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["status"], "failure");
    assert_eq!(record["suite"], "limit_table");
    let report = json_of(&out);
    assert_eq!(report["asymptotics"]["limit_traces"], serde_json::json!(["1/1", "1/1", "1345/1", "1793/1", "2241/1"]));
}

#[test]
fn passing_suites_exit_zero() {
    for suite in ["identities", "torsion", "sums"] {
        let out = parabolic(&["verify", "--suite", suite, "--pmax", "25"], None);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json_of(&out)["ok"], serde_json::json!(true));
    }
}

#[test]
fn condition_h_sweep_csv() {
    let out = parabolic(&["conditionH-sweep", "--dmax", "12"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("b,d,a,c,ok\n0,1,1,2,true\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn asymptotic_json_shape() {
    let out = parabolic(&["asymptotic", "--a", "3", "--b", "2", "--c", "4", "--d", "3", "--nmax", "21"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["conditionH"], serde_json::json!(true));
    assert_eq!(v["omegaW"], serde_json::json!(["65/1", "80/1", "28/1"]));
    assert_eq!(v["limit_traces"]["4"], "1345/1");
    let rows = v["ratio_rows"].as_array().unwrap();
    assert_eq!(rows.iter().map(|r| r["n"].as_i64().unwrap()).collect::<Vec<_>>(), [11, 21]);
    assert_eq!(rows[0]["limit"], "1/27");
}

#[test]
fn qlemma_report_all_clauses() {
    let out = parabolic(&["qlemma", "--a", "1", "--b", "0", "--c", "2", "--d", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["clauses"].as_array().unwrap().len(), 7);
    assert_eq!(v["specialization"].as_array().unwrap().len(), 3);
}

#[test]
fn output_is_independent_of_thread_count() {
    let jobs: [&[&str]; 3] = [
        &["invsum", "--pmax", "21"],
        &["asymptotic", "--a", "3", "--b", "2", "--c", "4", "--d", "3", "--n-list", "11,13,15", "--format", "csv"],
        &["verify", "--suite", "reciprocity", "--pmax", "21"],
    ];
    for args in jobs {
        let one = parabolic(&[args, &["--threads", "1"]].concat(), None);
        let four = parabolic(&[args, &["--threads", "4"]].concat(), None);
        let again = parabolic(&[args, &["--threads", "4"]].concat(), None);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
        assert_eq!(one.status.code(), four.status.code());
    }
}

#[test]
fn cache_hits_match_cold_runs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = parabolic(&["frobenius", "--p", "13", "--q", "5"], None);
    let fill = parabolic(&["frobenius", "--p", "13", "--q", "5", "--cache-dir", d], None);
    assert!(dir.path().join("13_5.json").exists());
    let hit = parabolic(&["frobenius", "--p", "13", "--q", "5", "--cache-dir", d], None);
    assert_eq!(cold.stdout, fill.stdout);
    assert_eq!(cold.stdout, hit.stdout);

    let env_dir = tempfile::tempdir().unwrap();
    let sig = ["signature", "--p", "13", "--q", "5", "--g", "3"];
    let cold = parabolic(&sig, None);
    let fill = parabolic(&sig, Some(env_dir.path()));
    let hit = parabolic(&sig, Some(env_dir.path()));
    assert!(env_dir.path().join("13_5.json").exists());
    assert_eq!(cold.stdout, fill.stdout);
    assert_eq!(cold.stdout, hit.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("riley.json");
    let out = parabolic(&["riley", "--p", "7", "--q", "3", "--output", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["p"], serde_json::json!(7));
}
