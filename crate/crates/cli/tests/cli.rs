use std::process::{Command, Output};

use serde_json::Value;

fn equitau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equitau"))
        .args(args)
        .env_remove("EQUITAU_TRUNC")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = equitau(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn chi_on_p1_degree_one() {
    let o = equitau(&["chi", "--weights", "1,-1", "--twist", "1", "--trunc", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("series: 2 + t^2 + 1/12 t^4 + 1/360 t^6 + 1/20160 t^8"),
        "{text}"
    );
    assert!(text.contains("oracle: u + u^-1"));
    assert!(text.contains("agree: true"));
}

#[test]
fn chi_vanishes_for_minus_one() {
    let v = json(&["chi", "--weights", "1,-1", "--twist", "-1"]);
    assert_eq!(v["results"]["series_text"], "0");
    assert_eq!(v["results"]["agree"], true);
    assert_eq!(v["truncation"], 16);
}

#[test]
fn chi_trivial_action_counts_sections() {
    let v = json(&["chi", "--weights", "0,0,0", "--twist", "2"]);
    let series = v["results"]["series"].as_array().unwrap();
    assert_eq!(series[0]["degree"], 0);
    assert_eq!(series[0]["monomials"][0]["coeff"], "6");
}

#[test]
fn weyl_rows() {
    let v = json(&["weyl", "--nmax", "10", "--trunc", "16"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["pass"] == true));

    let v = json(&["weyl", "--nmax", "0"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    // n = -1 and n = 0; the n = 0 value is 1
    assert_eq!(rows.last().unwrap()["hrr_text"], "1");

    let v = json(&["weyl", "--nmax", "3", "--trunc", "4"]);
    let row3 = &v["results"]["rows"][4];
    assert_eq!(row3["n"], 3);
    // e^{3t} + e^t + e^{-t} + e^{-3t} = 4 + 10 t^2 + 41/6 t^4 + ...
    assert_eq!(row3["hrr_text"], "4 + 10 t^2 + 41/6 t^4");
}

#[test]
fn sectors_mu6() {
    let o = equitau(&["sectors", "--order", "6", "--weights", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("total: 12"));
    assert!(text.contains("check total = 2d: pass"));
    let v = json(&["sectors", "--order", "6", "--weights", "0,1"]);
    let dims: Vec<u64> = v["results"]["sectors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![2, 2, 4, 4]);
    assert_eq!(v["results"]["vistoli_kernel"], 10);
}

#[test]
fn support_of_one_third() {
    let o = equitau(&["support", "--order", "6", "--point", "1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H = Z/3"));
}

#[test]
fn segal_certificates() {
    let v = json(&["segal", "--n", "2", "--degree", "2"]);
    assert_eq!(v["results"]["status"], "found");
    assert_eq!(v["results"]["cofactors"].as_array().unwrap().len(), 2);
    assert_eq!(v["checks"][0]["pass"], true);

    let v = json(&["segal", "--n", "2", "--degree", "1"]);
    assert_eq!(v["results"]["status"], "not_found");
}

#[test]
fn pushforward_checks() {
    let v = json(&["pushforward", "--weights", "1,-1", "--poly", "1,2,3,4"]);
    assert_eq!(v["results"]["pushforward_text"], "2 + 4 t^2");
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn flag_errors_exit_two() {
    assert_eq!(equitau(&["chi", "--weights", "1,x"]).status.code(), Some(2));
    assert_eq!(equitau(&["chi"]).status.code(), Some(2));
    assert_eq!(
        equitau(&["chi", "--weights", "1,2,3", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        equitau(&["sectors", "--orders", "2,3", "--weights", "0,0,1,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        equitau(&["chi", "--weights", "1,-1", "--format", "yaml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn env_truncation() {
    let o = Command::new(env!("CARGO_BIN_EXE_equitau"))
        .args([
            "chi",
            "--weights",
            "1,-1",
            "--twist",
            "1",
            "--format",
            "json",
        ])
        .env("EQUITAU_TRUNC", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["truncation"], 2);
    assert_eq!(v["results"]["series_text"], "2 + t^2");
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for args in [
        vec![
            "chi",
            "--weights",
            "1,-1",
            "--twist",
            "2",
            "--format",
            "json",
        ],
        vec![
            "sectors",
            "--orders",
            "2,2",
            "--weights",
            "0,0,1,0,0,1",
            "--format",
            "json",
        ],
        vec!["segal", "--n", "2", "--degree", "2", "--format", "json"],
    ] {
        let first = stdout(&equitau(&args));
        let parsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(
            format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap()),
            first
        );
        assert_eq!(stdout(&equitau(&args)), first);
        let keys: Vec<&String> = parsed.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["checks", "command", "inputs", "results", "truncation"]
        );
    }
}

#[test]
fn selftest_passes() {
    let o = equitau(&["selftest"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS [")).count(), 8);
}
