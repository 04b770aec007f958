//! End-to-end checks of the binary: row formats, format parity, exit
//! codes, and file output.

use std::process::{Command, Output};

fn ordlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ordlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

#[test]
fn order_row_is_exact() {
    assert_eq!(
        stdout(&["order", "--p", "7", "--u", "2"]),
        "p,u,ord,index\n7,2,3,2\n"
    );
    assert_eq!(
        stdout(&["order", "--p", "7", "--u", "1/2"]),
        "p,u,ord,index\n7,1/2,3,2\n"
    );
}

#[test]
fn primitive_root_rows() {
    assert_eq!(stdout(&["primitive-root", "--p", "7"]), "p,tau\n7,3\n");
    assert_eq!(stdout(&["primitive-root", "--p", "5"]), "p,tau\n5,2\n");
    assert_eq!(stdout(&["primitive-root", "--p", "11"]), "p,tau\n11,2\n");
}

#[test]
fn admissible_reports_witness() {
    let out = stdout(&["admissible", "--u", "3", "--u", "5", "--u", "15"]);
    assert_eq!(
        out,
        "bases,admissible,witness,witness_product\n3;5;15,0,1;1;-1,+1\n"
    );
    let out = stdout(&["admissible", "--u", "4", "--u", "8"]);
    assert!(out.contains("4;8,0,3;-2,+1"));
    let out = stdout(&["admissible", "--u", "2", "--u", "3"]);
    assert!(out.contains("2;3,1,,"));
    let out = stdout(&["admissible", "--u", "2", "--u", "-2"]);
    assert!(out.ends_with(",-1\n"));
}

#[test]
fn indicator_rows_match_direct() {
    let out = stdout(&["indicator", "--p", "7", "--u", "3", "--d", "1"]);
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[3], "1"); // direct
    assert_eq!(cells[5], "1"); // exp rounded
    assert_eq!(cells[8], "1"); // char rounded
    let out = stdout(&["indicator", "--p", "7", "--u", "2", "--d", "2"]);
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[3], "1");
    assert_eq!(cells[8], ""); // char route is d = 1 only
}

#[test]
fn expsum_kinds_run() {
    for args in [
        vec!["expsum", "kernel", "--p", "7", "--t", "1"],
        vec![
            "expsum",
            "coprime-kernel",
            "--p",
            "7",
            "--t",
            "2",
            "--d",
            "3",
        ],
        vec!["expsum", "gauss", "--p", "7"],
        vec!["expsum", "power-resolvent", "--p", "7", "--d", "2"],
        vec!["expsum", "weil", "--p", "11", "--d", "2", "--a", "1"],
        vec![
            "expsum",
            "incomplete",
            "--p",
            "7",
            "--d",
            "2",
            "--a",
            "1",
            "--x",
            "3",
        ],
        vec![
            "expsum",
            "coprime-power",
            "--p",
            "7",
            "--d",
            "1",
            "--a",
            "1",
        ],
        vec![
            "expsum",
            "coprime-power-diff",
            "--p",
            "7",
            "--d",
            "1",
            "--a",
            "3",
        ],
        vec![
            "expsum", "periodic", "--m", "15", "--w", "2", "--P", "3", "--a", "1",
        ],
        vec![
            "expsum",
            "coprime-periodic",
            "--m",
            "15",
            "--w",
            "2",
            "--P",
            "3",
            "--a",
            "1",
        ],
        vec!["expsum", "double", "--p", "7", "--u", "2", "--d", "2"],
    ] {
        let out = stdout(&args);
        assert!(
            out.starts_with("kind,params,re,im,magnitude,bound,ratio,term_count\n"),
            "{args:?}"
        );
        assert_eq!(out.lines().count(), 2, "{args:?}");
    }
}

#[test]
fn expsum_q_override() {
    let with_default = stdout(&["expsum", "kernel", "--p", "7", "--t", "1"]);
    assert!(with_default.contains("p=7;q=11;t=1"));
    let with_q = stdout(&["expsum", "kernel", "--p", "7", "--q", "13", "--t", "1"]);
    assert!(with_q.contains("p=7;q=13;t=1"));
    // q must be a prime above p.
    let out = ordlab(&["expsum", "kernel", "--p", "7", "--q", "9", "--t", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn census_csv_and_json_agree() {
    let csv = stdout(&["census", "--x", "100", "--spec", "3:1", "--spec", "2:2"]);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        [
            "x",
            "two_x",
            "k",
            "specs",
            "primes_total",
            "R",
            "skipped",
            "M",
            "e3_abs",
            "lower_bound",
            "ratio"
        ]
    );
    let cells: Vec<&str> = lines.next().unwrap().split(',').collect();
    let json_text = stdout(&[
        "census", "--x", "100", "--spec", "3:1", "--spec", "2:2", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&json_text).unwrap();
    let obj = &json[0];
    for (i, name) in header.iter().enumerate() {
        let field = &obj[*name];
        if let Some(n) = field.as_u64() {
            assert_eq!(n.to_string(), cells[i], "field {name}");
        } else if let Some(f) = field.as_f64() {
            assert_eq!(f, cells[i].parse::<f64>().unwrap(), "field {name}");
        } else if let Some(s) = field.as_str() {
            assert_eq!(s, cells[i], "field {name}");
        }
    }
    // R = 2 at x = 100 for these specs (oracle-checked in the suite).
    assert_eq!(cells[5], "2");
}

#[test]
fn stats_schema() {
    let out = stdout(&["stats", "--p", "7"]);
    assert!(out.starts_with("p,alpha2_num,alpha2_den,alpha2,phi_ratio,trials,hits,estimate,seed\n"));
    assert!(out.contains("7,5,18,"));
    let sampled = stdout(&["stats", "--p", "7", "--trials", "100", "--seed", "17"]);
    assert!(sampled.trim_end().ends_with(",17"));
    // Same seed, same bytes.
    assert_eq!(
        sampled,
        stdout(&["stats", "--p", "7", "--trials", "100", "--seed", "17"])
    );
}

#[test]
fn mainterm_audit_avg_order_run() {
    let out = stdout(&["mainterm", "--x", "10", "--d", "1", "--e", "1"]);
    assert!(out.contains("10,1,1,1,5.4808224"));
    let out = stdout(&["audit", "--x", "100", "--spec", "3:1", "--spec", "2:2"]);
    assert!(out.lines().next().unwrap().contains("identity_exact"));
    let out = stdout(&["avg-order", "--x", "10", "--u", "2"]);
    assert!(out.contains("10,2,1.50000000000e0"));
    let out = stdout(&[
        "totient-avg",
        "--x",
        "1000",
        "--q",
        "4",
        "--a",
        "1",
        "--d",
        "1",
        "--d",
        "2",
    ]);
    assert!(out.starts_with("x,q,a,indices,primes_in_progression,used,S,A_hat\n"));
}

#[test]
fn usage_errors_exit_two() {
    // Non-prime p.
    assert_eq!(
        ordlab(&["order", "--p", "8", "--u", "2"]).status.code(),
        Some(2)
    );
    // Base not invertible.
    assert_eq!(
        ordlab(&["order", "--p", "7", "--u", "7"]).status.code(),
        Some(2)
    );
    // Unit base.
    assert_eq!(
        ordlab(&["order", "--p", "7", "--u", "1"]).status.code(),
        Some(2)
    );
    // Unknown expsum kind.
    assert_eq!(
        ordlab(&["expsum", "nonsense", "--p", "7"]).status.code(),
        Some(2)
    );
    // Missing required flag entirely (clap-level).
    assert_eq!(ordlab(&["order", "--p", "7"]).status.code(), Some(2));
    // Inadmissible census tuple.
    let out = ordlab(&[
        "census", "--x", "100", "--spec", "3:1", "--spec", "5:1", "--spec", "15:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("admissible"), "stderr: {err}");
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ordlab-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("order.csv");
    let out = ordlab(&[
        "order",
        "--p",
        "7",
        "--u",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "p,u,ord,index\n7,2,3,2\n"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn env_var_sets_workers() {
    // Census output must be identical either way; this only checks the
    // env path is accepted.
    let out = Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(["census", "--x", "1000", "--spec", "3:1", "--spec", "2:2"])
        .env("ORDLAB_THREADS", "4")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        stdout(&["census", "--x", "1000", "--spec", "3:1", "--spec", "2:2"])
    );
}
