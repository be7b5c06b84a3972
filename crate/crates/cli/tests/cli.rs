//! End-to-end checks of the command-line surface: deterministic reports,
//! exit codes, and the documented output schemas.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sscgamma"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "command failed: {args:?}");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn field_info_is_deterministic() {
    let a = stdout(&["field-info"]);
    let b = stdout(&["field-info"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["field"]["q_e"], 9);
    assert_eq!(v["field"]["generator_f"], 2);
}

#[test]
fn group_structure_orders() {
    for (args, order) in [
        (vec!["group-structure"], 4u64),
        (vec!["group-structure", "--ext", "ramified"], 2),
        (vec!["group-structure", "--p", "5"], 6),
    ] {
        let out = stdout(&args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["quotient"]["order"], order, "{args:?}");
        assert_eq!(v["quotient"]["dual_size"], order);
    }
}

#[test]
fn list_chars_counts() {
    let out = stdout(&["list-chars", "--depth", "0", "--trivial-on-f"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 4);
    let out = stdout(&["list-chars", "--depth", "1", "--trivial-on-f"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 8);
}

#[test]
fn distinguished_triple_verdict() {
    let out = stdout(&["check-distinction", "--v", "0", "--phi", "0", "--zeta", "0"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distinguished"], true);
    assert_eq!(v["gamma_condition_tame"], true);
    assert_eq!(v["central_char_trivial_on_f"], true);
    assert_eq!(v["sigma_self_dual"], true);
    // every tame row evaluates to 1 at s = 1/2
    for row in v["gamma_table"].as_array().unwrap() {
        assert_eq!(row["value_at_half"], 1);
    }
}

#[test]
fn zeta_minus_one_shows_in_the_trivial_row() {
    // zeta = zeta_24^12 = -1: the trivial-twist gamma value at 1/2 is -1
    let out = stdout(&["check-distinction", "--v", "0", "--phi", "0", "--zeta", "12"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distinguished"], false);
    let rows = v["gamma_table"].as_array().unwrap();
    let trivial = &rows[0];
    assert_eq!(trivial["residue_index"], 0);
    // unit is zeta_m^(m/2) = -1, stored canonically as -1 * zeta^0
    assert_eq!(trivial["unit_root_exponent"], 120);
    let terms = trivial["value_at_half"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["root"], 0);
    assert_eq!(terms[0]["num"], "-1");
}

#[test]
fn gamma_table_tsv_header() {
    let out = stdout(&[
        "gamma-table", "--v", "1", "--phi", "0", "--zeta", "0", "--trivial-on-f", "--format", "tsv",
    ]);
    let header = out
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header line");
    assert_eq!(
        header,
        "lambda_id\tresidue_index\tvalue_at_uniformizer\tc_lambda\tunit_root_exponent\talpha\tbeta\tvalue_at_half"
    );
}

#[test]
fn config_errors_exit_two() {
    for args in [
        vec!["field-info", "--p", "4"],
        vec!["field-info", "--p", "2"],
        vec!["field-info", "--precision", "3"],
        vec!["gamma-table", "--v", "0", "--phi", "0", "--zeta", "0", "--depth", "1", "--n", "4"],
        vec!["verify", "--suite", "unknown"],
        vec!["verify-appendix", "--q", "5"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_pontryagin_passes() {
    let out = run(&["verify", "--suite", "pontryagin"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
}
