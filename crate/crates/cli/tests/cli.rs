use std::process::{Command, Output};

fn pnt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnt"))
        .args(args)
        .env_remove("PNT_DENSITY_TABLE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table1_csv_header_and_row_filter() {
    let o = pnt(&["--format", "csv", "table1", "--rows", "6000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "X,sigma,K,A,B,C,eps0_mantissa,eps0_exp10");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("6000,0.99,4,"), "{}", lines[1]);
    assert!(lines[1].ends_with(",3.35,-22"), "{}", lines[1]);
}

#[test]
fn table1_json_fields() {
    let o = pnt(&["--format", "json", "table1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 15);
    assert!(rows[0]["A_unrounded"].is_number());
    assert!(rows[0]["eps0"]["mantissa"].is_number());
    let last = rows.last().unwrap();
    assert_eq!(last["eps0"]["decimal_exponent"], -47335);
    assert!(rows.iter().all(|r| r["monotone_certified"] == true));
}

#[test]
fn brackets_row() {
    let o = pnt(&["--format", "json", "brackets", "--regime", "nu2", "--log-x0", "1e6"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let b = if v.is_array() { v[0].clone() } else { v };
    for (k, want) in [("b0", 0.4923764), ("b2", 1.0346912), ("b3", 1.1502603)] {
        let got = b[k].as_f64().unwrap();
        assert!((got - want).abs() <= 1e-6, "{k}: {got}");
    }
}

#[test]
fn eval_reports_table_value() {
    let o = pnt(&["eval", "--log-x", "6000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3.35e-22"), "{}", stdout(&o));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pnt(&["eval", "--log-x", "1"]).status.code(), Some(2));
    assert_eq!(pnt(&["table1", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(pnt(&["--format", "csv", "derived"]).status.code(), Some(2));
}

#[test]
fn missing_density_table_exits_1() {
    let o = pnt(&["--density-table", "/nonexistent/table.csv", "table1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = pnt(&["--format", "json", "table1"]);
    let b = pnt(&["--format", "json", "table1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_small_passes() {
    let o = pnt(&["verify-small"]);
    assert!(o.status.success(), "{}", stdout(&o));
}
