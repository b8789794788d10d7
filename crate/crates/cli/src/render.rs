use std::fmt::Write as _;

use pnt_core::engine::{eps0_decimal, BoundConstants, Regime};
use pnt_core::ExtReal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Format, UsageError};

/// The result of a command in all output formats.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    pub ok: bool,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, UsageError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("reports serialize")
            )),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| UsageError("this command has no CSV output; use --format json or text".into())),
        }
    }
}

#[derive(Serialize)]
pub struct Decimal {
    pub mantissa: f64,
    pub decimal_exponent: i64,
}

pub fn decimal(v: &ExtReal) -> Decimal {
    let (m, e) = eps0_decimal(v);
    Decimal {
        mantissa: m,
        decimal_exponent: e,
    }
}

pub fn sci(v: &ExtReal) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let (m, e) = eps0_decimal(v);
    format!("{m:.2}e{e}")
}

pub fn a_decimals(regime: Regime) -> usize {
    match regime {
        Regime::Vk => 3,
        _ => 2,
    }
}

pub fn regime_name(regime: Regime) -> &'static str {
    match regime {
        Regime::Medium => "medium",
        Regime::Large => "large",
        Regime::Vk => "vk",
    }
}

pub fn row_json(label: &str, b: &BoundConstants) -> Value {
    json!({
        "label": label,
        "X": b.x_label,
        "regime": regime_name(b.regime),
        "log_x0": b.log_x0,
        "sigma": b.sigma,
        "K": b.k,
        "A": b.a,
        "B": b.b,
        "C": b.c,
        "A_unrounded": b.a_unrounded,
        "B_unrounded": b.b_unrounded,
        "C_unrounded": b.c_unrounded,
        "eps0": decimal(&b.eps0),
        "eps0_unrounded": decimal(&b.eps0_unrounded),
        "eps0_log_x": b.eps0_log_x,
        "monotone_certified": b.monotone_certified(),
    })
}

pub const CSV_HEADER: &str = "X,sigma,K,A,B,C,eps0_mantissa,eps0_exp10";

pub fn row_csv(b: &BoundConstants) -> String {
    let (m, e) = eps0_decimal(&b.eps0);
    let k = b.k.map(|k| k.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{:.prec$},{:.3},{:.4},{:.2},{}\n",
        b.x_label,
        b.sigma,
        k,
        b.a,
        b.b,
        b.c,
        m,
        e,
        prec = a_decimals(b.regime)
    )
}

pub fn rows_text(rows: &[(String, BoundConstants)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>8} {:>10} {:>3} {:>7} {:>6} {:>7} {:>12}",
        "X", "sigma", "K", "A", "B", "C", "eps0"
    );
    for (label, b) in rows {
        let k = b.k.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>8} {:>10.7} {:>3} {:>7.prec$} {:>6.3} {:>7.4} {:>12}",
            label,
            b.sigma,
            k,
            b.a,
            b.b,
            b.c,
            sci(&b.eps0),
            prec = a_decimals(b.regime)
        );
    }
    s
}

pub fn rows_report(rows: &[(String, BoundConstants)], ok: bool, diagnostics: Vec<String>) -> Report {
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for (_, b) in rows {
        csv.push_str(&row_csv(b));
    }
    Report {
        json: Value::Array(rows.iter().map(|(l, b)| row_json(l, b)).collect()),
        text: rows_text(rows),
        csv: Some(csv),
        ok,
        diagnostics,
    }
}
