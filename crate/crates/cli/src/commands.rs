use std::fmt::Write as _;

use anyhow::{Context, Result};
use pnt_core::derived::{self, pi_constants_classical, pi_constants_vk, theta_constants};
use pnt_core::engine::{
    self, optimize, piecewise_coverage, regime_compare, table1_bound, table1_optimized, vk_bound,
    BoundConstants, Pipeline, Regime, Table1Row, MEDIUM_MAX_LOG_X, TABLE1,
    VK_LOG_X0, VK_SIGMA,
};
use pnt_core::primes::{build_sieve, Quantity};
use pnt_core::regimes::{bracket_nu2, bracket_nu3, NU3_MIN_LOG_X0, TABLE2};
use pnt_core::zdensity::DensityTable;
use pnt_core::zfr::envelope_crossovers;
use pnt_core::ExtReal;
use serde_json::json;

use crate::render::{decimal, regime_name, rows_report, sci, Report};
use crate::{Cli, Command, QuantityArg, RegimeArg, RegionArg, UsageError};

/// Smallest `log x` accepted by `eval`; below it the bounds rest on direct computation.
const EVAL_MIN_LOG_X: f64 = 58.0;
/// Largest `log x` for which `eval` also prints the absolute bound.
const EVAL_MAX_ABSOLUTE_LOG_X: f64 = 700.0;
/// Sieve range needed by the small-x checks.
const SMALL_X_MAX: f64 = 2657.0;

pub fn run(cli: &Cli) -> Result<Report> {
    let table = match &cli.density_table {
        Some(p) => DensityTable::from_path(p)
            .with_context(|| format!("loading density table {}", p.display()))?,
        None => DensityTable::embedded(),
    };
    match &cli.command {
        Command::Table1 { optimize, rows } => table1(&table, *optimize, rows.as_deref()),
        Command::Bound {
            regime,
            log_x0,
            sigma,
            k,
            optimize,
        } => bound(&table, *regime, *log_x0, *sigma, *k, *optimize),
        Command::Brackets { regime, log_x0 } => brackets(*regime, *log_x0),
        Command::Crossovers => crossovers(&table),
        Command::VerifySmall { sieve_limit } => verify_small(&table, *sieve_limit),
        Command::Eval { log_x, quantity } => eval(&table, *log_x, *quantity),
        Command::Derived => derived_constants(&table),
        Command::Vk => vk(&table),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn find_row(spec: &str) -> Result<&'static Table1Row> {
    let norm: String = spec.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if matches!(norm.as_str(), "log2" | "ln2") {
        return Ok(&TABLE1[0]);
    }
    let v: f64 = norm
        .parse()
        .map_err(|_| usage(format!("unknown row `{spec}`")))?;
    TABLE1
        .iter()
        .find(|r| (r.x - v).abs() <= 1e-9 * r.x)
        .ok_or_else(|| usage(format!("no table row with X = {spec}")))
}

fn table1(table: &DensityTable, optimize: bool, rows: Option<&[String]>) -> Result<Report> {
    let selected: Vec<&Table1Row> = match rows {
        Some(list) => list.iter().map(|s| find_row(s)).collect::<Result<_>>()?,
        None => TABLE1.iter().collect(),
    };
    let mut out = Vec::new();
    let mut diagnostics = Vec::new();
    for row in selected {
        let res = if optimize {
            table1_optimized(table, row)
        } else {
            table1_bound(table, row)
        };
        match res {
            Ok(b) => out.push((row.label.to_string(), b)),
            Err(e) => diagnostics.push(format!("row {}: {e}", row.label)),
        }
    }
    let ok = diagnostics.is_empty();
    Ok(rows_report(&out, ok, diagnostics))
}

fn resolve_regime(regime: RegimeArg, log_x0: f64) -> Regime {
    match regime {
        RegimeArg::Medium => Regime::Medium,
        RegimeArg::Large => Regime::Large,
        RegimeArg::Vk => Regime::Vk,
        RegimeArg::Auto if log_x0 <= MEDIUM_MAX_LOG_X => Regime::Medium,
        RegimeArg::Auto if log_x0 < NU3_MIN_LOG_X0 => Regime::Large,
        RegimeArg::Auto => Regime::Vk,
    }
}

fn bound(
    table: &DensityTable,
    regime: RegimeArg,
    log_x0: f64,
    sigma: Option<f64>,
    k: Option<u32>,
    force_optimize: bool,
) -> Result<Report> {
    if !(log_x0.is_finite() && log_x0 > 0.0) {
        return Err(usage("--log-x0 must be a positive number"));
    }
    let regime = resolve_regime(regime, log_x0);
    if k.is_some() && regime != Regime::Medium {
        return Err(usage("--K only applies to the medium regime"));
    }
    if let Some(s) = sigma {
        if !(s >= table.sigma_min() && s < 1.0) {
            return Err(usage(format!(
                "--sigma must lie in [{}, 1)",
                table.sigma_min()
            )));
        }
    }
    if k == Some(0) {
        return Err(usage("--K must be at least 1"));
    }
    let b = match (sigma, force_optimize) {
        (Some(s), false) => {
            let ks: Vec<u32> = match (regime, k) {
                (Regime::Medium, Some(k)) => vec![k],
                (Regime::Medium, None) => (1..=engine::K_MAX).collect(),
                _ => vec![1],
            };
            // without --K, take the K giving the smallest bound at x0
            let mut best: Option<(f64, BoundConstants)> = None;
            let mut last_err = None;
            for k in ks {
                let res = Pipeline::new(table, regime, log_x0, s, k)
                    .and_then(|p| engine::bound_from_pipeline(p, log_x0));
                match res {
                    Ok(b) => {
                        let v = b.envelope_log_unrounded(log_x0);
                        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                            best = Some((v, b));
                        }
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            match best {
                Some((_, b)) => b,
                None => return Err(last_err.expect("at least one K was tried").into()),
            }
        }
        _ => optimize(table, regime, log_x0)?,
    };
    Ok(rows_report(&[(format!("{log_x0}"), b)], true, Vec::new()))
}

fn brackets(region: RegionArg, log_x0: Option<f64>) -> Result<Report> {
    let xs: Vec<f64> = match (region, log_x0) {
        (_, Some(x)) => vec![x],
        (RegionArg::Nu2, None) => TABLE2.iter().map(|r| r.0).collect(),
        (RegionArg::Nu3, None) => vec![VK_LOG_X0],
    };
    let mut brs = Vec::new();
    for x in xs {
        let br = match region {
            RegionArg::Nu2 => bracket_nu2(x),
            RegionArg::Nu3 => bracket_nu3(x),
        }
        .map_err(|e| usage(e.to_string()))?;
        brs.push(br);
    }
    let mut text = format!("{:>8} {:>10} {:>10} {:>10} {:>10}\n", "X", "B0", "B1", "B2", "B3");
    let mut csv = String::from("X,B0,B1,B2,B3\n");
    for b in &brs {
        let _ = writeln!(
            text,
            "{:>8e} {:>10.7} {:>10.7} {:>10.7} {:>10.7}",
            b.log_x0, b.b0, b.b1, b.b2, b.b3
        );
        let _ = writeln!(csv, "{},{:.7},{:.7},{:.7},{:.7}", b.log_x0, b.b0, b.b1, b.b2, b.b3);
    }
    Ok(Report {
        json: serde_json::to_value(&brs)?,
        text,
        csv: Some(csv),
        ok: true,
        diagnostics: Vec::new(),
    })
}

fn table_rows(table: &DensityTable) -> Result<Vec<BoundConstants>> {
    TABLE1
        .iter()
        .map(|r| table1_bound(table, r).with_context(|| format!("row {}", r.label)))
        .collect()
}

fn crossovers(table: &DensityTable) -> Result<Report> {
    let regions = envelope_crossovers()?;
    let rows = table_rows(table)?;
    let vk = vk_bound(table, VK_LOG_X0, VK_SIGMA)?;
    let cmp = regime_compare(&rows, &vk)?;
    let mut text = String::new();
    let mut csv = String::from("kind,log\n");
    for c in &regions {
        let _ = writeln!(text, "zero-free regions {:?}/{:?} cross at log t = {:.6}", c.pair.0, c.pair.1, c.log_t);
        let _ = writeln!(csv, "region_{:?}_{:?},{}", c.pair.0, c.pair.1, c.log_t);
    }
    for x in &cmp.crossings {
        let _ = writeln!(text, "table and Vinogradov–Korobov psi envelopes cross at log x = {x:.6e}");
        let _ = writeln!(csv, "psi_envelopes,{x}");
    }
    Ok(Report {
        json: json!({ "regions": regions, "psi_envelopes": cmp }),
        text,
        csv: Some(csv),
        ok: true,
        diagnostics: Vec::new(),
    })
}

fn verify_small(table: &DensityTable, sieve_limit: u64) -> Result<Report> {
    if (sieve_limit as f64) < SMALL_X_MAX {
        return Err(usage(format!("--sieve-limit must be at least {SMALL_X_MAX}")));
    }
    let primes = build_sieve(sieve_limit).map_err(|e| usage(e.to_string()))?;
    let row = table1_bound(table, &TABLE1[0])?;
    let theta = theta_constants(&row)?;
    let pi = pi_constants_classical(&theta)?;
    let vk = vk_bound(table, VK_LOG_X0, VK_SIGMA)?;
    let env = |a: f64, b: f64, c: f64, kind: engine::ArgKind| {
        move |x: f64| x * engine::envelope_log(kind, a, b, c, x.ln()).exp()
    };
    let sq = engine::ArgKind::SqrtLog;
    let checks = vec![
        ("psi", primes.verify_pointwise(env(row.a, row.b, row.c, sq), Quantity::Psi, 2.0, 59.0)?),
        ("theta", primes.verify_pointwise(env(theta.a1, theta.b, theta.c, sq), Quantity::Theta, 2.0, 599.0)?),
        ("pi", primes.verify_pointwise(env(pi.a2, row.b - 1.0, row.c, sq), Quantity::PiLi, 2.0, SMALL_X_MAX)?),
        (
            "psi_vk",
            primes.verify_pointwise(env(vk.a, vk.b, vk.c, engine::ArgKind::VkR), Quantity::Psi, 23.0, 59.0)?,
        ),
    ];
    let coverage = piecewise_coverage(&row, table, &primes)?;
    let i1 = primes.integral_i1()?;
    let i1_ok = i1.value > 0.0 && i1.value <= derived::I1_CEILING && i1.refinement_delta.abs() < 1e-3;

    let mut text = String::new();
    for (name, r) in &checks {
        let _ = writeln!(
            text,
            "{name:>7} on [{}, {}]: {} ({} checks, worst margin {:.4} at x = {})",
            r.lo,
            r.hi,
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            r.worst_margin,
            r.worst_x
        );
    }
    for s in &coverage.segments {
        let _ = writeln!(text, "coverage {:<24} {:?}: {}", s.name, s.status, s.note);
    }
    let _ = writeln!(
        text,
        "I1 = {:.6} (refinement change {:.2e}): {}",
        i1.value,
        i1.refinement_delta,
        if i1_ok { "PASS" } else { "FAIL" }
    );
    let ok = checks.iter().all(|(_, r)| r.passed) && coverage.passed && i1_ok;
    let json_checks: serde_json::Map<String, serde_json::Value> = checks
        .iter()
        .map(|(n, r)| (n.to_string(), serde_json::to_value(r).expect("serializable")))
        .collect();
    Ok(Report {
        json: json!({ "pointwise": json_checks, "coverage": coverage, "i1": i1, "passed": ok }),
        text,
        csv: None,
        ok,
        diagnostics: if ok { Vec::new() } else { vec!["small-x verification failed".into()] },
    })
}

struct Candidate {
    source: String,
    log_rel: f64,
}

fn eval(table: &DensityTable, log_x: f64, quantity: QuantityArg) -> Result<Report> {
    if !(log_x >= EVAL_MIN_LOG_X) || !log_x.is_finite() {
        return Err(usage(format!(
            "log x = {log_x} is below {EVAL_MIN_LOG_X}, where bounds rest on direct computation; use `pnt verify-small`"
        )));
    }
    let rows = table_rows(table)?;
    let vk = vk_bound(table, VK_LOG_X0, VK_SIGMA)?;
    let mut cands = Vec::new();
    let vk_applies = log_x >= vk.x_label;
    match quantity {
        QuantityArg::Psi | QuantityArg::Theta => {
            let bump = if quantity == QuantityArg::Theta { 0.01 } else { 0.0 };
            let applicable = rows.iter().chain(vk_applies.then_some(&vk));
            for b in applicable.filter(|b| b.x_label <= log_x) {
                let a = if bump > 0.0 { theta_constants(b)?.a1 } else { b.a };
                cands.push(Candidate {
                    source: format!("{} row X = {}", regime_name(b.regime), b.x_label),
                    log_rel: engine::envelope_log(b.kind(), a, b.b, b.c, log_x),
                });
            }
        }
        QuantityArg::Pi => {
            let theta = theta_constants(&rows[0])?;
            let pi = pi_constants_classical(&theta)?;
            cands.push(Candidate {
                source: "classical".into(),
                log_rel: engine::envelope_log(engine::ArgKind::SqrtLog, pi.a2, theta.b - 1.0, theta.c, log_x),
            });
            if vk_applies {
                let vt = theta_constants(&vk)?;
                let vp = pi_constants_vk(vt.a1)?;
                cands.push(Candidate {
                    source: "vk".into(),
                    log_rel: engine::envelope_log(engine::ArgKind::VkR, vp.a2, vt.b - 1.0, vt.c, log_x),
                });
            }
        }
    }
    let best = cands
        .into_iter()
        .min_by(|a, b| a.log_rel.total_cmp(&b.log_rel))
        .context("no certified bound applies")?;
    let rel = ExtReal::exp_of(best.log_rel);
    let absolute = (log_x <= EVAL_MAX_ABSOLUTE_LOG_X).then(|| (best.log_rel + log_x).exp());
    let name = match quantity {
        QuantityArg::Psi => "|psi(x) - x|",
        QuantityArg::Theta => "|theta(x) - x|",
        QuantityArg::Pi => "|pi(x) - li(x)|",
    };
    let mut text = format!("{name} <= {} x  at log x = {log_x}  ({})\n", sci(&rel), best.source);
    if let Some(a) = absolute {
        let _ = writeln!(text, "{name} <= {a:.6e}");
    }
    let csv = format!(
        "log_x,relative_mantissa,relative_exp10,absolute\n{log_x},{:.2},{},{}\n",
        decimal(&rel).mantissa,
        decimal(&rel).decimal_exponent,
        absolute.map(|a| format!("{a:e}")).unwrap_or_default()
    );
    Ok(Report {
        json: json!({
            "quantity": format!("{quantity:?}").to_lowercase(),
            "log_x": log_x,
            "source": best.source,
            "relative": decimal(&rel),
            "log_relative": best.log_rel,
            "absolute": absolute,
        }),
        text,
        csv: Some(csv),
        ok: true,
        diagnostics: Vec::new(),
    })
}

fn derived_constants(table: &DensityTable) -> Result<Report> {
    let rows = table_rows(table)?;
    let mut thetas = Vec::new();
    let mut text = String::from("theta constants A1 = A + 0.01:\n");
    for (r, b) in TABLE1.iter().zip(&rows) {
        let t = theta_constants(b)?;
        let _ = writeln!(text, "  X = {:>6}: A1 = {:.2}", r.label, t.a1);
        thetas.push(json!({ "label": r.label, "theta": t }));
    }
    let pi = pi_constants_classical(&theta_constants(&rows[0])?)?;
    let _ = writeln!(
        text,
        "pi(x) - li(x), classical: A2 = {} (unrounded {:.6}; {:.6} with computed I2 = {:.4e})",
        pi.a2, pi.a2_unrounded, pi.a2_with_computed_i2, pi.i2_computed
    );
    let vk = vk_bound(table, VK_LOG_X0, VK_SIGMA)?;
    let vk_theta = theta_constants(&vk)?;
    let vk_pi = pi_constants_vk(vk_theta.a1)?;
    let _ = writeln!(
        text,
        "pi(x) - li(x), Vinogradov–Korobov: A1 = {:.3}, A2 = {} (unrounded {:.6})",
        vk_theta.a1, vk_pi.a2, vk_pi.a2_unrounded
    );
    Ok(Report {
        json: json!({ "theta": thetas, "pi_classical": pi, "vk_theta": vk_theta, "pi_vk": vk_pi }),
        text,
        csv: None,
        ok: true,
        diagnostics: Vec::new(),
    })
}

fn vk(table: &DensityTable) -> Result<Report> {
    let b = vk_bound(table, VK_LOG_X0, VK_SIGMA)?;
    let br = b.pipeline.bracket.context("bracket present")?;
    let mut report = rows_report(&[("2.8e10".to_string(), b.clone())], true, Vec::new());
    let _ = writeln!(
        report.text,
        "B2 = {:.6}, A(x0) before folding = {:.4}, unrounded A = {:.6}, C = {:.6}",
        br.b2, b.a_prime, b.a_unrounded, b.c_unrounded
    );
    if let serde_json::Value::Array(v) = &mut report.json {
        if let Some(serde_json::Value::Object(o)) = v.first_mut() {
            o.insert("B2".into(), json!(br.b2));
            o.insert("A_before_folding".into(), json!(b.a_prime));
        }
    }
    Ok(report)
}
