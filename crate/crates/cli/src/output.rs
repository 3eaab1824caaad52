//! JSON and CSV renderings of reports.
//!
//! JSON objects use sorted keys and are pretty-printed, so the text re-emitted
//! from a parsed report is byte-identical to the original.

use crate::args::{Action, Command, GridSource};
use mellincheck::verifier::{RepResult, ReportRow, VerificationReport};
use mellincheck::{CVal, EvalOutcome};
use serde_json::{json, Map, Value};
use std::time::Duration;

/// One γ extraction, ready for rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRow {
    pub method: &'static str,
    pub outcome: Option<EvalOutcome>,
    pub error: Option<String>,
    pub deviation: Option<f64>,
    pub passed: bool,
}

fn complex(z: CVal) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Shortest round-tripping text (at most 17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        ryu::Buffer::new().format_finite(x).to_owned()
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn config_json(cmd: &Command) -> Value {
    let mut args = Map::new();
    match &cmd.action {
        Action::Eval { z, reps } => {
            args.insert("z".into(), complex(*z));
            args.insert("reps".into(), json!(reps.iter().map(|r| r.tag()).collect::<Vec<_>>()));
        }
        Action::Verify { grid } => {
            let g = match grid {
                GridSource::Default => "default".to_string(),
                GridSource::File(p) => p.display().to_string(),
            };
            args.insert("grid".into(), json!(g));
        }
        Action::Scan {
            re_range,
            im_range,
            step,
            reps,
        } => {
            args.insert("re_range".into(), json!([re_range.0, re_range.1]));
            args.insert("im_range".into(), json!([im_range.0, im_range.1]));
            args.insert("step".into(), json!(step));
            args.insert("reps".into(), json!(reps.iter().map(|r| r.tag()).collect::<Vec<_>>()));
        }
        Action::Gamma { method, tol } => {
            args.insert("method".into(), json!(method.name()));
            args.insert("tol".into(), json!(tol));
        }
    }
    let t = &cmd.tolerances;
    json!({
        "command": cmd.action.name(),
        "args": Value::Object(args),
        "quadrature": {
            "rel_tol": cmd.quad.rel_tol,
            "abs_floor": cmd.quad.abs_floor,
            "max_level": cmd.quad.max_level,
            "split_point": cmd.quad.split_point,
        },
        "tolerances": {
            "closed": t.closed,
            "one_d": t.one_d,
            "two_d": t.two_d,
            "two_d_continuation": t.two_d_continuation,
        },
    })
}

fn outcome_fields(o: &EvalOutcome, m: &mut Map<String, Value>) {
    m.insert("value".into(), complex(o.value));
    m.insert("err_estimate".into(), json!(o.err_estimate));
    m.insert("n_evals".into(), json!(o.n_evals));
    m.insert("converged".into(), json!(o.converged));
    m.insert("diagnostic".into(), json!(o.diagnostic));
}

fn rep_json(r: &RepResult) -> Value {
    let mut m = Map::new();
    match r {
        RepResult::Evaluated {
            outcome,
            rel_discrepancy,
            tolerance,
            passed,
        } => {
            m.insert("status".into(), json!("evaluated"));
            outcome_fields(outcome, &mut m);
            m.insert("rel_discrepancy".into(), json!(rel_discrepancy));
            m.insert("tolerance".into(), json!(tolerance));
            m.insert("passed".into(), json!(passed));
        }
        RepResult::Skipped { reason } => {
            m.insert("status".into(), json!("skipped"));
            m.insert("reason".into(), json!(reason));
        }
        RepResult::Failed { error } => {
            m.insert("status".into(), json!("failed"));
            m.insert("error".into(), json!(error));
        }
    }
    Value::Object(m)
}

fn row_json(row: &ReportRow) -> Value {
    let values: Map<String, Value> = row
        .values
        .iter()
        .map(|(rep, r)| (rep.tag().to_string(), rep_json(r)))
        .collect();
    json!({
        "z": complex(row.z),
        "reference": row.reference.map(complex),
        "max_rel_discrepancy": row.max_rel_discrepancy,
        "passed": row.passed,
        "values": values,
    })
}

fn summary_json(n_pass: usize, n_fail: usize, wall: Option<Duration>) -> Value {
    json!({
        "n_pass": n_pass,
        "n_fail": n_fail,
        "wall_time_s": wall.map(|d| d.as_secs_f64()),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("a Value always serializes");
    s.push('\n');
    s
}

pub fn report_json(cmd: &Command, report: &VerificationReport) -> String {
    let wall = cmd.timing.then_some(report.summary.wall_time);
    pretty(&json!({
        "config": config_json(cmd),
        "rows": report.rows.iter().map(row_json).collect::<Vec<_>>(),
        "summary": summary_json(report.summary.n_pass, report.summary.n_fail, wall),
    }))
}

pub const REPORT_CSV_HEADER: [&str; 12] = [
    "z_re",
    "z_im",
    "rep",
    "value_re",
    "value_im",
    "err_estimate",
    "n_evals",
    "converged",
    "ref_re",
    "ref_im",
    "rel_discrepancy",
    "passed",
];

/// One CSV line per (z, representation).
pub fn report_csv(report: &VerificationReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_CSV_HEADER)?;
    for row in &report.rows {
        let (ref_re, ref_im) = row
            .reference
            .map_or((String::new(), String::new()), |r| (fmt_f64(r.re), fmt_f64(r.im)));
        for (rep, r) in &row.values {
            let mut rec = vec![fmt_f64(row.z.re), fmt_f64(row.z.im), rep.tag().to_string()];
            match r {
                RepResult::Evaluated {
                    outcome,
                    rel_discrepancy,
                    passed,
                    ..
                } => rec.extend([
                    fmt_f64(outcome.value.re),
                    fmt_f64(outcome.value.im),
                    fmt_f64(outcome.err_estimate),
                    outcome.n_evals.to_string(),
                    outcome.converged.to_string(),
                    ref_re.clone(),
                    ref_im.clone(),
                    fmt_f64(*rel_discrepancy),
                    passed.to_string(),
                ]),
                RepResult::Skipped { .. } | RepResult::Failed { .. } => {
                    let verdict = if matches!(r, RepResult::Skipped { .. }) {
                        "skipped"
                    } else {
                        "failed"
                    };
                    rec.extend(std::iter::repeat_n(String::new(), 5));
                    rec.extend([ref_re.clone(), ref_im.clone(), String::new(), verdict.into()]);
                }
            }
            w.write_record(&rec)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn gamma_json(cmd: &Command, rows: &[GammaRow], wall: Duration) -> String {
    let rows_json: Vec<Value> = rows
        .iter()
        .map(|g| {
            let mut m = Map::new();
            m.insert("method".into(), json!(g.method));
            match &g.outcome {
                Some(o) => {
                    m.insert("value".into(), json!(o.value.re));
                    m.insert("err_estimate".into(), json!(o.err_estimate));
                    m.insert("n_evals".into(), json!(o.n_evals));
                    m.insert("converged".into(), json!(o.converged));
                    m.insert("diagnostic".into(), json!(o.diagnostic));
                }
                None => {
                    m.insert("value".into(), Value::Null);
                }
            }
            m.insert("deviation_from_euler_gamma".into(), json!(g.deviation));
            m.insert("error".into(), json!(g.error));
            m.insert("passed".into(), json!(g.passed));
            Value::Object(m)
        })
        .collect();
    let n_pass = rows.iter().filter(|g| g.passed).count();
    pretty(&json!({
        "config": config_json(cmd),
        "rows": rows_json,
        "summary": summary_json(n_pass, rows.len() - n_pass, cmd.timing.then_some(wall)),
    }))
}

pub fn gamma_csv(rows: &[GammaRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "method",
        "value",
        "err_estimate",
        "n_evals",
        "converged",
        "deviation_from_euler_gamma",
        "passed",
    ])?;
    for g in rows {
        let (value, err, n, conv) = g.outcome.as_ref().map_or_else(Default::default, |o| {
            (
                fmt_f64(o.value.re),
                fmt_f64(o.err_estimate),
                o.n_evals.to_string(),
                o.converged.to_string(),
            )
        });
        w.write_record([
            g.method.to_string(),
            value,
            err,
            n,
            conv,
            g.deviation.map(fmt_f64).unwrap_or_default(),
            g.passed.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
