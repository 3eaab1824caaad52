//! Command-line front end: argument parsing, dispatch and report output.
//!
//! Exit codes: 0 all checks passed, 1 a check failed or a quadrature did not
//! converge, 2 usage error, 3 I/O error.

pub mod args;
pub mod output;

pub use args::{parse_args, parse_z, Action, Command, Format, GammaMethod, GridSource};

use mellincheck::special::EULER_GAMMA;
use mellincheck::verifier::{gamma_limit, gamma_sondow, verify_grid_with, VerificationReport};
use mellincheck::{c64, CVal, EvalOutcome};
use output::GammaRow;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Reads a grid file: one complex number per line; blank lines and `#`
/// comments are ignored.
pub fn read_grid(path: &Path) -> Result<Vec<CVal>, (i32, String)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (EXIT_IO, format!("cannot read grid {}: {e}", path.display())))?;
    let mut zs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let z = parse_z(line)
            .map_err(|e| (EXIT_USAGE, format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        if z.re <= -2.0 {
            return Err((
                EXIT_USAGE,
                format!("{}:{}: Re(z) must exceed -2", path.display(), lineno + 1),
            ));
        }
        zs.push(z);
    }
    if zs.is_empty() {
        return Err((EXIT_USAGE, format!("grid {} is empty", path.display())));
    }
    Ok(zs)
}

/// The `z` values a verification command covers, in report order.
pub fn grid_points(action: &Action) -> Result<Vec<CVal>, (i32, String)> {
    match action {
        Action::Eval { z, .. } => Ok(vec![*z]),
        Action::Verify {
            grid: GridSource::Default,
        } => Ok(mellincheck::verifier::default_grid()),
        Action::Verify {
            grid: GridSource::File(p),
        } => read_grid(p),
        Action::Scan {
            re_range,
            im_range,
            step,
            ..
        } => {
            let im = args::range_points(im_range.0, im_range.1, *step);
            Ok(args::range_points(re_range.0, re_range.1, *step)
                .into_iter()
                .flat_map(|re| im.iter().map(move |&im| c64(re, im)))
                .collect())
        }
        Action::Gamma { .. } => Ok(Vec::new()),
    }
}

fn report_exit(report: &VerificationReport) -> i32 {
    if report.summary.n_fail == 0 && report.rows.iter().all(|r| r.all_converged()) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn gamma_row(method: GammaMethod, cmd: &Command, tol: f64) -> GammaRow {
    let outcome = match method {
        GammaMethod::Sondow => cmd
            .quad
            .with_rel_tol(tol)
            .and_then(|cfg| gamma_sondow(&cfg)),
        GammaMethod::Limit => gamma_limit(0.0).map(EvalOutcome::exact),
    };
    match outcome {
        Ok(o) => {
            let deviation = o.value.re - EULER_GAMMA;
            let allowed = match method {
                GammaMethod::Sondow => (tol * EULER_GAMMA).max(10.0 * o.err_estimate),
                GammaMethod::Limit => 1e-12,
            };
            GammaRow {
                method: method.name(),
                passed: o.converged && deviation.abs() <= allowed,
                deviation: Some(deviation),
                outcome: Some(o),
                error: None,
            }
        }
        Err(e) => GammaRow {
            method: method.name(),
            outcome: None,
            error: Some(e.to_string()),
            deviation: None,
            passed: false,
        },
    }
}

/// Renders the command's report and its exit code, without doing any output.
pub fn execute(cmd: &Command) -> Result<(String, i32), (i32, String)> {
    let csv_err = |e: csv::Error| (EXIT_IO, format!("csv: {e}"));
    match &cmd.action {
        Action::Gamma { method, tol } => {
            let start = Instant::now();
            let rows = vec![gamma_row(*method, cmd, *tol)];
            let code = if rows.iter().all(|g| g.passed) {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            let text = match cmd.format {
                Format::Json => output::gamma_json(cmd, &rows, start.elapsed()),
                Format::Csv => output::gamma_csv(&rows).map_err(csv_err)?,
            };
            Ok((text, code))
        }
        action => {
            let zs = grid_points(action)?;
            let reps = match action {
                Action::Eval { reps, .. } | Action::Scan { reps, .. } => reps.as_slice(),
                _ => &mellincheck::Representation::ALL,
            };
            let report = verify_grid_with(&zs, reps, &cmd.quad, &cmd.tolerances);
            let text = match cmd.format {
                Format::Json => output::report_json(cmd, &report),
                Format::Csv => output::report_csv(&report).map_err(csv_err)?,
            };
            Ok((text, report_exit(&report)))
        }
    }
}

/// Runs `cmd`, writing the report to `--output` or `stdout` and diagnostics
/// to `stderr`. Returns the process exit code.
pub fn run_with(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (text, code) = match execute(cmd) {
        Ok(r) => r,
        Err((code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return code;
        }
    };
    let written = match &cmd.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .and_then(|()| stdout.flush())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    match written {
        Ok(()) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_IO
        }
    }
}

pub fn run(cmd: &Command) -> i32 {
    run_with(cmd, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
