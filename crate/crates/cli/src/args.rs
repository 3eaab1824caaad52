use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use mellincheck::verifier::Tolerances;
use mellincheck::{c64, CVal, QuadConfig, Representation};
use std::ffi::OsString;
use std::path::PathBuf;

/// Largest number of grid points a `scan` may request.
pub const MAX_SCAN_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaMethod {
    /// Double integral over the unit square.
    Sondow,
    /// Closed form at z = −1 + h.
    Limit,
}

impl GammaMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sondow => "sondow",
            Self::Limit => "limit",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mellincheck",
    version,
    about = "Cross-check six equivalent forms of a log-power double integral against its Gamma/zeta closed form"
)]
struct Cli {
    /// Target relative error for every quadrature.
    #[arg(long, global = true, default_value_t = 1e-10)]
    rel_tol: f64,

    /// Node-doubling depth cap (3..=12).
    #[arg(long, global = true, default_value_t = 10)]
    max_level: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Emit `wall_time_s: null` so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Pass threshold for closed forms (relative discrepancy to F).
    #[arg(long, global = true)]
    tol_closed: Option<f64>,

    /// Pass threshold for 1D quadratures.
    #[arg(long = "tol-1d", global = true)]
    tol_1d: Option<f64>,

    /// Pass threshold for 2D quadratures with Re(z) > −1.
    #[arg(long = "tol-2d", global = true)]
    tol_2d: Option<f64>,

    /// Pass threshold for 2D quadratures with Re(z) ≤ −1.
    #[arg(long = "tol-2d-continuation", global = true)]
    tol_2d_continuation: Option<f64>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Evaluate chosen representations at one z.
    Eval {
        /// "RE", "RE+IMi" or "RE-IMi"; Re must exceed −2.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z_arg)]
        z: CVal,
        /// "all" or a comma list of A..F.
        #[arg(long, default_value = "all", value_parser = parse_reps)]
        reps: RepList,
    },
    /// Verify all representations over a grid of z.
    Verify {
        /// "default" or a file with one z per line.
        #[arg(long, default_value = "default")]
        grid: String,
    },
    /// Verify over a rectangular grid.
    Scan {
        /// "LO:HI" (or a single value) on the real axis.
        #[arg(long, allow_hyphen_values = true)]
        re_range: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        im_range: String,
        #[arg(long)]
        step: f64,
        #[arg(long, default_value = "all", value_parser = parse_reps)]
        reps: RepList,
    },
    /// Extract the Euler–Mascheroni constant.
    Gamma {
        #[arg(long, value_enum)]
        method: GammaMethod,
        /// Relative tolerance of the double integral (sondow).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepList(pub Vec<Representation>);

#[derive(Debug, Clone, PartialEq)]
pub enum GridSource {
    Default,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    Eval {
        z: CVal,
        reps: Vec<Representation>,
    },
    Verify {
        grid: GridSource,
    },
    Scan {
        re_range: (f64, f64),
        im_range: (f64, f64),
        step: f64,
        reps: Vec<Representation>,
    },
    Gamma {
        method: GammaMethod,
        tol: f64,
    },
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Eval { .. } => "eval",
            Self::Verify { .. } => "verify",
            Self::Scan { .. } => "scan",
            Self::Gamma { .. } => "gamma",
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Command {
    pub action: Action,
    pub quad: QuadConfig,
    pub tolerances: Tolerances,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

/// Parses a complex number written as `RE`, `RE+IMi`, `RE-IMi` or `IMi`.
pub fn parse_z(text: &str) -> Result<CVal, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("malformed complex number {text:?}; expected RE, RE+IMi or RE-IMi");
    if s.is_empty() {
        return Err(bad());
    }
    let num = |part: &str| -> Result<f64, String> {
        let v: f64 = part.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Ok(c64(num(&s)?, 0.0));
    };
    let imag = |part: &str| -> Result<f64, String> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            p => num(p),
        }
    };
    // split at the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(c64(num(&body[..k])?, imag(&body[k..])?)),
        None => Ok(c64(0.0, imag(body)?)),
    }
}

fn parse_z_arg(text: &str) -> Result<CVal, String> {
    let z = parse_z(text)?;
    if z.re > -2.0 {
        Ok(z)
    } else {
        Err(format!("Re(z) must exceed -2, got {text}"))
    }
}

fn parse_reps(text: &str) -> Result<RepList, String> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(RepList(Representation::ALL.to_vec()));
    }
    let mut reps = Vec::new();
    for tag in text.split(',').map(str::trim) {
        let rep = Representation::from_tag(tag)
            .ok_or_else(|| format!("unknown representation {tag:?}; expected A..F or all"))?;
        if !reps.contains(&rep) {
            reps.push(rep);
        }
    }
    reps.sort();
    Ok(RepList(reps))
}

/// Parses `"LO:HI"` or a single value.
pub fn parse_range(text: &str) -> Result<(f64, f64), String> {
    let parse = |p: &str| -> Result<f64, String> {
        p.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("malformed range {text:?}; expected LO:HI"))
    };
    let (lo, hi) = match text.split_once(':') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("range {text:?} has LO > HI"));
    }
    Ok((lo, hi))
}

/// Points `lo, lo + step, …` not exceeding `hi` (with a little slack for rounding).
pub fn range_points(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    (0..n).map(|k| lo + k as f64 * step).collect()
}

fn usage(msg: impl std::fmt::Display) -> clap::Error {
    clap::Error::raw(ErrorKind::ValueValidation, format!("{msg}\n"))
}

/// Parses and validates a command line (including the program name).
///
/// Errors carry clap's exit code: 0 for `--help`/`--version`, 2 otherwise.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    let quad = QuadConfig::default()
        .with_rel_tol(cli.rel_tol)
        .and_then(|c| c.with_max_level(cli.max_level))
        .map_err(usage)?;
    let mut tolerances = Tolerances::default();
    for (slot, value, name) in [
        (&mut tolerances.closed, cli.tol_closed, "--tol-closed"),
        (&mut tolerances.one_d, cli.tol_1d, "--tol-1d"),
        (&mut tolerances.two_d, cli.tol_2d, "--tol-2d"),
        (
            &mut tolerances.two_d_continuation,
            cli.tol_2d_continuation,
            "--tol-2d-continuation",
        ),
    ] {
        if let Some(v) = value {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(usage(format!("{name} must be a nonnegative number, got {v}")));
            }
            *slot = v;
        }
    }
    let action = match cli.command {
        Sub::Eval { z, reps } => Action::Eval { z, reps: reps.0 },
        Sub::Verify { grid } => Action::Verify {
            grid: if grid == "default" {
                GridSource::Default
            } else {
                GridSource::File(PathBuf::from(grid))
            },
        },
        Sub::Scan {
            re_range,
            im_range,
            step,
            reps,
        } => {
            let re_range = parse_range(&re_range).map_err(usage)?;
            let im_range = parse_range(&im_range).map_err(usage)?;
            if re_range.0 <= -2.0 {
                return Err(usage("--re-range must stay above -2"));
            }
            if !(step > 0.0 && step.is_finite()) {
                return Err(usage(format!("--step must be positive, got {step}")));
            }
            let n = range_points(re_range.0, re_range.1, step).len()
                * range_points(im_range.0, im_range.1, step).len();
            if n > MAX_SCAN_POINTS {
                return Err(usage(format!(
                    "scan would evaluate {n} points (limit {MAX_SCAN_POINTS})"
                )));
            }
            Action::Scan {
                re_range,
                im_range,
                step,
                reps: reps.0,
            }
        }
        Sub::Gamma { method, tol } => {
            quad.with_rel_tol(tol).map_err(usage)?;
            Action::Gamma { method, tol }
        }
    };
    Ok(Command {
        action,
        quad,
        tolerances,
        format: cli.format,
        output: cli.output,
        timing: !cli.no_timing,
    })
}
