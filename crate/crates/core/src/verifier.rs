//! Cross-checks every representation against the closed form and extracts
//! the Euler–Mascheroni constant two independent ways.

use crate::numeric::{c64, rel_diff, CVal};
use crate::quadrature::{quad01, quad0inf, quad_square, EvalOutcome, QuadConfig, UnitPoint};
use crate::representations::{
    closed_form, integrand_nested_at, integrand_square_at, integrand_t, integrand_u_at,
    mellin_closed, Representation, TForm, MELLIN_POLE_EXCLUSION,
};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

/// Relative tolerances against the closed-form reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub closed: f64,
    pub one_d: f64,
    /// 2D quadratures for `Re(z) > −1`.
    pub two_d: f64,
    /// 2D quadratures in the continuation strip `−2 < Re(z) ≤ −1`.
    pub two_d_continuation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            closed: 1e-11,
            one_d: 1e-9,
            two_d: 1e-6,
            two_d_continuation: 1e-5,
        }
    }
}

impl Tolerances {
    pub fn for_rep(&self, rep: Representation, z: CVal) -> f64 {
        if rep.is_closed_form() {
            self.closed
        } else if rep.is_two_dimensional() {
            if z.re > -1.0 {
                self.two_d
            } else {
                self.two_d_continuation
            }
        } else {
            self.one_d
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepResult {
    Evaluated {
        outcome: EvalOutcome,
        rel_discrepancy: f64,
        tolerance: f64,
        passed: bool,
    },
    /// Not attempted at this `z` (outside the form's region, or at its pole).
    Skipped { reason: String },
    Failed { error: String },
}

impl RepResult {
    pub fn outcome(&self) -> Option<&EvalOutcome> {
        match self {
            Self::Evaluated { outcome, .. } => Some(outcome),
            _ => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        match self {
            Self::Evaluated {
                outcome, passed, ..
            } => outcome.converged && !passed,
            Self::Skipped { .. } => false,
            Self::Failed { .. } => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub z: CVal,
    pub values: BTreeMap<Representation, RepResult>,
    /// The closed-form value (F); `None` only if it could not be computed.
    pub reference: Option<CVal>,
    pub max_rel_discrepancy: f64,
    pub passed: bool,
}

impl ReportRow {
    pub fn all_converged(&self) -> bool {
        self.values
            .values()
            .filter_map(RepResult::outcome)
            .all(|o| o.converged)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

/// The twelve `z` values spanning both sides of `Re(z) = −1`.
pub fn default_grid() -> Vec<CVal> {
    vec![
        c64(-0.5, 0.0),
        c64(0.0, 0.0),
        c64(0.5, 0.0),
        c64(1.0, 0.0),
        c64(2.0, 0.0),
        c64(0.5, 1.0),
        c64(2.0, 3.0),
        c64(-1.75, 0.0),
        c64(-1.5, 0.0),
        c64(-1.25, 0.0),
        c64(-1.0, 0.0),
        c64(-1.5, 1.0),
    ]
}

fn region_check(rep: Representation, z: CVal) -> Result<()> {
    if z.re > rep.min_re() && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Region {
            rep,
            region: rep.region(),
            z,
        })
    }
}

/// Evaluates one representation at `z`.
pub fn eval_representation(rep: Representation, z: CVal, cfg: &QuadConfig) -> Result<EvalOutcome> {
    region_check(rep, z)?;
    match rep {
        Representation::A => quad_square(|x, y| integrand_square_at(x, y, z), cfg),
        Representation::B => quad_square(|u, s| integrand_nested_at(u, s, z), cfg),
        Representation::C => quad01(|u| integrand_u_at(u, z), cfg),
        Representation::D => quad0inf(|t| integrand_t(t, z, TForm::Simplified), cfg),
        Representation::E => mellin_closed(z).map(EvalOutcome::exact),
        Representation::F => closed_form(z).map(EvalOutcome::exact),
    }
}

fn skip_reason(rep: Representation, z: CVal) -> Option<String> {
    if z.re <= rep.min_re() {
        return Some(format!("region: requires {}", rep.region()));
    }
    if rep == Representation::E && (z + 1.0).norm() < MELLIN_POLE_EXCLUSION {
        return Some("pole: |z + 1| too small for the two-term form".into());
    }
    None
}

/// Evaluates `reps` at `z` and compares each against the closed form.
pub fn verify_point(
    z: CVal,
    reps: &[Representation],
    cfg: &QuadConfig,
    tol: &Tolerances,
) -> ReportRow {
    let reference = closed_form(z);
    let mut values = BTreeMap::new();
    let mut max_rel = 0.0f64;
    let mut passed = reference.is_ok();
    for &rep in reps {
        let entry = if let Some(reason) = skip_reason(rep, z) {
            RepResult::Skipped { reason }
        } else {
            let outcome = if rep == Representation::F {
                reference.clone().map(EvalOutcome::exact)
            } else {
                eval_representation(rep, z, cfg)
            };
            match (outcome, &reference) {
                (Ok(outcome), Ok(r)) => {
                    let rel = rel_diff(outcome.value, *r);
                    let tolerance = tol.for_rep(rep, z);
                    if outcome.converged {
                        max_rel = max_rel.max(rel);
                    }
                    RepResult::Evaluated {
                        passed: rel <= tolerance,
                        outcome,
                        rel_discrepancy: rel,
                        tolerance,
                    }
                }
                (Ok(_), Err(e)) => RepResult::Failed {
                    error: format!("no reference: {e}"),
                },
                (Err(e), _) => RepResult::Failed {
                    error: e.to_string(),
                },
            }
        };
        if entry.is_failure() {
            passed = false;
        }
        values.insert(rep, entry);
    }
    ReportRow {
        z,
        values,
        reference: reference.ok(),
        max_rel_discrepancy: max_rel,
        passed,
    }
}

/// Verifies every representation at each `z`; rows keep input order.
pub fn verify_grid(zs: &[CVal], cfg: &QuadConfig) -> VerificationReport {
    verify_grid_with(zs, &Representation::ALL, cfg, &Tolerances::default())
}

pub fn verify_grid_with(
    zs: &[CVal],
    reps: &[Representation],
    cfg: &QuadConfig,
    tol: &Tolerances,
) -> VerificationReport {
    let start = Instant::now();
    let rows: Vec<ReportRow> = zs
        .par_iter()
        .map(|&z| verify_point(z, reps, cfg, tol))
        .collect();
    let n_pass = rows.iter().filter(|r| r.passed).count();
    VerificationReport {
        summary: Summary {
            n_pass,
            n_fail: rows.len() - n_pass,
            wall_time: start.elapsed(),
        },
        rows,
    }
}

/// `(1 − x) / ((1 − xy)(−log xy))`, the positive form of the z = −1 integrand.
pub fn sondow_integrand(x: UnitPoint, y: UnitPoint) -> f64 {
    let log_xy = crate::numeric::neg_log_split(x.x, x.xc)
        + crate::numeric::neg_log_split(y.x, y.xc);
    x.xc / ((x.xc + x.x * y.xc) * log_xy)
}

/// γ as the double integral of [`sondow_integrand`] over the unit square.
pub fn gamma_sondow(cfg: &QuadConfig) -> Result<EvalOutcome> {
    quad_square(|x, y| Ok(c64(sondow_integrand(x, y), 0.0)), cfg)
}

/// `closed_form(−1 + h)`; exactly γ at `h = 0`.
pub fn gamma_limit(h: f64) -> Result<CVal> {
    if !(h >= 0.0) || !h.is_finite() {
        return Err(Error::Domain {
            op: "gamma_limit",
            detail: format!("h must be a finite nonnegative real, got {h}"),
        });
    }
    closed_form(c64(-1.0 + h, 0.0))
}
