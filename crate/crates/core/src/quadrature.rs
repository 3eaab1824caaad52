//! Double-exponential quadrature.
//!
//! * `quad01`: tanh-sinh on (0, 1). Each abscissa is delivered together with
//!   its complement `1 − x`, computed independently, so integrands singular
//!   at `x = 1` can be evaluated at distances far below machine epsilon.
//! * `quad0inf`: tanh-sinh on (0, a] plus exp-sinh on [a, ∞).
//! * `quad_square`: iterated tanh-sinh on the open unit square.
//!
//! Levels halve the step; level `k` adds the odd multiples of `2^{−k}` to the
//! node set. Node tables are built once per level and shared read-only.
//! Sums run in a fixed order through a compensated accumulator, so results
//! are bit-reproducible regardless of thread scheduling.

use crate::numeric::{is_finite, CVal, CompensatedSum};
use crate::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

/// Hard cap on node-doubling depth.
pub const MAX_LEVEL_CAP: usize = 12;

/// Levels evaluated before the first convergence test.
const MIN_LEVEL: usize = 2;

/// Smallest distance from an endpoint of (0, 1) at which tanh-sinh samples.
/// Keeps `(distance)^{-2}` finite for every power the evaluators form.
const ENDPOINT_FLOOR: f64 = 1e-150;

/// Exp-sinh offsets `(x − a)/a` span `[OFFSET_MIN, OFFSET_MAX]`.
const OFFSET_MIN: f64 = 1e-17;
const OFFSET_MAX: f64 = 1e100;

/// A point of (0, 1) carried with its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub x: f64,
    /// `1 − x`, accurate even where `x` rounds to 1.
    pub xc: f64,
}

impl UnitPoint {
    /// Builds a point from `x` alone; the complement inherits the rounding of `x`.
    pub fn new(x: f64) -> Self {
        Self { x, xc: 1.0 - x }
    }

    pub fn is_interior(&self) -> bool {
        self.x > 0.0 && self.xc > 0.0 && self.x < 1.0 + f64::EPSILON
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub max_level: usize,
    /// Where (0, ∞) is cut into a tanh-sinh and an exp-sinh piece.
    pub split_point: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_floor: 1e-15,
            max_level: 10,
            split_point: 1.0,
        }
    }
}

impl QuadConfig {
    pub fn new(rel_tol: f64, abs_floor: f64, max_level: usize, split_point: f64) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_floor,
            max_level,
            split_point,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, self.abs_floor, self.max_level, self.split_point)
    }

    pub fn with_max_level(self, max_level: usize) -> Result<Self> {
        Self::new(self.rel_tol, self.abs_floor, max_level, self.split_point)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::Config(detail));
        if !(1e-15..=1e-2).contains(&self.rel_tol) {
            return bad(format!("rel_tol must lie in [1e-15, 1e-2], got {}", self.rel_tol));
        }
        if !(self.abs_floor > 0.0 && self.abs_floor.is_finite()) {
            return bad(format!("abs_floor must be positive, got {}", self.abs_floor));
        }
        if !(3..=MAX_LEVEL_CAP).contains(&self.max_level) {
            return bad(format!(
                "max_level must lie in [3, {MAX_LEVEL_CAP}], got {}",
                self.max_level
            ));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return bad(format!("split_point must be positive, got {}", self.split_point));
        }
        Ok(())
    }

    fn tolerance(&self, value: CVal) -> f64 {
        (self.rel_tol * value.norm()).max(self.abs_floor)
    }
}

/// Result of a quadrature or of a closed-form evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutcome {
    pub value: CVal,
    /// Estimated absolute error.
    pub err_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
    /// Why the outcome is unconverged, when it is.
    pub diagnostic: Option<String>,
}

impl EvalOutcome {
    /// Closed forms carry no quadrature error.
    pub fn exact(value: CVal) -> Self {
        Self {
            value,
            err_estimate: 0.0,
            n_evals: 1,
            converged: true,
            diagnostic: None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct UnitNode {
    pt: UnitPoint,
    weight: f64,
}

#[derive(Debug, Clone, Copy)]
struct TailNode {
    offset: f64,
    weight: f64,
}

fn level_step(level: usize) -> f64 {
    0.5f64.powi(level as i32)
}

/// Abscissae `t` introduced at `level`, in ascending order, within `[lo, hi]`.
fn level_abscissae(level: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let h = level_step(level);
    let (first, stride) = if level == 0 { (0i64, 1i64) } else { (1, 2) };
    let k_lo = (lo / h).ceil() as i64;
    let k_hi = (hi / h).floor() as i64;
    (k_lo..=k_hi)
        .filter(move |k| level == 0 || (k - first).rem_euclid(stride) == 0)
        .map(move |k| k as f64 * h)
}

fn tanh_sinh_node(t: f64) -> UnitNode {
    // x = 1/(1 + e^{−π sinh t}), dx/dt = π cosh t · x · (1 − x)
    let e = (-PI * t.abs().sinh()).exp();
    let big = 1.0 / (1.0 + e);
    let small = e / (1.0 + e);
    let (x, xc) = if t >= 0.0 { (big, small) } else { (small, big) };
    UnitNode {
        pt: UnitPoint { x, xc },
        weight: PI * t.cosh() * big * small,
    }
}

fn tanh_sinh_level(level: usize) -> &'static [UnitNode] {
    static CACHE: [OnceLock<Vec<UnitNode>>; MAX_LEVEL_CAP + 1] =
        [const { OnceLock::new() }; MAX_LEVEL_CAP + 1];
    CACHE[level].get_or_init(|| {
        // endpoint distance ≈ e^{−π sinh t}
        let t_max = ((1.0 / ENDPOINT_FLOOR).ln() / PI).asinh();
        level_abscissae(level, -t_max, t_max)
            .map(tanh_sinh_node)
            .filter(|n| n.pt.x >= ENDPOINT_FLOOR && n.pt.xc >= ENDPOINT_FLOOR)
            .collect()
    })
}

fn exp_sinh_level(level: usize) -> &'static [TailNode] {
    static CACHE: [OnceLock<Vec<TailNode>>; MAX_LEVEL_CAP + 1] =
        [const { OnceLock::new() }; MAX_LEVEL_CAP + 1];
    CACHE[level].get_or_init(|| {
        // offset = e^{π/2 sinh t}
        let t_lo = (OFFSET_MIN.ln() / FRAC_PI_2).asinh();
        let t_hi = (OFFSET_MAX.ln() / FRAC_PI_2).asinh();
        level_abscissae(level, t_lo, t_hi)
            .map(|t| {
                let offset = (FRAC_PI_2 * t.sinh()).exp();
                TailNode {
                    offset,
                    weight: FRAC_PI_2 * t.cosh() * offset,
                }
            })
            .collect()
    })
}

/// Weighted contributions of the nodes added at one level.
#[derive(Default)]
struct LevelSum {
    sum: CompensatedSum,
    /// Σ |f w|, for the rounding floor of the estimate.
    magnitude: f64,
    evals: usize,
    /// Additive error carried in from elsewhere (inner integrals of the 2D rule).
    extra: f64,
}

impl LevelSum {
    #[inline]
    fn add(&mut self, v: CVal, weight: f64) {
        let term = v * weight;
        self.sum.add(term);
        self.magnitude += term.norm();
    }
}

/// Drives node doubling over a family of cached levels.
///
/// The estimate is the level-to-level change plus a rounding floor of
/// `ε·h·Σ|f w|`, plus whatever the level reports as carried-in error.
fn refine<L>(cfg: &QuadConfig, scale: f64, mut eval_level: L) -> Result<EvalOutcome>
where
    L: FnMut(usize) -> Result<LevelSum>,
{
    let mut running = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut n_evals = 0;
    let mut prev: Option<CVal> = None;
    let mut last = EvalOutcome {
        value: CVal::new(0.0, 0.0),
        err_estimate: f64::INFINITY,
        n_evals: 0,
        converged: false,
        diagnostic: None,
    };
    for level in 0..=cfg.max_level {
        let LevelSum {
            sum,
            magnitude: level_magnitude,
            evals,
            extra,
        } = eval_level(level)?;
        running.add(sum.value());
        magnitude += level_magnitude;
        n_evals += evals;
        let h = level_step(level);
        let value = running.value() * (h * scale);
        let diff = prev.map_or(f64::INFINITY, |p| (value - p).norm());
        let rounding = 4.0 * f64::EPSILON * magnitude * (h * scale).abs();
        let err = diff + rounding + extra;
        last = EvalOutcome {
            value,
            err_estimate: err,
            n_evals,
            converged: false,
            diagnostic: None,
        };
        if level >= MIN_LEVEL && err <= cfg.tolerance(value) {
            last.converged = true;
            return Ok(last);
        }
        prev = Some(value);
    }
    last.diagnostic = Some(format!(
        "no convergence by level {} (estimate {:.3e})",
        cfg.max_level, last.err_estimate
    ));
    Ok(last)
}

fn checked(v: CVal, at: &[f64]) -> Result<CVal> {
    if is_finite(v) {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand {
            at: at.to_vec(),
            value: v,
        })
    }
}

/// Integrates `f` over (0, 1) by tanh-sinh.
pub fn quad01<F>(f: F, cfg: &QuadConfig) -> Result<EvalOutcome>
where
    F: Fn(UnitPoint) -> Result<CVal>,
{
    cfg.validate()?;
    refine(cfg, 1.0, |level| {
        let nodes = tanh_sinh_level(level);
        let mut acc = LevelSum {
            evals: nodes.len(),
            ..LevelSum::default()
        };
        for n in nodes {
            let v = checked(f(n.pt)?, &[n.pt.x])?;
            acc.add(v, n.weight);
        }
        Ok(acc)
    })
}

/// Integrates `f` over [a, ∞) by exp-sinh, `x = a(1 + e^{π/2 sinh t})`.
fn quad_tail<F>(f: &F, a: f64, cfg: &QuadConfig) -> Result<EvalOutcome>
where
    F: Fn(f64) -> Result<CVal>,
{
    refine(cfg, a, |level| {
        let nodes = exp_sinh_level(level);
        let mut acc = LevelSum {
            evals: nodes.len(),
            ..LevelSum::default()
        };
        for n in nodes {
            let t = a + a * n.offset;
            let v = checked(f(t)?, &[t])?;
            acc.add(v, n.weight);
        }
        Ok(acc)
    })
}

/// Integrates `f` over (0, ∞), split at `cfg.split_point`.
pub fn quad0inf<F>(f: F, cfg: &QuadConfig) -> Result<EvalOutcome>
where
    F: Fn(f64) -> Result<CVal>,
{
    cfg.validate()?;
    let a = cfg.split_point;
    let head = quad01(|p| f(a * p.x), cfg)?;
    let head_value = head.value * a;
    let tail = quad_tail(&f, a, cfg)?;
    let value = head_value + tail.value;
    let err = head.err_estimate * a + tail.err_estimate;
    let converged = head.converged && tail.converged && err <= cfg.tolerance(value);
    let diagnostic = if converged {
        None
    } else {
        Some(
            head.diagnostic
                .map(|d| format!("(0, {a}]: {d}"))
                .or(tail.diagnostic.map(|d| format!("[{a}, ∞): {d}")))
                .unwrap_or_else(|| format!("combined estimate {err:.3e} above tolerance")),
        )
    };
    Ok(EvalOutcome {
        value,
        err_estimate: err,
        n_evals: head.n_evals + tail.n_evals,
        converged,
        diagnostic,
    })
}

/// Iterated integral over (0, 1)²: inner over `y` at `rel_tol/10`, outer over `x`.
///
/// Inner errors are propagated through the outer weights and added to the
/// outer level-to-level estimate.
pub fn quad_square<F>(f: F, cfg: &QuadConfig) -> Result<EvalOutcome>
where
    F: Fn(UnitPoint, UnitPoint) -> Result<CVal> + Sync,
{
    cfg.validate()?;
    let inner_cfg = QuadConfig {
        rel_tol: (cfg.rel_tol / 10.0).max(1e-15),
        ..*cfg
    };
    let mut inner_err = CompensatedSum::new();
    let mut unresolved = Vec::new();
    let mut final_h = 1.0;
    let outcome = refine(cfg, 1.0, |level| {
        let nodes = tanh_sinh_level(level);
        let h = level_step(level);
        final_h = h;
        let inner: Vec<Result<EvalOutcome>> = nodes
            .par_iter()
            .map(|n| quad01(|y| f(n.pt, y), &inner_cfg))
            .collect();
        let mut acc = LevelSum::default();
        for (n, res) in nodes.iter().zip(inner) {
            let o = res?;
            acc.evals += o.n_evals;
            if !o.converged {
                unresolved.push((n.pt, n.weight * (o.value.norm() + o.err_estimate)));
            }
            acc.add(o.value, n.weight);
            inner_err.add_real(o.err_estimate * n.weight);
        }
        // inner errors of every node so far, weighted at the current step
        acc.extra = inner_err.value().re * h;
        Ok(acc)
    })?;
    // An unconverged inner integral only matters if its whole weighted
    // contribution could move the outer sum by a visible fraction of the
    // tolerance; nodes near the floor of the tanh-sinh range never do.
    let material = cfg.tolerance(outcome.value) * 1e-3;
    let offending = unresolved
        .iter()
        .find(|(_, weighted)| weighted * final_h > material);
    match offending {
        Some((pt, _)) => Ok(EvalOutcome {
            converged: false,
            diagnostic: Some(format!(
                "inner integral unconverged at outer node x = {:e} (1 − x = {:e})",
                pt.x, pt.xc
            )),
            ..outcome
        }),
        None => Ok(outcome),
    }
}
