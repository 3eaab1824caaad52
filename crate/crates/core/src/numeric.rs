//! Cancellation-safe scalar kernels shared by the evaluators and the quadrature engine.

use crate::{Error, Result};
use num_complex::Complex64;

/// Complex scalar carried through every evaluator.
pub type CVal = Complex64;

/// Below this magnitude `phi1` uses its Taylor series.
pub const PHI1_SERIES_THRESHOLD: f64 = 1e-2;

/// Shorthand for a complex literal.
#[inline]
pub fn c64(re: f64, im: f64) -> CVal {
    CVal::new(re, im)
}

/// True when both components are finite.
#[inline]
pub fn is_finite(v: CVal) -> bool {
    v.re.is_finite() && v.im.is_finite()
}

/// `b^z` for a strictly positive real base, principal branch.
///
/// The modulus is taken from `powf` and the phase from `Im(z)·ln b`, so a
/// purely real exponent never picks up a spurious imaginary part and small
/// nonnegative integer exponents go through repeated multiplication.
pub fn cpow_pos(b: f64, z: CVal) -> Result<CVal> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::Domain {
            op: "cpow_pos",
            detail: format!("base must be positive and finite, got {b}"),
        });
    }
    if z.im == 0.0 {
        if z.re == 0.0 {
            return Ok(c64(1.0, 0.0));
        }
        if z.re >= 0.0 && z.re <= 64.0 && z.re.fract() == 0.0 {
            return Ok(c64(b.powi(z.re as i32), 0.0));
        }
        return Ok(c64(b.powf(z.re), 0.0));
    }
    let modulus = b.powf(z.re);
    let phase = z.im * b.ln();
    let (s, c) = phase.sin_cos();
    Ok(c64(modulus * c, modulus * s))
}

/// `(e^w − 1)/w` with the removable singularity at `w = 0` filled in.
pub fn phi1(w: CVal) -> CVal {
    if w.norm() < PHI1_SERIES_THRESHOLD {
        phi1_series(w)
    } else {
        phi1_direct(w)
    }
}

fn phi1_series(w: CVal) -> CVal {
    // 1 + w/2 + w²/6 + … + w⁶/5040, Horner form
    const C: [f64; 7] = [
        1.0,
        1.0 / 2.0,
        1.0 / 6.0,
        1.0 / 24.0,
        1.0 / 120.0,
        1.0 / 720.0,
        1.0 / 5040.0,
    ];
    let mut acc = c64(C[6], 0.0);
    for &k in C[..6].iter().rev() {
        acc = acc * w + k;
    }
    acc
}

fn phi1_direct(w: CVal) -> CVal {
    if w.im == 0.0 {
        return c64(w.re.exp_m1() / w.re, 0.0);
    }
    expm1_c(w) / w
}

/// Complex `e^w − 1` without cancellation in the real part for small `|w|`.
pub fn expm1_c(w: CVal) -> CVal {
    // e^{a+ib} − 1 = (e^a − 1)cos b + (cos b − 1) + i e^a sin b
    let (s, c) = w.im.sin_cos();
    let em1 = w.re.exp_m1();
    // cos b − 1 = −2 sin²(b/2)
    let half = (0.5 * w.im).sin();
    let cm1 = -2.0 * half * half;
    c64(em1 * c + cm1, (em1 + 1.0) * s)
}

/// `−ln u` on `(0, 1]`, accurate as `u → 1`.
pub fn log1p_neg(u: f64) -> Result<f64> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::Domain {
            op: "log1p_neg",
            detail: format!("u must lie in (0, 1], got {u}"),
        });
    }
    Ok(neg_log_split(u, 1.0 - u))
}

/// `−ln u` given both `u` and its complement `w = 1 − u`.
///
/// Uses whichever of the two carries full precision.
#[inline]
pub(crate) fn neg_log_split(u: f64, w: f64) -> f64 {
    if w < 0.5 {
        -(-w).ln_1p()
    } else {
        -u.ln()
    }
}

/// `sin(π s)` with the real part reduced modulo 2 before scaling.
pub fn sin_pi(s: CVal) -> CVal {
    let x = s.re - 2.0 * (0.5 * s.re).round();
    let (sx, cx) = sin_cos_pi_real(x);
    let py = std::f64::consts::PI * s.im;
    c64(sx * py.cosh(), cx * py.sinh())
}

fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    // x ∈ [−1, 1]; exact zeros at integers
    if x == 0.0 || x.abs() == 1.0 {
        return (0.0, if x == 0.0 { 1.0 } else { -1.0 });
    }
    if x.abs() == 0.5 {
        return (x.signum(), 0.0);
    }
    (std::f64::consts::PI * x).sin_cos()
}

/// Neumaier compensated accumulator over complex terms.
///
/// Summation order is the caller's order, so results are reproducible bit
/// for bit given the same sequence of terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: CVal,
    comp: CVal,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: CVal) {
        self.sum.re = neumaier_step(self.sum.re, &mut self.comp.re, v.re);
        self.sum.im = neumaier_step(self.sum.im, &mut self.comp.im, v.im);
    }

    #[inline]
    pub fn add_real(&mut self, v: f64) {
        self.sum.re = neumaier_step(self.sum.re, &mut self.comp.re, v);
    }

    pub fn value(&self) -> CVal {
        self.sum + self.comp
    }
}

#[inline]
fn neumaier_step(sum: f64, comp: &mut f64, v: f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}

impl Extend<CVal> for CompensatedSum {
    fn extend<I: IntoIterator<Item = CVal>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<CVal> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = CVal>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Relative distance `|a − b| / |b|`, falling back to absolute when `b = 0`.
pub fn rel_diff(a: CVal, b: CVal) -> f64 {
    let d = (a - b).norm();
    let m = b.norm();
    if m == 0.0 {
        d
    } else {
        d / m
    }
}
