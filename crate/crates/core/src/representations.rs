//! The six equivalent forms of the integral, from the square double integral
//! (A) to the closed form (F).
//!
//! | tag | form |
//! |-----|------|
//! | A | ∫₀¹∫₀¹ (−log xy)^z (1−x)/(1−xy) dx dy |
//! | B | ∫₀¹∫ᵤ¹ (−log u)^z/(1−u) · (1−x)/x dx du |
//! | C | ∫₀¹ (−log u)^z (−log u + u − 1)/(1−u) du |
//! | D | ∫₀^∞ [t^{z+1}/(e^t−1) − t^z e^{−t}] dt |
//! | E | Γ(z+2)ζ(z+2) − Γ(z+1) |
//! | F | Γ(z+2)[ζ(z+2) − 1/(z+1)] |
//!
//! Every integrand takes its abscissae as [`UnitPoint`]s so that factors like
//! `1 − x` and `−log x` stay accurate right up to the endpoints.

use crate::numeric::{c64, cpow_pos, neg_log_split, CVal};
use crate::quadrature::UnitPoint;
use crate::special::{gamma_c, zeta, zeta_minus_pole};
use crate::{Error, Result};
use std::fmt;

/// The u-integrand's bracket switches to its series below this `1 − u`.
pub const U_SERIES_THRESHOLD: f64 = 0.1;

/// The t-integrand's bracket switches to its series below this `t`.
pub const T_SERIES_THRESHOLD: f64 = 0.5;

/// `mellin_closed` refuses `|z + 1|` below this.
pub const MELLIN_POLE_EXCLUSION: f64 = 1e-3;

/// Beyond this `t` the t-integrand is formed in log space.
const T_LOG_SPACE: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Representation {
    /// Square double integral.
    A,
    /// Nested (u, x) integral over the triangle u < x.
    B,
    /// Single integral in u.
    C,
    /// Single integral in t over (0, ∞).
    D,
    /// Two-term Mellin closed form.
    E,
    /// Final closed form.
    F,
}

impl Representation {
    pub const ALL: [Representation; 6] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F];

    pub fn tag(self) -> &'static str {
        match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
            Self::F => "F",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.tag().eq_ignore_ascii_case(tag))
    }

    /// Lower bound on `Re(z)` (exclusive) where the form is evaluated.
    pub fn min_re(self) -> f64 {
        match self {
            Self::B | Self::E => -1.0,
            _ => -2.0,
        }
    }

    pub fn region(self) -> &'static str {
        match self {
            Self::B | Self::E => "Re(z) > -1",
            _ => "Re(z) > -2",
        }
    }

    pub fn is_closed_form(self) -> bool {
        matches!(self, Self::E | Self::F)
    }

    pub fn is_two_dimensional(self) -> bool {
        matches!(self, Self::A | Self::B)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn require_open_unit(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            detail: format!("{name} must lie in (0, 1), got {v}"),
        })
    }
}

fn require_interior(op: &'static str, p: UnitPoint) -> Result<()> {
    if p.is_interior() {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            detail: format!("point {p:?} is not interior to (0, 1)"),
        })
    }
}

/// `(−log xy)^z (1−x)/(1−xy)` on the open unit square.
pub fn integrand_square(x: f64, y: f64, z: CVal) -> Result<CVal> {
    require_open_unit("integrand_square", "x", x)?;
    require_open_unit("integrand_square", "y", y)?;
    integrand_square_at(UnitPoint::new(x), UnitPoint::new(y), z)
}

pub fn integrand_square_at(x: UnitPoint, y: UnitPoint, z: CVal) -> Result<CVal> {
    require_interior("integrand_square", x)?;
    require_interior("integrand_square", y)?;
    let log_xy = neg_log_split(x.x, x.xc) + neg_log_split(y.x, y.xc);
    // 1 − xy = (1 − x) + x(1 − y)
    let denom = x.xc + x.x * y.xc;
    Ok(cpow_pos(log_xy, z)? * (x.xc / denom))
}

/// The nested integrand `(−log u)^z/(1−u) · (1−x)/x` on `0 < u < x < 1`.
pub fn integrand_nested(u: f64, x: f64, z: CVal) -> Result<CVal> {
    require_open_unit("integrand_nested", "u", u)?;
    require_open_unit("integrand_nested", "x", x)?;
    if !(u < x) {
        return Err(Error::Domain {
            op: "integrand_nested",
            detail: format!("need u < x, got u = {u}, x = {x}"),
        });
    }
    let lu = neg_log_split(u, 1.0 - u);
    Ok(cpow_pos(lu, z)? * ((1.0 - x) / ((1.0 - u) * x)))
}

/// The nested integrand pulled back to the unit square by `x = u + (1 − u)s`,
/// Jacobian included.
pub fn integrand_nested_at(u: UnitPoint, s: UnitPoint, z: CVal) -> Result<CVal> {
    require_interior("integrand_nested", u)?;
    require_interior("integrand_nested", s)?;
    let lu = neg_log_split(u.x, u.xc);
    let x = u.x + u.xc * s.x;
    // (1 − x) = (1 − u)(1 − s); the 1/(1 − u) cancels against the Jacobian (1 − u)
    Ok(cpow_pos(lu, z)? * (u.xc * s.xc / x))
}

/// `(−log u)^z (−log u + u − 1)/(1 − u)`.
pub fn integrand_u(u: f64, z: CVal) -> Result<CVal> {
    require_open_unit("integrand_u", "u", u)?;
    integrand_u_at(UnitPoint::new(u), z)
}

pub fn integrand_u_at(u: UnitPoint, z: CVal) -> Result<CVal> {
    require_interior("integrand_u", u)?;
    let lu = neg_log_split(u.x, u.xc);
    Ok(cpow_pos(lu, z)? * u_bracket(lu, u.xc))
}

/// `(−log u + u − 1)/(1 − u)` with `w = 1 − u` and `lu = −log u`.
fn u_bracket(lu: f64, w: f64) -> f64 {
    if w < U_SERIES_THRESHOLD {
        u_bracket_series(w)
    } else {
        (lu - w) / w
    }
}

fn u_bracket_series(w: f64) -> f64 {
    // (−log(1−w) − w)/w = Σ_{k≥2} w^{k−1}/k
    let mut sum = 0.0;
    let mut pow = w;
    let mut k = 2.0;
    loop {
        let term = pow / k;
        sum += term;
        if term <= 1e-17 * sum {
            return sum;
        }
        pow *= w;
        k += 1.0;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TForm {
    /// `t^z (t + e^{−t} − 1) e^{−t} / (1 − e^{−t})`
    Raw,
    /// `t^{z+1}/(e^t − 1) − t^z e^{−t}`
    Simplified,
}

/// Coefficients of `t/(e^t − 1) − e^{−t} = Σ_{n≥1} c_n t^n` through t¹⁶:
/// `c_1 = 1/2`, odd `n ≥ 3` give `1/n!`, even `n` give `(B_n − 1)/n!`.
const T_BRACKET_SERIES: [f64; 16] = [
    1.0 / 2.0,
    -5.0 / 12.0,
    1.0 / 6.0,
    -31.0 / 720.0,
    1.0 / 120.0,
    -41.0 / 30_240.0,
    1.0 / 5_040.0,
    -31.0 / 1_209_600.0,
    1.0 / 362_880.0,
    -61.0 / 239_500_800.0,
    1.0 / 39_916_800.0,
    -3_421.0 / 1_307_674_368_000.0,
    1.0 / 6_227_020_800.0,
    1.0 / 523_069_747_200.0,
    1.0 / 1_307_674_368_000.0,
    -4_127.0 / 10_670_622_842_880_000.0,
];

fn t_bracket_series(t: f64) -> f64 {
    let mut acc = 0.0;
    for &c in T_BRACKET_SERIES.iter().rev() {
        acc = acc * t + c;
    }
    acc * t
}

/// The Mellin-side integrand on (0, ∞).
pub fn integrand_t(t: f64, z: CVal, form: TForm) -> Result<CVal> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            op: "integrand_t",
            detail: format!("t must be positive and finite, got {t}"),
        });
    }
    match form {
        TForm::Simplified if t < T_SERIES_THRESHOLD => Ok(cpow_pos(t, z)? * t_bracket_series(t)),
        TForm::Simplified if t > T_LOG_SPACE => {
            let lt = t.ln();
            let first = ((z + 1.0) * lt - t - (-(-t).exp()).ln_1p()).exp();
            let second = (z * lt - t).exp();
            Ok(first - second)
        }
        TForm::Simplified => {
            Ok(cpow_pos(t, z + 1.0)? / t.exp_m1() - cpow_pos(t, z)? * (-t).exp())
        }
        TForm::Raw => {
            let em1 = (-t).exp_m1();
            let ratio = (t + em1) / -em1;
            let power_decay = if t > T_LOG_SPACE {
                (z * t.ln() - t).exp()
            } else {
                cpow_pos(t, z)? * (-t).exp()
            };
            Ok(power_decay * ratio)
        }
    }
}

fn require_re_above(op: &'static str, z: CVal, bound: f64) -> Result<()> {
    if z.re > bound && z.im.is_finite() && z.re.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            detail: format!("Re(z) must exceed {bound}, got {z}"),
        })
    }
}

/// `Γ(z+2)[ζ(z+2) − 1/(z+1)]`, evaluated as `Γ(z+2)·(ζ(s) − 1/(s−1))` at
/// `s = z + 2`, so `z = −1` needs no special handling.
pub fn closed_form(z: CVal) -> Result<CVal> {
    require_re_above("closed_form", z, -2.0)?;
    let s = z + 2.0;
    Ok(gamma_c(s)? * zeta_minus_pole(s)?)
}

/// `Γ(z+2)ζ(z+2) − Γ(z+1)`.
pub fn mellin_closed(z: CVal) -> Result<CVal> {
    require_re_above("mellin_closed", z, -1.0)?;
    if (z + 1.0).norm() < MELLIN_POLE_EXCLUSION {
        return Err(Error::Conditioning {
            op: "mellin_closed",
            detail: format!(
                "|z + 1| < {MELLIN_POLE_EXCLUSION}: both terms have poles at z = -1; use closed_form"
            ),
        });
    }
    let s = z + 2.0;
    Ok(gamma_c(s)? * zeta(s)? - gamma_c(z + 1.0)?)
}

/// Real scalar as a `CVal`.
#[inline]
pub fn real(x: f64) -> CVal {
    c64(x, 0.0)
}
