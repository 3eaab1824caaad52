//! Complex Gamma and Riemann zeta.
//!
//! `gamma_c` is a g = 7 Lanczos sum with reflection across `Re(s) = 1/2`.
//! `zeta_c` offers two methods: Borwein's accelerated alternating series for
//! the Dirichlet eta function, and Euler–Maclaurin summation with a Bernoulli
//! tail through B₁₂. The Euler–Maclaurin route also yields `zeta_minus_pole`,
//! the entire function ζ(s) − 1/(s − 1), with the pole removed analytically.

use crate::numeric::{c64, cpow_pos, is_finite, phi1, sin_pi, CVal, CompensatedSum};
use crate::{Error, Result};
use std::f64::consts::{LN_2, PI};

const LANCZOS_G: f64 = 7.0;
// published coefficients, kept digit-for-digit
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `B_{2k}/(2k)!` for k = 1..=6.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// Minimum number of direct terms in the Euler–Maclaurin sum.
pub const EULER_MACLAURIN_MIN_TERMS: usize = 20;

/// `zeta_c` refuses arguments this close to the pole.
pub const ZETA_POLE_EXCLUSION: f64 = 1e-3;

/// Alternating mode refuses arguments this close to a zero of `1 − 2^{1−s}`.
pub const ETA_ZERO_EXCLUSION: f64 = 1e-8;

const MAX_ALTERNATING_DEPTH: usize = 160;

/// Laurent coefficients of ζ at s = 1:
/// ζ(s) = 1/(s−1) + Σ (−1)ⁿ γₙ (s−1)ⁿ / n!.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesTable {
    pub gamma0: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

pub const STIELTJES: StieltjesTable = StieltjesTable {
    gamma0: 0.577_215_664_901_532_9,
    gamma1: -0.072_815_845_483_676_72,
    gamma2: -0.009_690_363_192_872_318,
    gamma3: 0.002_053_834_420_303_346,
};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = STIELTJES.gamma0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZetaMethod {
    /// Borwein's accelerated alternating series, ζ = η/(1 − 2^{1−s}).
    AlternatingAccelerated,
    EulerMaclaurin,
}

/// Method plus its size parameter: acceleration depth for the alternating
/// series, number of direct terms for Euler–Maclaurin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZetaMode {
    method: ZetaMethod,
    terms: usize,
}

impl ZetaMode {
    pub fn new(method: ZetaMethod, terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::Domain {
                op: "ZetaMode::new",
                detail: "terms must be at least 1".into(),
            });
        }
        Ok(Self { method, terms })
    }

    pub fn method(&self) -> ZetaMethod {
        self.method
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    /// Alternating mode with the smallest depth whose truncation bound,
    /// `3(1 + 2|t|) e^{π|t|/2} (3 + √8)^{−n}`, is below `tol`.
    pub fn alternating_for(s: CVal, tol: f64) -> Self {
        let t = s.im.abs();
        let tol = tol.clamp(1e-18, 1e-2);
        let num = (1.0 / tol).ln() + (3.0 * (1.0 + 2.0 * t)).ln() + 0.5 * PI * t;
        let n = (num / (3.0 + 8f64.sqrt()).ln()).ceil() as usize;
        Self {
            method: ZetaMethod::AlternatingAccelerated,
            terms: n.clamp(1, MAX_ALTERNATING_DEPTH),
        }
    }

    /// Euler–Maclaurin with enough direct terms for full precision at `s`.
    pub fn euler_maclaurin_for(s: CVal) -> Self {
        Self {
            method: ZetaMethod::EulerMaclaurin,
            terms: euler_maclaurin_terms(s),
        }
    }

    /// Alternating mode unless `s` sits near a zero of `1 − 2^{1−s}`,
    /// where the division amplifies rounding; Euler–Maclaurin there.
    pub fn auto(s: CVal) -> Self {
        if (1.0 - cpow_two(1.0 - s)).norm() < 0.05 {
            Self::euler_maclaurin_for(s)
        } else {
            Self::alternating_for(s, 1e-17)
        }
    }
}

fn euler_maclaurin_terms(s: CVal) -> usize {
    EULER_MACLAURIN_MIN_TERMS + s.im.abs().ceil() as usize
}

fn cpow_two(w: CVal) -> CVal {
    cpow_pos(2.0, w).expect("base 2 is positive")
}

fn check_finite(op: &'static str, s: CVal) -> Result<()> {
    if is_finite(s) {
        Ok(())
    } else {
        Err(Error::Domain {
            op,
            detail: format!("argument must be finite, got {s}"),
        })
    }
}

/// Complex Gamma function.
pub fn gamma_c(s: CVal) -> Result<CVal> {
    check_finite("gamma_c", s)?;
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::Pole {
            op: "gamma_c",
            at: s.re as i64,
        });
    }
    if s.re < 0.5 {
        // Γ(s) Γ(1−s) = π / sin(πs)
        let g = lanczos(1.0 - s);
        return Ok(PI / (sin_pi(s) * g));
    }
    Ok(lanczos(s))
}

fn lanczos(s: CVal) -> CVal {
    let z = s - 1.0;
    let mut acc = CompensatedSum::new();
    acc.add_real(LANCZOS_COEFFS[0]);
    for (i, &p) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc.add(p / (z + i as f64));
    }
    let t = z + LANCZOS_G + 0.5;
    let log_pow = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_pow.exp() * acc.value()
}

/// Riemann zeta on `Re(s) > −1`, `s` away from the pole.
pub fn zeta_c(s: CVal, mode: ZetaMode) -> Result<CVal> {
    check_finite("zeta_c", s)?;
    if s == c64(1.0, 0.0) {
        return Err(Error::Pole { op: "zeta_c", at: 1 });
    }
    if (s - 1.0).norm() < ZETA_POLE_EXCLUSION {
        return Err(Error::Conditioning {
            op: "zeta_c",
            detail: format!(
                "|s − 1| < {ZETA_POLE_EXCLUSION}; use zeta_minus_pole near the pole"
            ),
        });
    }
    if s.re <= -1.0 {
        return Err(Error::Domain {
            op: "zeta_c",
            detail: format!("Re(s) must exceed −1, got {s}"),
        });
    }
    match mode.method {
        ZetaMethod::AlternatingAccelerated => {
            let denom = 1.0 - cpow_two(1.0 - s);
            if near_eta_zero(s) {
                return Err(Error::ModeUnsuitable {
                    s,
                    detail: "1 − 2^{1−s} vanishes here; use the Euler–Maclaurin method".into(),
                });
            }
            Ok(eta_borwein(s, mode.terms) / denom)
        }
        ZetaMethod::EulerMaclaurin => {
            Ok(zeta_minus_pole_with(s, mode.terms) + 1.0 / (s - 1.0))
        }
    }
}

/// Zeta with the method picked by [`ZetaMode::auto`].
pub fn zeta(s: CVal) -> Result<CVal> {
    zeta_c(s, ZetaMode::auto(s))
}

fn near_eta_zero(s: CVal) -> bool {
    // zeros at s = 1 + 2πik/ln 2, k ≠ 0
    let period = 2.0 * PI / LN_2;
    let k = (s.im / period).round();
    if k == 0.0 {
        return false;
    }
    (s - c64(1.0, k * period)).norm() < ETA_ZERO_EXCLUSION
}

fn eta_borwein(s: CVal, n: usize) -> CVal {
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = term;
    d.push(acc);
    for i in 0..n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = CompensatedSum::new();
    for (k, &dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let p = cpow_pos((k + 1) as f64, -s).expect("positive base");
        sum.add(p * (sign * (dk - dn)));
    }
    -sum.value() / dn
}

/// ζ(s) − 1/(s − 1), finite at s = 1 where it equals γ.
pub fn zeta_minus_pole(s: CVal) -> Result<CVal> {
    check_finite("zeta_minus_pole", s)?;
    if s.re <= 0.0 {
        return Err(Error::Domain {
            op: "zeta_minus_pole",
            detail: format!("Re(s) must be positive, got {s}"),
        });
    }
    Ok(zeta_minus_pole_with(s, euler_maclaurin_terms(s)))
}

fn zeta_minus_pole_with(s: CVal, n_terms: usize) -> CVal {
    let n = n_terms as f64;
    let ln_n = n.ln();
    let mut acc = CompensatedSum::new();
    for k in (1..n_terms).rev() {
        acc.add(cpow_pos(k as f64, -s).expect("positive base"));
    }
    // (N^{1−s} − 1)/(s − 1) = −ln N · φ₁((1 − s) ln N)
    acc.add(-ln_n * phi1((1.0 - s) * ln_n));
    let n_pow = cpow_pos(n, -s).expect("positive base");
    acc.add(0.5 * n_pow);
    // Bernoulli tail: B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut n_scale = n_pow / n;
    let inv_n2 = 1.0 / (n * n);
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let j = (2 * k) as f64;
            rising *= (s + (j - 1.0)) * (s + j);
            n_scale *= inv_n2;
        }
        acc.add(b * rising * n_scale);
    }
    acc.value()
}
