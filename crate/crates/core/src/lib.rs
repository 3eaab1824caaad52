//! Numerical cross-checks of the identity
//!
//! ```text
//! ∫₀¹∫₀¹ (−log xy)^z (1 − x)/(1 − xy) dx dy = Γ(z+2) [ζ(z+2) − 1/(z+1)],   Re z > −2,
//! ```
//!
//! through six equivalent forms, from the singular double integral down to
//! the closed form, plus two independent routes to the Euler–Mascheroni
//! constant at `z = −1`.
//!
//! Module map:
//! * [`numeric`]: complex scalar kernels (`cpow_pos`, `phi1`, `log1p_neg`, compensated sums)
//! * [`special`]: complex Γ, ζ and the pole-subtracted ζ
//! * [`representations`]: integrands and closed forms
//! * [`quadrature`]: tanh-sinh / exp-sinh engine
//! * [`verifier`]: per-`z` cross-check reports and γ extraction

// `!(x > a)` is used deliberately so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod numeric;
pub mod quadrature;
pub mod representations;
pub mod special;
pub mod verifier;

pub use numeric::{c64, CVal};
pub use quadrature::{EvalOutcome, QuadConfig, UnitPoint};
pub use representations::Representation;
pub use verifier::{RepResult, ReportRow, VerificationReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: pole at {at}")]
    Pole { op: &'static str, at: i64 },

    #[error("zeta at {s}: {detail}")]
    ModeUnsuitable { s: CVal, detail: String },

    #[error("{op}: ill-conditioned: {detail}")]
    Conditioning { op: &'static str, detail: String },

    #[error("representation {rep} requires {region}, got z = {z}")]
    Region {
        rep: Representation,
        region: &'static str,
        z: CVal,
    },

    #[error("integrand returned {value} at {at:?}")]
    NonFiniteIntegrand { at: Vec<f64>, value: CVal },

    #[error("invalid quadrature configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
