//! Modular equations, multipliers and the evaluation of `E2` at the CM point
//! `tau0 = 1/2 + (3/10) sqrt(-5)`.

mod chain;
mod equations;
mod inversion;
mod second_kind;
mod singular;

use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

use crate::complex::ComplexExt;
use crate::precision::{PrecisionContext, PrecisionError};
use crate::scalar::Real;
use crate::series::SeriesError;
use crate::special::{modulus_k, QuadraticIrrational, SpecialError, UpperHalfPoint};
use crate::wz::WzError;

pub use chain::{
    e2_tau0_chain, relative_poly_residual, sun_reduction, E2Chain, QSqrt5, SunReduction, S1_OVER_52_ALPHA_MINPOLY, S2_MINPOLY,
};
pub use equations::{
    dbeta_dalpha, e2_inversion_residual, fg_e2_residual, g_from_beta, modular_eq2, modular_eq3_residual,
    modular_eq5_residual, multiplier5, BetaFromAlpha, Eq5Branch, Multiplier5,
};
pub use inversion::{normalize_gamma2, tau_from_modulus};
pub use second_kind::{r_p, r_p_with};
pub use singular::{
    k10_tau0_radical, k5_radical, singular_value, verify_radicals, xy_radicals, SingularValueRecord, XYRadicals,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("unsupported degree {0}")]
    UnsupportedDegree(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vanishing coefficient in `{0}`")]
    Vanishing(&'static str),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Wz(#[from] WzError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Precision(#[from] PrecisionError),
}

/// Recorded choice of roots for a multi-valued display: `choices[i]` is the
/// power of the primitive root of unity multiplying the principal value of
/// the `i`-th radical.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchCertificate {
    pub display: String,
    pub radicals: Vec<String>,
    pub choices: Vec<u32>,
    /// residual of the chosen combination, as `log10`
    pub log10_residual: f64,
}

/// `alpha = k^2(tau)`, `beta = k^2(p tau)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaBeta<R: Real> {
    pub alpha: Complex<R>,
    pub beta: Complex<R>,
    pub p: u32,
}

impl<R: Real> AlphaBeta<R> {
    pub fn new(alpha: Complex<R>, beta: Complex<R>, p: u32) -> Self {
        AlphaBeta { alpha, beta, p }
    }

    pub fn from_tau(tau: &UpperHalfPoint<R>, p: u32, ctx: &PrecisionContext) -> Result<Self, ModularError> {
        let k = modulus_k(tau, ctx)?.approx;
        let l = modulus_k(&tau.scaled(p as i64, ctx)?, ctx)?.approx;
        Ok(AlphaBeta { alpha: k.clone() * k, beta: l.clone() * l, p })
    }
}

/// `1/2 + (3/10) sqrt(-5)`.
pub fn tau0() -> QuadraticIrrational {
    use crate::special::quadratic::rational;
    QuadraticIrrational::from_parts(rational(1, 2), rational(3, 10), rational(5, 1)).expect("valid point")
}

/// `exp(2 pi i j / n)`.
pub(crate) fn root_of_unity<R: Real>(j: u32, n: u32, ctx: &PrecisionContext) -> Complex<R> {
    let j = j % n;
    // exact values at multiples of a quarter turn
    if (4 * j).is_multiple_of(n) {
        return match 4 * j / n {
            0 => ctx.cone(),
            1 => ctx.ci(),
            2 => -ctx.cone::<R>(),
            _ => -ctx.ci::<R>(),
        };
    }
    let angle = ctx.pi::<R>() * ctx.int::<R>(2 * j as i64) / ctx.int::<R>(n as i64);
    Complex::new(angle.cos(), angle.sin())
}

/// Residual paired with a label.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedResidual<R: Real> {
    pub name: String,
    pub residual: R,
}

impl<R: Real> NamedResidual<R> {
    pub fn new(name: impl Into<String>, residual: R) -> Self {
        NamedResidual { name: name.into(), residual }
    }

    pub fn between(name: impl Into<String>, a: &Complex<R>, b: &Complex<R>) -> Self {
        NamedResidual::new(name, (a.clone() - b).modulus())
    }
}
