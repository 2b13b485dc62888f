//! Recognition of high-precision constants as algebraic numbers by lattice
//! reduction, and certification against known minimal polynomials.

mod intpoly;
mod lll;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexExt;
use crate::precision::{BoundedValue, PrecisionContext, Verdict};
use crate::scalar::Real;

pub use intpoly::{poly_residual, IntPolynomial};
pub use lll::{lll_reduce, DELTA};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RecognitionError {
    #[error("value known to 10^{have:.1} but the budget needs 10^-{needed}")]
    InsufficientPrecision { needed: u32, have: f64 },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("lattice reduction exceeded {0} iterations")]
    NonTermination(usize),
    #[error("lattice basis became degenerate")]
    Degenerate,
    #[error("non-finite value during reduction")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecognitionBudget {
    pub max_degree: usize,
    pub max_coeff_digits: usize,
    /// orders of magnitude by which a relation must beat the lattice background
    pub confidence_margin: f64,
}

impl RecognitionBudget {
    pub fn new(max_degree: usize, max_coeff_digits: usize, confidence_margin: f64) -> Result<Self, RecognitionError> {
        if max_degree < 1 {
            return Err(RecognitionError::InvalidBudget("max_degree must be at least 1".into()));
        }
        if confidence_margin <= 10.0 {
            return Err(RecognitionError::InvalidBudget("confidence_margin must exceed 10".into()));
        }
        Ok(RecognitionBudget { max_degree, max_coeff_digits, confidence_margin })
    }

    /// Decimal digits the input must carry.
    pub fn required_digits(&self) -> u32 {
        (self.max_degree * self.max_coeff_digits) as u32 + self.confidence_margin.ceil() as u32
    }
}

/// Recognized polynomial with its acceptance data.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recognition {
    pub poly: IntPolynomial,
    /// `log10 |b2| - log10 |b1|` in the reduced basis
    pub gap: f64,
    pub log10_residual: f64,
    /// no relation of lower degree passed the gap test
    pub minimal_within_degree: usize,
    pub has_rational_root: bool,
}

pub const MAX_LLL_ITERATIONS: usize = 2_000_000;

fn log10_norm(row: &[BigInt], bits: u32) -> f64 {
    use crate::scalar::BigFloat;
    let s = row
        .iter()
        .map(|c| {
            let f = BigFloat::from_bigint(c, bits);
            f.clone() * f
        })
        .fold(BigFloat::from_int(0, bits), |a, b| a + b);
    if s.is_zero() {
        f64::NEG_INFINITY
    } else {
        s.log10_abs() / 2.0
    }
}

/// Correct decimal digits of `v`: `-log10 err`, capped by the working
/// precision.
fn known_digits<R: Real>(v: &BoundedValue<R>, ctx: &PrecisionContext) -> f64 {
    let cap = ctx.digits() as f64 - 5.0;
    if v.err.is_zero() {
        cap
    } else {
        (-v.err.log10_abs()).min(cap)
    }
}

fn try_degree<R: Real>(
    v: &BoundedValue<R>,
    d: usize,
    budget: &RecognitionBudget,
    ctx: &PrecisionContext,
) -> Result<Option<Recognition>, RecognitionError> {
    let bits = ctx.bits();
    let mut powers = vec![ctx.cone::<R>()];
    for i in 1..=d {
        powers.push(powers[i - 1].clone() * &v.approx);
    }
    let top = powers.iter().map(|p| p.modulus().log10_abs()).fold(0.0f64, f64::max).ceil();
    let known = known_digits(v, ctx);
    let scale_digits = known as i32 - 5 - top as i32;
    let n_scale = R::pow10(scale_digits, bits);
    let real = v.approx.im.is_zero() || v.approx.im.log10_abs() < -known + 5.0;
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(d + 1);
    for (i, p) in powers.iter().enumerate() {
        let mut row = vec![BigInt::from(0); d + 1];
        row[i] = BigInt::from(1);
        row.push((p.re.clone() * &n_scale).round_bigint().ok_or(RecognitionError::NonFinite)?);
        if !real {
            row.push((p.im.clone() * &n_scale).round_bigint().ok_or(RecognitionError::NonFinite)?);
        }
        basis.push(row);
    }
    let entry_bits = (scale_digits.max(1) as f64 * std::f64::consts::LOG2_10) as u32;
    lll_reduce::<crate::scalar::BigFloat>(&mut basis, 2 * entry_bits + 128, MAX_LLL_ITERATIONS)?;

    let gap = log10_norm(&basis[1], bits) - log10_norm(&basis[0], bits);
    let Some(poly) = IntPolynomial::new(basis[0][..=d].to_vec()) else {
        return Ok(None);
    };
    if poly.degree() != d || gap < budget.confidence_margin || poly.max_coeff_digits() > budget.max_coeff_digits {
        return Ok(None);
    }
    // independent evaluation of the candidate
    let residual = poly_residual(&poly, v, ctx);
    let log10_residual = if residual.is_zero() { f64::NEG_INFINITY } else { residual.log10_abs() };
    if log10_residual >= poly.norm_f64().log10() - budget.confidence_margin {
        return Ok(None);
    }
    let has_rational_root = d > 1 && !poly.rational_roots(ctx).is_empty();
    Ok(Some(Recognition { poly, gap, log10_residual, minimal_within_degree: d, has_rational_root }))
}

/// Lowest-degree integer polynomial vanishing at `v` within the budget, with
/// acceptance data.
pub fn recognize<R: Real>(
    v: &BoundedValue<R>,
    budget: &RecognitionBudget,
    ctx: &PrecisionContext,
) -> Result<Option<Recognition>, RecognitionError> {
    let needed = budget.required_digits();
    let have = -known_digits(v, ctx);
    if have >= -(needed as f64) {
        return Err(RecognitionError::InsufficientPrecision { needed, have });
    }
    for d in 1..=budget.max_degree {
        if let Some(r) = try_degree(v, d, budget, ctx)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Primitive integer polynomial of least degree `<= budget.max_degree`
/// vanishing at `v`, or `None`.
pub fn recognize_min_poly<R: Real>(
    v: &BoundedValue<R>,
    budget: &RecognitionBudget,
    ctx: &PrecisionContext,
) -> Result<Option<IntPolynomial>, RecognitionError> {
    Ok(recognize(v, budget, ctx)?.map(|r| r.poly))
}

/// Verified when `|v| + err < tol`, refuted when `|v| - err > tol`.
pub fn verify_zero<R: Real>(v: &BoundedValue<R>, tol: &R) -> Verdict {
    let m = v.approx.modulus();
    if m.clone() + &v.err < *tol {
        Verdict::Verified
    } else if m - v.err.clone() > *tol {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    }
}

/// `z` with error bar equal to the context tolerance.
pub fn at_tolerance<R: Real>(z: Complex<R>, ctx: &PrecisionContext) -> BoundedValue<R> {
    BoundedValue::new(z, ctx.tol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn golden_ratio() {
        let ctx = PrecisionContext::new(200).unwrap();
        let phi = (ctx.int::<BigFloat>(1) + ctx.int::<BigFloat>(5).sqrt()) / ctx.int::<BigFloat>(2);
        let v = at_tolerance(Complex::new(phi, BigFloat::with_bits(ctx.bits(), 0.0)), &ctx);
        let budget = RecognitionBudget::new(2, 10, 20.0).unwrap();
        let p = recognize_min_poly(&v, &budget, &ctx).unwrap().unwrap();
        assert_eq!(p, IntPolynomial::from_ascending(&[-1, -1, 1]).unwrap());
    }

    #[test]
    fn gaussian_integer_root() {
        let ctx = PrecisionContext::new(120).unwrap();
        let z = (ctx.cint::<BigFloat>(1, 1)).sqrt_principal();
        let budget = RecognitionBudget::new(4, 3, 15.0).unwrap();
        let p = recognize_min_poly(&at_tolerance(z, &ctx), &budget, &ctx).unwrap().unwrap();
        assert_eq!(p, IntPolynomial::from_ascending(&[2, 0, -2, 0, 1]).unwrap());
    }

    #[test]
    fn budget_guards() {
        assert!(RecognitionBudget::new(0, 3, 20.0).is_err());
        assert!(RecognitionBudget::new(3, 3, 10.0).is_err());
        let ctx = PrecisionContext::new(30).unwrap();
        let v = at_tolerance(ctx.cone::<BigFloat>(), &ctx);
        let budget = RecognitionBudget::new(16, 12, 20.0).unwrap();
        assert!(matches!(recognize(&v, &budget, &ctx), Err(RecognitionError::InsufficientPrecision { .. })));
    }

    #[test]
    fn zero_verdicts() {
        let ctx = PrecisionContext::new(50).unwrap();
        let tol = BigFloat::pow10(-40, ctx.bits());
        let small = BoundedValue::new(Complex::new(ctx.real::<BigFloat>(1e-3), BigFloat::with_bits(ctx.bits(), 0.0)), BigFloat::with_bits(ctx.bits(), 0.0));
        assert_eq!(verify_zero(&small, &tol), Verdict::Refuted);
        assert_eq!(verify_zero(&BoundedValue::exact(ctx.czero::<BigFloat>()), &tol), Verdict::Verified);
    }
}
