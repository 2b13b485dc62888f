//! Working precision, tolerances and tail-bounded summation.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::ComplexExt;
use crate::scalar::Real;

pub const MIN_DIGITS: u32 = 20;
pub const GUARD_BITS: u32 = 32;
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrecisionError {
    #[error("working precision of {0} digits is below the minimum of {MIN_DIGITS}")]
    InsufficientDigits(u32),
    #[error("tolerance {tol} needs at least {needed} working digits, have {have}")]
    ToleranceTooTight { tol: Tolerance, needed: u32, have: u32 },
    #[error("tail ratio {0} is outside [0, 1)")]
    RatioOutOfRange(f64),
    #[error("series did not reach tolerance within {0} terms")]
    TermLimit(usize),
    #[error("non-finite term at index {0}")]
    NonFinite(usize),
}

/// `mantissa * 10^exp10`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub mantissa: f64,
    pub exp10: i32,
}

impl Tolerance {
    pub fn pow10(exp10: i32) -> Self {
        Tolerance { mantissa: 1.0, exp10 }
    }

    pub fn log10(&self) -> f64 {
        self.mantissa.log10() + self.exp10 as f64
    }

    /// Number of decimal digits the tolerance asks for.
    pub fn digits(&self) -> u32 {
        (-self.log10()).ceil().max(0.0) as u32
    }

    pub fn to_real<R: Real>(&self, bits: u32) -> R {
        R::from_f64(self.mantissa, bits) * R::pow10(self.exp10, bits)
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa == 1.0 {
            write!(f, "1e{}", self.exp10)
        } else {
            write!(f, "{}e{}", self.mantissa, self.exp10)
        }
    }
}

impl FromStr for Tolerance {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (m, e) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e),
            None => return Err(format!("expected MANTISSAeEXP, got `{s}`")),
        };
        let mantissa: f64 = if m.is_empty() { 1.0 } else { m.parse().map_err(|_| format!("bad mantissa `{m}`"))? };
        let exp10: i32 = e.parse().map_err(|_| format!("bad exponent `{e}`"))?;
        if !(mantissa > 0.0 && mantissa.is_finite()) {
            return Err(format!("tolerance must be positive, got `{s}`"));
        }
        Ok(Tolerance { mantissa, exp10 })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionContext {
    digits: u32,
    tolerance: Tolerance,
}

impl PrecisionContext {
    /// Context with tolerance `10^-(digits/2)`.
    pub fn new(digits: u32) -> Result<Self, PrecisionError> {
        if digits < MIN_DIGITS {
            return Err(PrecisionError::InsufficientDigits(digits));
        }
        Ok(PrecisionContext { digits, tolerance: Tolerance::pow10(-((digits / 2) as i32)) })
    }

    pub fn with_tolerance(digits: u32, tolerance: Tolerance) -> Result<Self, PrecisionError> {
        if digits < MIN_DIGITS {
            return Err(PrecisionError::InsufficientDigits(digits));
        }
        let needed = 2 * tolerance.digits();
        if digits < needed {
            return Err(PrecisionError::ToleranceTooTight { tol: tolerance, needed, have: digits });
        }
        Ok(PrecisionContext { digits, tolerance })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn tol<R: Real>(&self) -> R {
        self.tolerance.to_real(self.bits())
    }

    pub fn int<R: Real>(&self, v: i64) -> R {
        R::from_int(v, self.bits())
    }

    pub fn real<R: Real>(&self, v: f64) -> R {
        R::from_f64(v, self.bits())
    }

    pub fn pi<R: Real>(&self) -> R {
        R::pi(self.bits())
    }

    pub fn cint<R: Real>(&self, re: i64, im: i64) -> Complex<R> {
        Complex::new(self.int(re), self.int(im))
    }

    pub fn czero<R: Real>(&self) -> Complex<R> {
        self.cint(0, 0)
    }

    pub fn cone<R: Real>(&self) -> Complex<R> {
        self.cint(1, 0)
    }

    pub fn ci<R: Real>(&self) -> Complex<R> {
        self.cint(0, 1)
    }
}

/// Approximation with an absolute bound on the neglected series tail.
/// Rounding error is controlled separately by the working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedValue<R: Real> {
    pub approx: Complex<R>,
    pub err: R,
}

impl<R: Real> BoundedValue<R> {
    pub fn new(approx: Complex<R>, err: R) -> Self {
        BoundedValue { approx, err }
    }

    pub fn exact(approx: Complex<R>) -> Self {
        BoundedValue { approx, err: R::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        BoundedValue::new(self.approx.clone() + &o.approx, self.err.clone() + &o.err)
    }

    pub fn sub(&self, o: &Self) -> Self {
        BoundedValue::new(self.approx.clone() - &o.approx, self.err.clone() + &o.err)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let err = self.approx.modulus() * &o.err + o.approx.modulus() * &self.err + self.err.clone() * &o.err;
        BoundedValue::new(self.approx.clone() * &o.approx, err)
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        BoundedValue::new(self.approx.clone() * c, self.err.clone() * c.modulus())
    }

    /// Quotient; the bound is infinite when the divisor interval reaches zero.
    pub fn div(&self, o: &Self) -> Self {
        let b = o.approx.modulus();
        let gap = b.clone() - &o.err;
        let err = if gap > R::zero() {
            (self.approx.modulus() * &o.err + b.clone() * &self.err) / (b * gap)
        } else {
            R::from_f64(f64::INFINITY, 53)
        };
        BoundedValue::new(self.approx.clone() / &o.approx, err)
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BoundedValue::exact(Complex::new(R::one(), R::zero()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        let root = self.approx.sqrt_principal();
        let m = root.modulus();
        let err = if self.err.is_zero() {
            R::zero()
        } else if m.is_zero() {
            self.err.sqrt()
        } else {
            (self.err.clone() + &self.err) / m
        };
        BoundedValue::new(root, err)
    }

    pub fn magnitude(&self) -> R {
        self.approx.modulus()
    }
}

/// Geometric majorant for a tail: `|t_{k+1}| <= ratio * |t_k|` for
/// `k >= onset_index`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometricTailModel {
    pub ratio: f64,
    pub onset_index: usize,
}

impl GeometricTailModel {
    pub fn new(ratio: f64, onset_index: usize) -> Result<Self, PrecisionError> {
        if !(0.0..1.0).contains(&ratio) || ratio.is_nan() {
            return Err(PrecisionError::RatioOutOfRange(ratio));
        }
        Ok(GeometricTailModel { ratio, onset_index })
    }

    /// Onset defaults to `2 * ceil(1 / (1 - ratio))`.
    pub fn from_ratio(ratio: f64) -> Result<Self, PrecisionError> {
        if !(0.0..1.0).contains(&ratio) || ratio.is_nan() {
            return Err(PrecisionError::RatioOutOfRange(ratio));
        }
        let onset = 2 * (1.0 / (1.0 - ratio)).ceil() as usize;
        Ok(GeometricTailModel { ratio, onset_index: onset })
    }

    /// Model for terms carrying an extra polynomial weight of degree `deg`:
    /// the ratio is inflated to `ratio * ((onset + 1) / onset)^deg`.
    pub fn weighted(self, deg: u32) -> Result<Self, PrecisionError> {
        if deg == 0 {
            return Ok(self);
        }
        let mut onset = self.onset_index.max(1);
        loop {
            let r = self.ratio * ((onset as f64 + 1.0) / onset as f64).powi(deg as i32);
            if r <= 0.5 * (1.0 + self.ratio) {
                return GeometricTailModel::new(r, onset);
            }
            onset *= 2;
        }
    }

    pub fn tail_factor(&self) -> f64 {
        self.ratio / (1.0 - self.ratio)
    }
}

/// Sums `term(0) + term(1) + ...` until `k >= onset_index` and
/// `|term(k)| * ratio / (1 - ratio) < tol / 4`.
pub fn sum_with_tail<R, F>(
    mut term: F,
    model: &GeometricTailModel,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, PrecisionError>
where
    R: Real,
    F: FnMut(usize) -> Complex<R>,
{
    sum_majorized(
        |k| {
            let t = term(k);
            let m = t.modulus();
            (t, m)
        },
        model,
        ctx,
    )
}

/// Like [`sum_with_tail`], with the stopping test applied to a caller-supplied
/// majorant of `|term(k)|` instead of the term itself.
pub fn sum_majorized<R, F>(
    mut term: F,
    model: &GeometricTailModel,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, PrecisionError>
where
    R: Real,
    F: FnMut(usize) -> (Complex<R>, R),
{
    let bits = ctx.bits();
    let quarter_tol = ctx.tol::<R>() / R::from_int(4, bits);
    let factor = R::from_f64(model.tail_factor(), bits);
    let mut sum = ctx.czero::<R>();
    for k in 0..MAX_TERMS {
        let (t, majorant) = term(k);
        if !t.all_finite() || !majorant.is_finite() {
            return Err(PrecisionError::NonFinite(k));
        }
        sum = sum + t;
        if k >= model.onset_index {
            let tail = majorant * &factor;
            if tail < quarter_tol {
                return Ok(BoundedValue::new(sum, tail));
            }
        }
    }
    Err(PrecisionError::TermLimit(MAX_TERMS))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Verified when the intervals sit within `tol`, refuted when they are
/// provably further apart than `tol`.
pub fn bounded_eq<R: Real>(a: &BoundedValue<R>, b: &BoundedValue<R>, tol: &R) -> Verdict {
    let d = (a.approx.clone() - &b.approx).modulus();
    let slack = a.err.clone() + &b.err;
    if d.clone() + &slack <= *tol {
        Verdict::Verified
    } else if d - slack > *tol {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    }
}

/// Verdict for a single residual against a tolerance.
pub fn residual_verdict<R: Real>(residual: &R, tol: &R) -> Verdict {
    if !residual.is_finite() {
        Verdict::Inconclusive
    } else if residual <= tol {
        Verdict::Verified
    } else {
        Verdict::Refuted
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn context_tolerances() {
        assert_eq!(PrecisionContext::new(100).unwrap().tolerance(), Tolerance::pow10(-50));
        assert_eq!(PrecisionContext::new(40).unwrap().tolerance(), Tolerance::pow10(-20));
        assert_eq!(PrecisionContext::new(10), Err(PrecisionError::InsufficientDigits(10)));
        assert!(PrecisionContext::with_tolerance(60, Tolerance::pow10(-31)).is_err());
        assert!(PrecisionContext::with_tolerance(60, Tolerance::pow10(-25)).is_ok());
    }

    #[test]
    fn tolerance_parse() {
        let t: Tolerance = "1e-40".parse().unwrap();
        assert_eq!(t, Tolerance::pow10(-40));
        assert_eq!(t.to_string(), "1e-40");
        assert!("abc".parse::<Tolerance>().is_err());
        assert!("0e5".parse::<Tolerance>().is_err());
    }

    #[test]
    fn geometric_series() {
        let ctx = PrecisionContext::new(60).unwrap();
        let half: BigFloat = ctx.real(0.5);
        let model = GeometricTailModel::from_ratio(0.5).unwrap();
        let v = sum_with_tail(|k| Complex::new(half.powi(k as i64), BigFloat::zero()), &model, &ctx).unwrap();
        let exact = BoundedValue::exact(ctx.cint::<BigFloat>(2, 0));
        assert_eq!(bounded_eq(&v, &exact, &ctx.tol()), Verdict::Verified);
    }

    #[test]
    fn zero_series() {
        let ctx = PrecisionContext::new(40).unwrap();
        let model = GeometricTailModel::new(0.5, 0).unwrap();
        let v = sum_with_tail(|_| ctx.czero::<BigFloat>(), &model, &ctx).unwrap();
        assert!(v.approx.re.is_zero() && v.err.is_zero());
    }

    #[test]
    fn bounded_eq_cases() {
        let tol: f64 = 1e-10;
        let one = BoundedValue::exact(Complex::new(1.0f64, 0.0));
        let near = BoundedValue::new(Complex::new(1.0 + 1e-12, 0.0), 1e-13);
        let far = BoundedValue::new(Complex::new(1.001, 0.0), 1e-13);
        let fuzzy = BoundedValue::new(Complex::new(1.0 + 5e-11, 0.0), 1e-10);
        assert_eq!(bounded_eq(&one, &near, &tol), Verdict::Verified);
        assert_eq!(bounded_eq(&one, &far, &tol), Verdict::Refuted);
        assert_eq!(bounded_eq(&one, &fuzzy, &tol), Verdict::Inconclusive);
    }

    #[test]
    fn ratio_validation() {
        assert!(GeometricTailModel::from_ratio(1.0).is_err());
        assert_eq!(GeometricTailModel::from_ratio(0.75).unwrap().onset_index, 8);
        let w = GeometricTailModel::from_ratio(0.9).unwrap().weighted(1).unwrap();
        assert!(w.ratio < 0.96 && w.ratio > 0.9);
    }

    #[test]
    fn divergent_series_hits_limit() {
        let ctx = PrecisionContext::new(40).unwrap();
        let model = GeometricTailModel::new(0.5, 0).unwrap();
        let r = sum_with_tail(|_| Complex::new(1.0f64, 0.0), &model, &ctx);
        assert_eq!(r, Err(PrecisionError::TermLimit(MAX_TERMS)));
    }
}
