//! Exact imaginary-quadratic points `a + b i sqrt(d)` and the upper half-plane.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SpecialError;
use crate::precision::PrecisionContext;
use crate::scalar::Real;

/// `a + b * i * sqrt(d)` with `d` square-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    pub a: BigRational,
    pub b: BigRational,
    pub d: u64,
}

fn square_free_part(n: u64) -> (u64, u64) {
    // n = s^2 * f with f square-free
    let mut f = n;
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= f {
        while f.is_multiple_of(p * p) {
            f /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, f)
}

impl QuadraticIrrational {
    /// `re + scale * i * sqrt(radicand)` for a positive rational radicand.
    pub fn from_parts(re: BigRational, scale: BigRational, radicand: BigRational) -> Result<Self, SpecialError> {
        if !radicand.is_positive() {
            return Err(SpecialError::InvalidArgument("radicand must be positive".into()));
        }
        // scale * sqrt(p/q) = (scale / q) * sqrt(p q)
        let pq = radicand.numer() * radicand.denom();
        let pq: u64 = pq
            .try_into()
            .map_err(|_| SpecialError::InvalidArgument("radicand too large".into()))?;
        let (s, f) = square_free_part(pq);
        let b = scale * BigRational::new(BigInt::from(s), radicand.denom().clone());
        Ok(QuadraticIrrational { a: re, b, d: f })
    }

    pub fn imaginary(scale: BigRational, radicand: BigRational) -> Result<Self, SpecialError> {
        Self::from_parts(BigRational::zero(), scale, radicand)
    }

    pub fn in_upper_half_plane(&self) -> bool {
        self.b.is_positive()
    }

    /// `n * tau`.
    pub fn scale(&self, n: i64) -> Self {
        let n = BigRational::from_integer(n.into());
        QuadraticIrrational { a: &self.a * &n, b: &self.b * &n, d: self.d }
    }

    /// `tau + n`.
    pub fn translate(&self, n: i64) -> Self {
        QuadraticIrrational { a: &self.a + BigRational::from_integer(n.into()), b: self.b.clone(), d: self.d }
    }

    /// `-1 / tau`.
    pub fn neg_recip(&self) -> Self {
        let d = BigRational::from_integer(self.d.into());
        let norm = &self.a * &self.a + &self.b * &self.b * d;
        QuadraticIrrational { a: -&self.a / &norm, b: &self.b / norm, d: self.d }
    }

    /// Exact `|tau|^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn to_complex<R: Real>(&self, ctx: &PrecisionContext) -> Complex<R> {
        let bits = ctx.bits();
        let root = R::from_int(self.d as i64, bits).sqrt();
        Complex::new(R::from_ratio(&self.a, bits), R::from_ratio(&self.b, bits) * root)
    }

    /// Whether `sqrt(d)` is rational, i.e. `d == 1`.
    pub fn is_gaussian(&self) -> bool {
        self.d == 1
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = if self.d == 1 { format!("{}i", self.b) } else { format!("({})i*sqrt({})", self.b, self.d) };
        if self.a.is_zero() {
            f.write_str(&imag)
        } else {
            write!(f, "{} + {}", self.a, imag)
        }
    }
}

/// Serialized form of a quadratic point: `re + im_scale * i * sqrt(im_radicand)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticRecord {
    pub re: String,
    pub im_scale: String,
    pub im_radicand: String,
}

impl QuadraticRecord {
    pub fn parse(&self) -> Result<QuadraticIrrational, SpecialError> {
        let p = |s: &str| -> Result<BigRational, SpecialError> {
            parse_rational(s).ok_or_else(|| SpecialError::InvalidArgument(format!("bad rational `{s}`")))
        };
        QuadraticIrrational::from_parts(p(&self.re)?, p(&self.im_scale)?, p(&self.im_radicand)?)
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Point of the upper half-plane, optionally with its exact quadratic form.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperHalfPoint<R: Real> {
    pub tau: Complex<R>,
    pub exact: Option<QuadraticIrrational>,
}

impl<R: Real> UpperHalfPoint<R> {
    pub fn new(tau: Complex<R>) -> Result<Self, SpecialError> {
        if !(tau.im > R::zero()) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(SpecialError::NotInUpperHalfPlane(tau.im.to_f64()));
        }
        Ok(UpperHalfPoint { tau, exact: None })
    }

    pub fn from_exact(q: &QuadraticIrrational, ctx: &PrecisionContext) -> Result<Self, SpecialError> {
        if !q.in_upper_half_plane() {
            return Err(SpecialError::NotInUpperHalfPlane(f64::NAN));
        }
        Ok(UpperHalfPoint { tau: q.to_complex(ctx), exact: Some(q.clone()) })
    }

    /// `n * tau` for a positive integer `n`.
    pub fn scaled(&self, n: i64, ctx: &PrecisionContext) -> Result<Self, SpecialError> {
        match &self.exact {
            Some(q) => Self::from_exact(&q.scale(n), ctx),
            None => {
                let k = ctx.int::<R>(n);
                Self::new(Complex::new(self.tau.re.clone() * &k, self.tau.im.clone() * &k))
            }
        }
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
