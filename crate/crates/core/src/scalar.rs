//! Real scalar abstraction.
//!
//! Every numerical routine in the crate is generic over [`Real`], which is
//! implemented for `f32`, `f64` and the MPFR-backed [`BigFloat`]. Exact
//! quantities (Gaussian rationals, integer polynomials) never pass through
//! this trait; they are converted at the boundary with [`Real::from_ratio`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};
use rug::float::{Constant, Round};
use rug::Float;

/// Precision carried by literal zero and one.
pub const LITERAL_BITS: u32 = 64;

pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    fn from_f64(v: f64, bits: u32) -> Self;
    fn from_int(v: i64, bits: u32) -> Self;
    fn from_bigint(v: &BigInt, bits: u32) -> Self;
    fn pi(bits: u32) -> Self;
    fn parse_decimal(s: &str, bits: u32) -> Option<Self>;

    /// Mantissa bits; 53 for `f64`.
    fn precision(&self) -> u32;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    /// Four-quadrant arctangent of `self / x`; a zero `self` counts as `+0`.
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    fn is_finite(&self) -> bool;
    fn to_f64(&self) -> f64;
    /// `log10 |self|`, finite even when `to_f64` would under- or overflow.
    fn log10_abs(&self) -> f64;
    /// Nearest integer, `None` for non-finite input.
    fn round_bigint(&self) -> Option<BigInt>;
    /// Scientific notation with `digits` significant digits.
    fn to_sci(&self, digits: usize) -> String;

    fn from_ratio(v: &BigRational, bits: u32) -> Self {
        Self::from_bigint(v.numer(), bits) / Self::from_bigint(v.denom(), bits)
    }

    fn powi(&self, n: i64) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        if n < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    fn pow10(e: i32, bits: u32) -> Self {
        Self::from_int(10, bits).powi(e as i64)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

// ---------------------------------------------------------------------------
// native floats

macro_rules! native_real {
    ($t:ty) => {
        impl Real for $t {
            fn from_f64(v: f64, _bits: u32) -> Self {
                v as $t
            }
            fn from_int(v: i64, _bits: u32) -> Self {
                v as $t
            }
            fn from_bigint(v: &BigInt, _bits: u32) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn from_ratio(v: &BigRational, _bits: u32) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $t
            }
            fn pi(_bits: u32) -> Self {
                std::f64::consts::PI as $t
            }
            fn parse_decimal(s: &str, _bits: u32) -> Option<Self> {
                s.trim().parse::<$t>().ok()
            }
            fn precision(&self) -> u32 {
                <$t>::MANTISSA_DIGITS
            }
            fn sqrt(&self) -> Self {
                <$t>::sqrt(*self)
            }
            fn exp(&self) -> Self {
                <$t>::exp(*self)
            }
            fn ln(&self) -> Self {
                <$t>::ln(*self)
            }
            fn sin(&self) -> Self {
                <$t>::sin(*self)
            }
            fn cos(&self) -> Self {
                <$t>::cos(*self)
            }
            fn atan2(&self, x: &Self) -> Self {
                let y = if *self == 0.0 { 0.0 } else { *self };
                <$t>::atan2(y, *x)
            }
            fn abs(&self) -> Self {
                <$t>::abs(*self)
            }
            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }
            fn is_finite(&self) -> bool {
                <$t>::is_finite(*self)
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn log10_abs(&self) -> f64 {
                (<$t>::abs(*self) as f64).log10()
            }
            fn round_bigint(&self) -> Option<BigInt> {
                BigInt::from_f64(<$t>::round(*self) as f64)
            }
            fn to_sci(&self, digits: usize) -> String {
                format!("{:.*e}", digits.saturating_sub(1), self)
            }
        }
    };
}

native_real!(f64);
native_real!(f32);

// ---------------------------------------------------------------------------
// BigFloat

/// Arbitrary-precision binary float. Binary operations round to the larger
/// of the two operand precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn with_bits(bits: u32, v: f64) -> Self {
        BigFloat(Float::with_val(bits.max(2), v))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn into_inner(self) -> Float {
        self.0
    }

    pub fn from_float(f: Float) -> Self {
        BigFloat(f)
    }

    fn raise(&mut self, bits: u32) {
        if bits > self.0.prec() {
            // widening is exact
            self.0.set_prec(bits);
        }
    }

    fn digits(&self) -> usize {
        (self.0.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize
    }
}

fn to_rug(v: &BigInt) -> rug::Integer {
    let (sign, digits) = v.to_u64_digits();
    let mut r = rug::Integer::from_digits(&digits, rug::integer::Order::Lsf);
    if sign == Sign::Minus {
        r = -r;
    }
    r
}

fn from_rug(v: &rug::Integer) -> BigInt {
    let digits = v.to_digits::<u64>(rug::integer::Order::Lsf);
    let mag = BigInt::from_slice(
        Sign::Plus,
        &digits
            .iter()
            .flat_map(|d| [*d as u32, (*d >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, {} bits)", self.to_sci(self.digits().min(40)), self.0.prec())
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.digits());
        f.write_str(&self.to_sci(digits))
    }
}

macro_rules! big_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl<'a> $atr<&'a BigFloat> for BigFloat {
            fn $am(&mut self, rhs: &'a BigFloat) {
                self.raise(rhs.0.prec());
                $atr::$am(&mut self.0, &rhs.0);
            }
        }
        impl $atr<BigFloat> for BigFloat {
            fn $am(&mut self, rhs: BigFloat) {
                $atr::$am(self, &rhs);
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(mut self, rhs: &'a BigFloat) -> BigFloat {
                $atr::$am(&mut self, rhs);
                self
            }
        }
        impl $tr<BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(mut self, rhs: BigFloat) -> BigFloat {
                $atr::$am(&mut self, &rhs);
                self
            }
        }
        impl<'a, 'b> $tr<&'b BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &'b BigFloat) -> BigFloat {
                let p = self.0.prec().max(rhs.0.prec());
                BigFloat(Float::with_val(p, $tr::$m(&self.0, &rhs.0)))
            }
        }
    };
}

big_binop!(Add, add, AddAssign, add_assign);
big_binop!(Sub, sub, SubAssign, sub_assign);
big_binop!(Mul, mul, MulAssign, mul_assign);
big_binop!(Div, div, DivAssign, div_assign);

impl Rem for BigFloat {
    type Output = BigFloat;
    fn rem(self, rhs: BigFloat) -> BigFloat {
        let mut q = self.clone() / &rhs;
        q.0.trunc_mut();
        self - q * rhs
    }
}

impl RemAssign for BigFloat {
    fn rem_assign(&mut self, rhs: BigFloat) {
        *self = self.clone() % rhs;
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::new(LITERAL_BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(LITERAL_BITS, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let bits = ((s.len() as f64) * (radix as f64).log2() * 1.1) as u32 + LITERAL_BITS;
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(BigFloat(Float::with_val(bits, parsed)))
    }
}

impl Real for BigFloat {
    fn from_f64(v: f64, bits: u32) -> Self {
        BigFloat(Float::with_val(bits.max(53), v))
    }
    fn from_int(v: i64, bits: u32) -> Self {
        BigFloat(Float::with_val(bits.max(64), v))
    }
    fn from_bigint(v: &BigInt, bits: u32) -> Self {
        BigFloat(Float::with_val(bits.max(2), to_rug(v)))
    }
    fn from_ratio(v: &BigRational, bits: u32) -> Self {
        let q = rug::Rational::from((to_rug(v.numer()), to_rug(v.denom())));
        BigFloat(Float::with_val(bits.max(2), q))
    }
    fn pi(bits: u32) -> Self {
        BigFloat(Float::with_val(bits.max(2), Constant::Pi))
    }
    fn parse_decimal(s: &str, bits: u32) -> Option<Self> {
        let parsed = Float::parse(s.trim()).ok()?;
        Some(BigFloat(Float::with_val(bits.max(2), parsed)))
    }
    fn precision(&self) -> u32 {
        self.0.prec()
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn sin(&self) -> Self {
        BigFloat(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigFloat(self.0.clone().cos())
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.0.prec().max(x.0.prec());
        let y = if self.0.is_zero() { Float::new(p) } else { self.0.clone() };
        BigFloat(Float::with_val(p, y.atan2_ref(&x.0)))
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn floor(&self) -> Self {
        BigFloat(self.0.clone().floor())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn log10_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.0.to_f64_exp();
        m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
    }
    fn round_bigint(&self) -> Option<BigInt> {
        let (i, _) = self.0.to_integer_round(Round::Nearest)?;
        Some(from_rug(&i))
    }
    fn to_sci(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_is_max_of_operands() {
        let a = BigFloat::from_int(1, 300);
        let b = BigFloat::from_int(3, 64);
        let c = a / &b;
        assert_eq!(c.precision(), 300);
        let back = c * BigFloat::from_int(3, 300) - BigFloat::from_int(1, 300);
        assert!(back.log10_abs() < -85.0);
    }

    #[test]
    fn literal_arithmetic_is_exact() {
        let three = BigFloat::one() + BigFloat::one() + BigFloat::one();
        assert_eq!(three.to_f64(), 3.0);
    }

    #[test]
    fn bigint_roundtrip() {
        let v: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let f = BigFloat::from_bigint(&v, 256);
        assert_eq!(f.round_bigint().unwrap(), v);
    }

    #[test]
    fn log10_of_tiny_value() {
        let tiny = BigFloat::pow10(-700, 4000);
        assert!((tiny.log10_abs() + 700.0).abs() < 1e-9);
    }

    #[test]
    fn atan2_on_negative_axis() {
        let y = -BigFloat::zero();
        let x = BigFloat::from_int(-1, 128);
        let a = y.atan2(&x);
        assert!((a.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((0.0f64.atan2(-1.0) - Real::atan2(&-0.0f64, &-1.0)).abs() < 1e-15);
    }

    #[test]
    fn pi_digits() {
        let p = BigFloat::pi(400);
        assert!(p.to_sci(30).starts_with("3.14159265358979323846264338328"));
    }
}
