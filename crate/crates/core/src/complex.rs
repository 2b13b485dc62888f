//! Complex helpers over any [`Real`]: principal branches and exact
//! Gaussian-rational conversions.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Real;

/// Exact element of Q(i).
pub type GaussianRational = Complex<BigRational>;

/// Side from which a point on a branch cut is approached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutSide {
    Reject,
    Above,
    Below,
}

pub trait ComplexExt<R: Real>: Sized {
    fn modulus(&self) -> R;
    fn argument(&self) -> R;
    fn sqrt_principal(&self) -> Self;
    fn ln_principal(&self) -> Self;
    fn exp_c(&self) -> Self;
    /// Principal `n`-th root.
    fn root_principal(&self, n: u32) -> Self;
    fn pow_int(&self, n: i64) -> Self;
    fn scale_by(&self, r: &R) -> Self;
    fn all_finite(&self) -> bool;
    /// `ln` with a negative-real argument resolved by `side` (arg -pi for
    /// `Above`, +pi otherwise).
    fn ln_sided(&self, side: CutSide) -> Self;
    /// `sqrt` with the same convention as [`ComplexExt::ln_sided`].
    fn sqrt_sided(&self, side: CutSide) -> Self;
}

impl<R: Real> ComplexExt<R> for Complex<R> {
    fn modulus(&self) -> R {
        let a = self.re.abs();
        let b = self.im.abs();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        (a.clone() * &a + b.clone() * &b).sqrt()
    }

    fn argument(&self) -> R {
        self.im.atan2(&self.re)
    }

    fn sqrt_principal(&self) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let r = self.modulus();
        let two = R::one() + R::one();
        if self.re >= R::zero() {
            let u = ((r + &self.re) / &two).sqrt();
            let v = self.im.clone() / (u.clone() * &two);
            Complex::new(u, v)
        } else {
            let mut v = ((r - &self.re) / &two).sqrt();
            if self.im < R::zero() {
                v = -v;
            }
            let u = self.im.clone() / (v.clone() * &two);
            Complex::new(u, v)
        }
    }

    fn ln_principal(&self) -> Self {
        Complex::new(self.modulus().ln(), self.argument())
    }

    fn exp_c(&self) -> Self {
        let m = self.re.exp();
        Complex::new(m.clone() * self.im.cos(), m * self.im.sin())
    }

    fn root_principal(&self, n: u32) -> Self {
        match n {
            1 => self.clone(),
            2 => self.sqrt_principal(),
            4 => self.sqrt_principal().sqrt_principal(),
            _ => {
                if self.re.is_zero() && self.im.is_zero() {
                    return self.clone();
                }
                let bits = self.re.precision().max(self.im.precision());
                let k = R::from_int(n as i64, bits);
                let ln = self.ln_principal();
                Complex::new(ln.re / &k, ln.im / &k).exp_c()
            }
        }
    }

    fn pow_int(&self, n: i64) -> Self {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Complex::new(R::one(), R::zero());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        if n < 0 {
            Complex::new(R::one(), R::zero()) / acc
        } else {
            acc
        }
    }

    fn scale_by(&self, r: &R) -> Self {
        Complex::new(self.re.clone() * r, self.im.clone() * r)
    }

    fn all_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn ln_sided(&self, side: CutSide) -> Self {
        if self.im.is_zero() && self.re < R::zero() {
            let bits = self.re.precision();
            let pi = R::pi(bits);
            let arg = if side == CutSide::Above { -pi } else { pi };
            return Complex::new(self.re.abs().ln(), arg);
        }
        self.ln_principal()
    }

    fn sqrt_sided(&self, side: CutSide) -> Self {
        if self.im.is_zero() && self.re < R::zero() {
            let s = self.re.abs().sqrt();
            let im = if side == CutSide::Above { -s } else { s };
            return Complex::new(R::zero(), im);
        }
        self.sqrt_principal()
    }
}

pub fn cnum<R: Real>(re: f64, im: f64, bits: u32) -> Complex<R> {
    Complex::new(R::from_f64(re, bits), R::from_f64(im, bits))
}

pub fn cint<R: Real>(re: i64, im: i64, bits: u32) -> Complex<R> {
    Complex::new(R::from_int(re, bits), R::from_int(im, bits))
}

pub fn creal<R: Real>(re: R) -> Complex<R> {
    Complex::new(re, R::zero())
}

pub fn from_gaussian<R: Real>(z: &GaussianRational, bits: u32) -> Complex<R> {
    Complex::new(R::from_ratio(&z.re, bits), R::from_ratio(&z.im, bits))
}

pub fn gaussian(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gaussian_int(re: i64, im: i64) -> GaussianRational {
    Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
}

/// `num/den` as a Gaussian rational.
pub fn gaussian_frac(re_num: i64, im_num: i64, den: i64) -> GaussianRational {
    let d = BigInt::from(den);
    Complex::new(
        BigRational::new(re_num.into(), d.clone()),
        BigRational::new(im_num.into(), d),
    )
}

pub fn gaussian_is_zero(z: &GaussianRational) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

pub fn gaussian_is_real(z: &GaussianRational) -> bool {
    z.im.is_zero()
}

pub fn gaussian_abs_f64(z: &GaussianRational) -> f64 {
    let re: f64 = f64::from_ratio(&z.re, 53);
    let im: f64 = f64::from_ratio(&z.im, 53);
    re.hypot(im)
}

/// Writes `z = n / d` with `n` a Gaussian integer and `d > 0` the least
/// common denominator of both parts.
pub fn gaussian_split(z: &GaussianRational) -> (Complex<BigInt>, BigInt) {
    use num_integer::Integer;
    let d = z.re.denom().lcm(z.im.denom());
    let re = z.re.numer() * (&d / z.re.denom());
    let im = z.im.numer() * (&d / z.im.denom());
    (Complex::new(re, im), d)
}

/// Renders `a + b i` with rational parts, e.g. `1/480`, `-i/29584`, `3+2i`.
pub fn gaussian_to_string(z: &GaussianRational) -> String {
    let re = &z.re;
    let im = &z.im;
    if im.is_zero() {
        return re.to_string();
    }
    let im_part = if im.is_one() {
        "i".to_string()
    } else if *im == -BigRational::one() {
        "-i".to_string()
    } else if im.denom().is_one() {
        format!("{}i", im.numer())
    } else {
        let n = im.numer();
        let sign = if n.is_negative() { "-" } else { "" };
        let mag = n.abs();
        if mag == BigInt::from(1) {
            format!("{}i/{}", sign, im.denom())
        } else {
            format!("{}{}i/{}", sign, mag, im.denom())
        }
    };
    if re.is_zero() {
        im_part
    } else if im_part.starts_with('-') {
        format!("{}{}", re, im_part)
    } else {
        format!("{}+{}", re, im_part)
    }
}

/// Parses rationals with an optional `i` factor: `1/480`, `i/240`, `-i/29584`,
/// `6i`, `15/16`, `3+2i`.
pub fn parse_gaussian(s: &str) -> Option<GaussianRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (idx, ch) in s.char_indices() {
        if idx > 0 && (ch == '+' || ch == '-') {
            terms.push(&s[start..idx]);
            start = idx;
        }
    }
    terms.push(&s[start..]);
    let mut acc = gaussian_int(0, 0);
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let imag = body.contains('i');
        let cleaned = body.replacen('i', "", 1);
        let (num_s, den_s) = match cleaned.split_once('/') {
            Some((n, d)) => (n.to_string(), d.to_string()),
            None => (cleaned.clone(), "1".to_string()),
        };
        let num: BigInt = if num_s.is_empty() { BigInt::from(1) } else { num_s.parse().ok()? };
        let den: BigInt = den_s.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        let mut q = BigRational::new(num, den);
        if neg {
            q = -q;
        }
        if imag {
            acc.im += q;
        } else {
            acc.re += q;
        }
    }
    Some(acc)
}
