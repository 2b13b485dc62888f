use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::ComplexExt;
use crate::poly::aberth_roots;
use crate::precision::{BoundedValue, PrecisionContext};
use crate::scalar::Real;

/// Primitive integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Strips leading zeros, divides out the content and makes the leading
    /// coefficient positive. `None` for the zero polynomial.
    pub fn new(mut coeffs: Vec<BigInt>) -> Option<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.last()?.clone();
        let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let content = if lead.is_negative() { -content } else { content };
        Some(IntPolynomial { coeffs: coeffs.into_iter().map(|c| c / &content).collect() })
    }

    pub fn from_ascending(coeffs: &[i64]) -> Option<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Leading coefficient first.
    pub fn from_descending(coeffs: &[i64]) -> Option<Self> {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero")
    }

    /// Euclidean norm of the coefficient vector, as `f64`.
    pub fn norm_f64(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| {
                let v = c.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_coeff_digits(&self) -> usize {
        self.coeffs.iter().map(|c| c.abs().to_string().len()).max().unwrap_or(1)
    }

    pub fn eval<R: Real>(&self, z: &Complex<R>, ctx: &PrecisionContext) -> Complex<R> {
        let bits = ctx.bits();
        self.coeffs
            .iter()
            .rev()
            .fold(ctx.czero::<R>(), |acc, c| acc * z + Complex::new(R::from_bigint(c, bits), R::zero()))
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + BigRational::from_integer(c.clone()))
    }

    /// `sum i |c_i| r^(i-1)`, a bound for `|P'|` on the disc of radius `r`.
    pub fn derivative_bound<R: Real>(&self, r: &R, ctx: &PrecisionContext) -> R {
        let bits = ctx.bits();
        let mut acc = R::zero();
        for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * r + R::from_bigint(&(c.abs() * BigInt::from(i)), bits);
        }
        acc
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }

    /// Exact division; `None` unless `d` divides `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let mut rem = self.coeffs.clone();
        let n = d.degree();
        if rem.len() <= n {
            return None;
        }
        let mut q = vec![BigInt::zero(); rem.len() - n];
        for i in (0..q.len()).rev() {
            let (c, r) = rem[i + n].div_rem(d.leading());
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        rem.iter().all(Zero::is_zero).then_some(IntPolynomial { coeffs: q })
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `p` with `self(z) = z^(2m) p(z^2 + z^-2)`, when `self` is palindromic
    /// and even.
    pub fn palindromic_even_reduce(&self) -> Option<Self> {
        if !self.is_palindromic() || self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        let in_u: Vec<BigInt> = self.coeffs.iter().step_by(2).cloned().collect();
        if in_u.len().is_multiple_of(2) {
            return None;
        }
        let m = in_u.len() / 2;
        // u^j + u^-j as polynomials in w = u + 1/u
        let mut v: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
        for j in 2..=m {
            let mut next = vec![BigInt::zero(); j + 1];
            for (i, c) in v[j - 1].iter().enumerate() {
                next[i + 1] += c;
            }
            for (i, c) in v[j - 2].iter().enumerate() {
                next[i] -= c;
            }
            v.push(next);
        }
        let mut p = vec![BigInt::zero(); m + 1];
        p[0] += &in_u[m];
        for j in 1..=m {
            for (i, c) in v[j].iter().enumerate() {
                p[i] += &in_u[m + j] * c;
            }
        }
        Self::new(p)
    }

    /// Rational roots, located numerically and confirmed exactly.
    pub fn rational_roots(&self, ctx: &PrecisionContext) -> Vec<BigRational> {
        let mut out = Vec::new();
        if self.coeffs[0].is_zero() {
            out.push(BigRational::zero());
        }
        if self.degree() == 0 {
            return out;
        }
        let bits = ctx.bits();
        let cs: Vec<Complex<crate::scalar::BigFloat>> = self
            .coeffs
            .iter()
            .map(|c| Complex::new(crate::scalar::BigFloat::from_bigint(c, bits), crate::scalar::BigFloat::zero()))
            .collect();
        let Some(roots) = aberth_roots(&cs, ctx) else {
            return out;
        };
        let lead = self.leading().abs();
        for r in roots {
            if r.im.abs().log10_abs() > -10.0 && !r.im.is_zero() {
                continue;
            }
            let mut q = BigInt::one();
            while q <= lead {
                if (&lead % &q).is_zero() {
                    let scaled = r.re.clone() * crate::scalar::BigFloat::from_bigint(&q, bits);
                    if let Some(p) = scaled.round_bigint() {
                        let cand = BigRational::new(p, q.clone());
                        if !out.contains(&cand) && self.eval_rational(&cand).is_zero() {
                            out.push(cand);
                        }
                    }
                }
                q += 1;
                if q > BigInt::from(100_000) {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show = !mag.is_one() || i == 0;
            match (show, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag} x")?,
                (true, _) => write!(f, "{mag} x^{i}")?,
                (false, 1) => f.write_str("x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `|P(v)| + sup |P'| * err` over the disc of radius `|v| + err`.
pub fn poly_residual<R: Real>(p: &IntPolynomial, v: &BoundedValue<R>, ctx: &PrecisionContext) -> R {
    let value = p.eval(&v.approx, ctx).modulus();
    if v.err.is_zero() {
        return value;
    }
    let r = v.approx.modulus() + &v.err;
    value + p.derivative_bound(&r, ctx) * &v.err
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn normalization() {
        let p = IntPolynomial::from_ascending(&[-4, 0, -2, 0]).unwrap();
        assert_eq!(p.coefficients(), &[BigInt::from(2), BigInt::zero(), BigInt::one()]);
        assert!(IntPolynomial::from_ascending(&[0, 0]).is_none());
        assert_eq!(p.to_string(), "x^2 + 2");
    }

    #[test]
    fn residuals() {
        let ctx = PrecisionContext::new(30).unwrap();
        let one = BoundedValue::exact(ctx.cone::<BigFloat>());
        assert!(poly_residual(&IntPolynomial::from_ascending(&[-1, 1]).unwrap(), &one, &ctx).is_zero());
        let r = poly_residual(&IntPolynomial::from_ascending(&[1, 0, 1]).unwrap(), &one, &ctx);
        assert_eq!(r.to_f64(), 2.0);
    }

    #[test]
    fn palindromic_reduction() {
        // z^4 (z^2 + z^-2 - 3) = z^8... with p(w) = w - 3 on u = z^2
        let p = IntPolynomial::from_ascending(&[1, 0, -3, 0, 1]).unwrap();
        assert_eq!(p.palindromic_even_reduce(), IntPolynomial::from_ascending(&[-3, 1]));
        let q = IntPolynomial::from_ascending(&[5, 2, 1]).unwrap();
        assert_eq!(q.palindromic_even_reduce(), None);
    }

    #[test]
    fn exact_division_and_rational_roots() {
        let ctx = PrecisionContext::new(40).unwrap();
        let a = IntPolynomial::from_ascending(&[-1, 2]).unwrap();
        let b = IntPolynomial::from_ascending(&[1, 0, 1]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&b), Some(a));
        assert_eq!(ab.div_exact(&IntPolynomial::from_ascending(&[1, 1]).unwrap()), None);
        assert_eq!(ab.rational_roots(&ctx), vec![BigRational::new(1.into(), 2.into())]);
    }
}
