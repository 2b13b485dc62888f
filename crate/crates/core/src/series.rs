//! The two-variable series
//!
//! ```text
//! A(x, y) = sum_n sum_k C(n,k)^2 C(2k,n) C(2n,n) (-1)^k x^n y^(2k-n)
//! ```
//!
//! its Euler-operator variants `theta_x A`, `theta_y A`, its Legendre form
//! and the rational `1/pi` series built from them.
//!
//! Inner sums over `k` are formed exactly in `Z[i]` and rounded once per row.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    from_gaussian, gaussian_abs_f64, gaussian_is_zero, gaussian_split, gaussian_to_string, parse_gaussian,
    ComplexExt, GaussianRational,
};
use crate::precision::{sum_majorized, BoundedValue, GeometricTailModel, PrecisionContext, PrecisionError, MAX_TERMS};
use crate::scalar::Real;
use crate::special::legendre::{LegendreSequence, TrinomialSequence};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("y must be nonzero")]
    ZeroY,
    #[error("series does not converge absolutely (ratio {0:.6})")]
    NotConvergent(f64),
    #[error("cannot parse `{0}` as a Gaussian rational")]
    Parse(String),
    #[error(transparent)]
    Precision(#[from] PrecisionError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint {
    pub x: GaussianRational,
    pub y: GaussianRational,
}

impl SeriesPoint {
    pub fn new(x: GaussianRational, y: GaussianRational) -> Result<Self, SeriesError> {
        if gaussian_is_zero(&y) {
            return Err(SeriesError::ZeroY);
        }
        Ok(SeriesPoint { x, y })
    }

    pub fn parse(x: &str, y: &str) -> Result<Self, SeriesError> {
        let px = parse_gaussian(x).ok_or_else(|| SeriesError::Parse(x.to_string()))?;
        let py = parse_gaussian(y).ok_or_else(|| SeriesError::Parse(y.to_string()))?;
        SeriesPoint::new(px, py)
    }

    pub fn x_c<R: Real>(&self, ctx: &PrecisionContext) -> Complex<R> {
        from_gaussian(&self.x, ctx.bits())
    }

    pub fn y_c<R: Real>(&self, ctx: &PrecisionContext) -> Complex<R> {
        from_gaussian(&self.y, ctx.bits())
    }

    /// Both coordinates have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.x.im.is_zero() && self.y.im.is_zero()
    }

    /// `x * y`, exact.
    pub fn xy(&self) -> GaussianRational {
        self.x.clone() * &self.y
    }

    /// `4x / y`, exact.
    pub fn four_x_over_y(&self) -> GaussianRational {
        self.x.clone() * Complex::new(BigRational::from_integer(4.into()), BigRational::zero()) / &self.y
    }
}

impl std::fmt::Display for SeriesPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", gaussian_to_string(&self.x), gaussian_to_string(&self.y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Convergence {
    pub ratio: f64,
    pub converges: bool,
}

/// `16 |x y| (sqrt|4x/y| + sqrt(1 + |4x/y|))^2`; the series converges
/// absolutely when this is below one.
pub fn convergence_ratio(xy_abs: f64, r: f64) -> f64 {
    16.0 * xy_abs * (r.sqrt() + (1.0 + r).sqrt()).powi(2)
}

pub fn converges_absolutely(pt: &SeriesPoint) -> Convergence {
    let ratio = convergence_ratio(gaussian_abs_f64(&pt.xy()), gaussian_abs_f64(&pt.four_x_over_y()));
    Convergence { ratio, converges: ratio < 1.0 }
}

/// Asymptotic ratio of successive rows: `1/s*` where `s*` solves
/// `ratio(s x, y) = 1`.
pub fn row_ratio(pt: &SeriesPoint) -> f64 {
    let xy = gaussian_abs_f64(&pt.xy());
    let r = gaussian_abs_f64(&pt.four_x_over_y());
    if xy == 0.0 {
        return 0.0;
    }
    let f = |s: f64| convergence_ratio(s * xy, s * r);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi) < 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    1.0 / hi
}

/// Exact row generator for the double series.
///
/// With `x = xn/xd`, `y = yn/yd`, row `n` is
/// `C(2n,n) xn^n yn^(n mod 2) S_n / (xd yd)^n` where `S_n` is a Gaussian
/// integer; rows weighted by `2k - n` come out of the same pass.
struct RowGenerator {
    xn: Complex<BigInt>,
    yn: Complex<BigInt>,
    u: Complex<BigInt>,
    v: BigInt,
    central: BigInt,
    x_pow: Complex<BigInt>,
    den: BigInt,
    den_step: BigInt,
    n: u64,
}

struct ExactRow {
    num: Complex<BigInt>,
    num_y: Complex<BigInt>,
    den: BigInt,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn cmul_int(z: &Complex<BigInt>, k: &BigInt) -> Complex<BigInt> {
    Complex::new(&z.re * k, &z.im * k)
}

impl RowGenerator {
    fn new(pt: &SeriesPoint) -> Self {
        let (xn, xd) = gaussian_split(&pt.x);
        let (yn, yd) = gaussian_split(&pt.y);
        let u = &yn * &yn;
        let v = &yd * &yd;
        RowGenerator {
            xn,
            yn,
            u,
            v,
            central: BigInt::one(),
            x_pow: Complex::new(BigInt::one(), BigInt::zero()),
            den: BigInt::one(),
            den_step: xd * yd,
            n: 0,
        }
    }

    fn next_row(&mut self) -> ExactRow {
        let n = self.n;
        let k0 = n.div_ceil(2);
        let j0 = n % 2;
        let m_max = (n - j0) / 2;
        let sign = if k0.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let a0 = binomial(n, k0).pow(2) * binomial(2 * k0, n) * sign;
        let mut t = Complex::new(a0 * self.v.pow(m_max as u32), BigInt::zero());
        let mut plain = t.clone();
        let mut weighted = cmul_int(&t, &BigInt::from(j0));
        for m in 0..m_max {
            let k = k0 + m;
            // a_{m+1} / a_m = -(n-k)^2 (2k+1)(2k+2) / ((k+1)^2 (2k+1-n)(2k+2-n))
            let num = BigInt::from(n - k).pow(2) * (2 * k + 1) * (2 * k + 2);
            let den = BigInt::from(k + 1).pow(2) * (2 * k + 1 - n) * (2 * k + 2 - n) * &self.v;
            let grown = cmul_int(&(t * &self.u), &num);
            t = Complex::new(-(grown.re / &den), -(grown.im / &den));
            plain += &t;
            weighted += cmul_int(&t, &BigInt::from(j0 + 2 * (m + 1)));
        }
        let mut lead = cmul_int(&self.x_pow, &self.central);
        if j0 == 1 {
            lead *= &self.yn;
        }
        let row = ExactRow { num: &lead * &plain, num_y: &lead * &weighted, den: self.den.clone() };
        // advance to n + 1
        self.central = &self.central * (2 * (2 * n + 1)) / (n + 1);
        self.x_pow = &self.x_pow * &self.xn;
        self.den = &self.den * &self.den_step;
        self.n += 1;
        row
    }
}

fn to_complex<R: Real>(z: &Complex<BigInt>, den: &R, bits: u32) -> Complex<R> {
    Complex::new(R::from_bigint(&z.re, bits) / den, R::from_bigint(&z.im, bits) / den)
}

/// `A`, `theta_x A` and `theta_y A` from one pass over the rows.
#[derive(Clone, Debug)]
pub struct DoubleSeries<R: Real> {
    pub a: BoundedValue<R>,
    pub theta_x: BoundedValue<R>,
    pub theta_y: BoundedValue<R>,
    pub rows: usize,
}

pub fn double_series<R: Real>(pt: &SeriesPoint, ctx: &PrecisionContext) -> Result<DoubleSeries<R>, SeriesError> {
    let conv = converges_absolutely(pt);
    if !conv.converges {
        return Err(SeriesError::NotConvergent(conv.ratio));
    }
    let bits = ctx.bits();
    let model = GeometricTailModel::from_ratio(row_ratio(pt))?.weighted(1)?;
    let factor = R::from_f64(model.tail_factor(), bits);
    let quarter_tol = ctx.tol::<R>() / R::from_int(4, bits);
    let mut gen = RowGenerator::new(pt);
    let (mut a, mut tx, mut ty) = (ctx.czero::<R>(), ctx.czero::<R>(), ctx.czero::<R>());
    for n in 0..MAX_TERMS {
        let row = gen.next_row();
        let den = R::from_bigint(&row.den, bits);
        let plain = to_complex::<R>(&row.num, &den, bits);
        let wy = to_complex::<R>(&row.num_y, &den, bits);
        let wx = plain.scale_by(&R::from_int(n as i64, bits));
        if !plain.all_finite() || !wy.all_finite() {
            return Err(PrecisionError::NonFinite(n).into());
        }
        a = a + &plain;
        tx = tx + &wx;
        ty = ty + &wy;
        if n >= model.onset_index {
            // |theta_y row| <= n |row| is absorbed by the weighted model
            let tail_a = plain.modulus() * &factor;
            let tail_x = wx.modulus() * &factor;
            let tail_y = wy.modulus() * &factor;
            let worst = tail_a.clone().max_of(tail_x.clone()).max_of(tail_y.clone());
            if worst < quarter_tol && n > 0 {
                return Ok(DoubleSeries {
                    a: BoundedValue::new(a, tail_a),
                    theta_x: BoundedValue::new(tx, tail_x),
                    theta_y: BoundedValue::new(ty, tail_y),
                    rows: n + 1,
                });
            }
        }
    }
    Err(PrecisionError::TermLimit(MAX_TERMS).into())
}

pub fn a_double<R: Real>(pt: &SeriesPoint, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SeriesError> {
    Ok(double_series(pt, ctx)?.a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

/// `x dA/dx` or `y dA/dy`.
pub fn a_theta<R: Real>(pt: &SeriesPoint, var: Variable, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SeriesError> {
    let s = double_series(pt, ctx)?;
    Ok(match var {
        Variable::X => s.theta_x,
        Variable::Y => s.theta_y,
    })
}

/// `sum_k (-x y)^k C(2k,k)^2 P_2k(sqrt(1 + 4x/y))`.
pub fn a_legendre<R: Real>(pt: &SeriesPoint, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SeriesError> {
    let bits = ctx.bits();
    let ratio_q = pt.four_x_over_y();
    let q: Complex<R> = from_gaussian(&ratio_q, bits);
    let z = (ctx.cone::<R>() + q.clone()).sqrt_principal();
    let w_abs = q.modulus().sqrt();
    let xy: Complex<R> = from_gaussian(&pt.xy(), bits);
    let base = -xy.clone();
    let growth = (z.modulus() + &w_abs).powi(2);
    // |P_n(z)| <= (|z| + |sqrt(z^2 - 1)|)^n and C(2k+2,k+1)/C(2k,k) < 4
    let ratio = 16.0 * xy.modulus().to_f64() * growth.to_f64();
    if ratio >= 1.0 {
        return Err(SeriesError::NotConvergent(ratio));
    }
    let model = GeometricTailModel::new(ratio, 0)?;
    let mut legendre = LegendreSequence::new(&z, ctx);
    let mut power = ctx.cone::<R>();
    let mut central = R::from_int(1, bits);
    let mut majorant = R::from_int(1, bits);
    let step_major = xy.modulus() * &growth;
    let v = sum_majorized(
        |k| {
            if k > 0 {
                power = power.clone() * &base;
                let kk = k as i64;
                let c = R::from_int(2 * (2 * kk - 1), bits) / R::from_int(kk, bits);
                central = central.clone() * &c;
                majorant = majorant.clone() * &step_major;
            }
            // P_2k, then skip P_2k+1
            let p = legendre.next().expect("infinite");
            let _ = legendre.next();
            let t = (power.clone() * p).scale_by(&(central.clone() * &central));
            (t, majorant.clone() * &central * &central)
        },
        &model,
        ctx,
    )?;
    Ok(v)
}

/// Summand families for rational `1/pi` series.
#[derive(Clone, Debug, PartialEq)]
pub enum PiSeriesForm {
    /// `sum_n (a n + b) row_n(x, y)` over the double series.
    Double(SeriesPoint),
    /// `sum_k (a k + b) base^k C(2k,k)^2 T_2k(tb, tc)`.
    Trinomial { base: BigRational, tb: BigInt, tc: BigInt },
}

/// `sum (a n + b) u_n = target / pi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiSeriesSpec {
    pub a: BigRational,
    pub b: BigRational,
    pub form: PiSeriesForm,
    pub target: BigRational,
}

#[derive(Clone, Debug)]
pub struct PiSeriesValue<R: Real> {
    pub lhs: BoundedValue<R>,
    pub rhs: Complex<R>,
    pub terms: usize,
}

impl<R: Real> PiSeriesValue<R> {
    pub fn residual(&self) -> R {
        (self.lhs.approx.clone() - &self.rhs).modulus()
    }
}

pub fn eval_pi_series<R: Real>(spec: &PiSeriesSpec, ctx: &PrecisionContext) -> Result<PiSeriesValue<R>, SeriesError> {
    let bits = ctx.bits();
    let a = R::from_ratio(&spec.a, bits);
    let b = R::from_ratio(&spec.b, bits);
    let rhs = Complex::new(R::from_ratio(&spec.target, bits) / ctx.pi::<R>(), R::zero());
    match &spec.form {
        PiSeriesForm::Double(pt) => {
            let s = double_series::<R>(pt, ctx)?;
            let lhs = s.a.scale(&Complex::new(b, R::zero())).add(&s.theta_x.scale(&Complex::new(a, R::zero())));
            Ok(PiSeriesValue { lhs, rhs, terms: s.rows })
        }
        PiSeriesForm::Trinomial { base, tb, tc } => {
            let base_abs: f64 = f64::from_ratio(&base.abs(), 53);
            let growth = (f64::from_bigint(&tb.abs(), 53) + 2.0 * f64::from_bigint(&tc.abs(), 53).sqrt()).powi(2);
            let ratio = 16.0 * base_abs * growth;
            if ratio >= 1.0 {
                return Err(SeriesError::NotConvergent(ratio));
            }
            let model = GeometricTailModel::from_ratio(ratio)?.weighted(1)?;
            let base_r = R::from_ratio(base, bits);
            let growth_r = (R::from_bigint(&tb.abs(), bits) + R::from_bigint(&tc.abs(), bits).sqrt() * R::from_int(2, bits)).powi(2);
            let step_major = base_r.abs() * growth_r;
            let mut trinomials = TrinomialSequence::new(tb, tc);
            let mut power = R::from_int(1, bits);
            let mut central = R::from_int(1, bits);
            let mut majorant = R::from_int(1, bits);
            let mut count = 0usize;
            let lhs = sum_majorized(
                |k| {
                    let kk = k as i64;
                    if k > 0 {
                        power = power.clone() * &base_r;
                        central = central.clone() * R::from_int(2 * (2 * kk - 1), bits) / R::from_int(kk, bits);
                        majorant = majorant.clone() * &step_major;
                    }
                    let t2k = trinomials.next().expect("infinite");
                    let _ = trinomials.next();
                    let lin = a.clone() * R::from_int(kk, bits) + &b;
                    let c2 = central.clone() * &central;
                    let t = lin.clone() * &power * &c2 * R::from_bigint(&t2k, bits);
                    count = k + 1;
                    (Complex::new(t, R::zero()), lin.abs() * &majorant * &c2)
                },
                &model,
                ctx,
            )?;
            Ok(PiSeriesValue { lhs, rhs, terms: count })
        }
    }
}

/// Exact row `n` of the double series as a Gaussian rational; test helper
/// and reference for the floating evaluation.
pub fn exact_row(pt: &SeriesPoint, n: u64) -> GaussianRational {
    let mut gen = RowGenerator::new(pt);
    let mut row = gen.next_row();
    for _ in 0..n {
        row = gen.next_row();
    }
    let d = BigRational::from_integer(row.den);
    Complex::new(BigRational::from_integer(row.num.re) / &d, BigRational::from_integer(row.num.im) / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::gaussian_frac;
    use crate::scalar::BigFloat;

    fn brute_row(pt: &SeriesPoint, n: u64) -> GaussianRational {
        // direct transcription of the defining double sum
        let mut acc = gaussian_frac(0, 0, 1);
        for k in 0..=n {
            if 2 * k < n {
                continue;
            }
            let coeff = binomial(n, k).pow(2) * binomial(2 * k, n) * binomial(2 * n, n);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let mut term = Complex::new(BigRational::from_integer(coeff * sign), BigRational::zero());
            for _ in 0..n {
                term *= &pt.x;
            }
            for _ in 0..(2 * k - n) {
                term *= &pt.y;
            }
            acc += term;
        }
        acc
    }

    #[test]
    fn rows_match_definition() {
        for (x, y) in [("1/480", "8"), ("i/240", "6i"), ("-1/48", "9/8"), ("1/3+i/5", "7/2-i")] {
            let pt = SeriesPoint::parse(x, y).unwrap();
            for n in 0..12 {
                assert_eq!(exact_row(&pt, n), brute_row(&pt, n), "{x} {y} n={n}");
            }
        }
    }

    #[test]
    fn convergence_examples() {
        let c = converges_absolutely(&SeriesPoint::parse("1/480", "8").unwrap());
        assert!((c.ratio - 0.284444).abs() < 1e-5 && c.converges);
        let c = converges_absolutely(&SeriesPoint::parse("1", "1").unwrap());
        assert!(!c.converges);
        let c = converges_absolutely(&SeriesPoint::parse("0", "5").unwrap());
        assert_eq!(c.ratio, 0.0);
        assert!(SeriesPoint::parse("1", "0").is_err());
    }

    #[test]
    fn zero_x_gives_one() {
        let ctx = PrecisionContext::new(40).unwrap();
        let v = a_double::<BigFloat>(&SeriesPoint::parse("0", "3").unwrap(), &ctx).unwrap();
        assert!((v.approx - ctx.cone::<BigFloat>()).modulus().is_zero());
    }

    #[test]
    fn legendre_form_agrees() {
        let ctx = PrecisionContext::new(60).unwrap();
        for (x, y) in [("1/480", "8"), ("i/240", "6i"), ("-1/288", "225/16")] {
            let pt = SeriesPoint::parse(x, y).unwrap();
            let d = a_double::<BigFloat>(&pt, &ctx).unwrap();
            let l = a_legendre::<BigFloat>(&pt, &ctx).unwrap();
            assert!((d.approx - l.approx).modulus().log10_abs() < -29.0, "{x} {y}");
        }
    }
}
