use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::equations::g_from_beta;
use super::{modular_eq2, modular_eq3_residual, r_p_with, tau0, AlphaBeta, BetaFromAlpha, ModularError, NamedResidual};
use super::singular::k5_radical;
use crate::complex::{gaussian_frac, gaussian_int, ComplexExt, CutSide};
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::series::SeriesPoint;
use crate::special::quadratic::rational;
use crate::special::{e2, hyp_pair, moduli, QuadraticIrrational, UpperHalfPoint};
use crate::wz::{d_a_dx_hyper, Provenance, XYPair};

/// `a + b sqrt 5` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt5 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt5 { a, b }
    }

    pub fn sqrt5_times(b: BigRational) -> Self {
        QSqrt5 { a: BigRational::zero(), b }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QSqrt5 { a: &self.a * c, b: &self.b * c }
    }

    pub fn add(&self, o: &Self) -> Self {
        QSqrt5 { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let five = BigRational::from_integer(5.into());
        QSqrt5 { a: &self.a * &o.a + &self.b * &o.b * five, b: &self.a * &o.b + &self.b * &o.a }
    }

    pub fn to_real<R: Real>(&self, ctx: &PrecisionContext) -> R {
        let bits = ctx.bits();
        R::from_ratio(&self.a, bits) + R::from_ratio(&self.b, bits) * ctx.int::<R>(5).sqrt()
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) if self.b.is_one() => write!(f, "sqrt5"),
            (true, false) => write!(f, "{} sqrt5", self.b),
            (false, false) => write!(f, "{} + {} sqrt5", self.a, self.b),
        }
    }
}

/// `625 x^8 - 47597450000 x^7 + ... + 44943616`, leading coefficient first.
pub const S2_MINPOLY: [i64; 9] = [
    625,
    -47_597_450_000,
    64_879_599_000,
    34_024_656_000,
    -58_306_698_000,
    168_524_800,
    8_089_408_640,
    722_959_360,
    44_943_616,
];

/// Minimal polynomial of `s1 / (52 alpha)`, leading coefficient first.
pub const S1_OVER_52_ALPHA_MINPOLY: [i64; 9] = [1, 0, 14_197_606, 0, -56_569_153, 0, 15_962_594, 0, 175_561];

/// `|p(z)| / sum |c_i| |z|^i`.
pub fn relative_poly_residual<R: Real>(coeffs: &[i64], z: &Complex<R>, ctx: &PrecisionContext) -> R {
    let mut acc = ctx.czero::<R>();
    let mut scale = ctx.int::<R>(0);
    let abs = z.modulus();
    for &c in coeffs {
        acc = acc * z + ctx.cint::<R>(c, 0);
        scale = scale * &abs + ctx.int::<R>(c.abs());
    }
    acc.modulus() / scale
}

/// Stepwise evaluation `E2(tau0) = pi_coeff / pi + s2 theta3(tau0)^4`:
/// `i/sqrt5` by inversion and degree 5, `3i/sqrt5` by degree 3, then
/// `tau0` by degree 2 through `2 tau0 = 1 + 3i/sqrt5`.
#[derive(Clone, Debug)]
pub struct E2Chain<R: Real> {
    /// exact coefficient of `1/pi`
    pub pi_coeff: QSqrt5,
    /// `pi (E2(tau0) - s2 theta3(tau0)^4)`
    pub pi_coeff_numeric: Complex<R>,
    pub s2: Complex<R>,
    /// intermediate coefficients of `theta3^4` at `i/sqrt5` and `3i/sqrt5`
    pub c: Complex<R>,
    pub r2: Complex<R>,
    pub steps: Vec<NamedResidual<R>>,
}

impl<R: Real> E2Chain<R> {
    pub fn max_residual(&self) -> R {
        self.steps.iter().fold(R::zero(), |m, s| m.max_of(s.residual.clone()))
    }
}

fn e2_check<R: Real>(
    name: &str,
    t: &UpperHalfPoint<R>,
    pi_coeff: &QSqrt5,
    coeff: &Complex<R>,
    theta3_sq: &Complex<R>,
    ctx: &PrecisionContext,
) -> Result<NamedResidual<R>, ModularError> {
    let lhs = e2(t, ctx)?.approx;
    let rhs = Complex::new(pi_coeff.to_real::<R>(ctx) / ctx.pi::<R>(), R::zero())
        + coeff.clone() * theta3_sq * theta3_sq;
    Ok(NamedResidual::between(name, &lhs, &rhs))
}

pub fn e2_tau0_chain<R: Real>(ctx: &PrecisionContext) -> Result<E2Chain<R>, ModularError> {
    let one = ctx.cone::<R>();
    let two = ctx.cint::<R>(2, 0);
    let sqrt5 = ctx.int::<R>(5).sqrt();
    let mut steps = Vec::new();

    // i/sqrt5: l = k(i sqrt5) = k'(i/sqrt5)
    let t1 = UpperHalfPoint::<R>::from_exact(&QuadraticIrrational::imaginary(rational(1, 5), rational(5, 1))?, ctx)?;
    let (k5, k5p) = k5_radical::<R>(ctx);
    let r5 = r_p_with(5, &k5, &k5p, &k5p, &k5, ctx)?;
    let c = -(r5 / Complex::new(sqrt5.clone() * ctx.int::<R>(2), R::zero()));
    let c_display = -(Complex::new((ctx.int::<R>(1) + &sqrt5) / ctx.int::<R>(10), R::zero()).sqrt_principal());
    steps.push(NamedResidual::between("singular_coefficient", &c, &c_display));
    let m1 = moduli(&t1, ctx)?;
    let mut pi_coeff = QSqrt5::sqrt5_times(rational(3, 1));
    steps.push(e2_check("e2_i_over_sqrt5", &t1, &pi_coeff, &c, &m1.theta3_sq.approx, ctx)?);

    // 3i/sqrt5
    let t3 = t1.scaled(3, ctx)?;
    let m3 = moduli(&t3, ctx)?;
    steps.push(NamedResidual::new("degree_three_equation", modular_eq3_residual(&t1, ctx)?.0));
    let ratio = m1.theta3_sq.approx.clone() / &m3.theta3_sq.approx;
    let r3 = r_p_with(3, &m3.k.approx, &m3.kprime.approx, &m1.k.approx, &m1.kprime.approx, ctx)?;
    let r2 = (c.clone() * &ratio * &ratio + r3 * &ratio) / ctx.cint::<R>(3, 0);
    pi_coeff = pi_coeff.scale(&rational(1, 3));
    steps.push(e2_check("e2_three_i_over_sqrt5", &t3, &pi_coeff, &r2, &m3.theta3_sq.approx, ctx)?);

    // tau0, with theta3^2(2 tau0) = theta4^2(3i/sqrt5) = k'_3 theta3^2(3i/sqrt5)
    let t0 = UpperHalfPoint::<R>::from_exact(&tau0(), ctx)?;
    let m0 = moduli(&t0, ctx)?;
    let l = moduli(&t0.scaled(2, ctx)?, ctx)?.k.approx;
    steps.push(NamedResidual::new("degree_two_equation", modular_eq2(&t0, ctx)?));
    let rr2 = r_p_with(2, &l, &(one.clone() - l.clone() * &l).sqrt_principal(), &m0.k.approx, &m0.kprime.approx, ctx)?;
    let k3p = m3.kprime.approx.clone();
    let lp1 = one + &l;
    let s2 = two * &r2 / (lp1.clone() * &lp1 * &k3p * &k3p) - rr2 / lp1;
    pi_coeff = pi_coeff.scale(&rational(2, 1));
    steps.push(e2_check("e2_tau0", &t0, &pi_coeff, &s2, &m0.theta3_sq.approx, ctx)?);
    steps.push(NamedResidual::new("s2_minimal_polynomial", relative_poly_residual(&S2_MINPOLY, &s2, ctx)));

    let th4 = m0.theta3_sq.approx.clone() * &m0.theta3_sq.approx;
    let pi_coeff_numeric = (e2(&t0, ctx)?.approx - s2.clone() * th4).scale_by(&ctx.pi::<R>());
    Ok(E2Chain { pi_coeff, pi_coeff_numeric, s2, c, r2, steps })
}

/// Reduction of `233 A + 1054 theta_x A` at `(x, y) = (1/480, 8)` to
/// `s1 F(alpha)^2 + e2_coeff E2(tau0)`.
#[derive(Clone, Debug)]
pub struct SunReduction<R: Real> {
    pub pair: XYPair<R>,
    pub alpha: Complex<R>,
    pub beta: Complex<R>,
    /// `r1 F(a)F(b) + r2 G(a)F(b) + r3 F(a)G(b)`
    pub r: [Complex<R>; 3],
    pub transfer: BetaFromAlpha<R>,
    pub c_ff: Complex<R>,
    pub c_fg: Complex<R>,
    pub e2_coeff: Complex<R>,
    pub s1: Complex<R>,
    pub chain: E2Chain<R>,
    pub checks: Vec<NamedResidual<R>>,
}

impl<R: Real> SunReduction<R> {
    pub fn max_residual(&self) -> R {
        self.checks.iter().fold(R::zero(), |m, s| m.max_of(s.residual.clone()))
    }
}

pub fn sun_reduction<R: Real>(ctx: &PrecisionContext) -> Result<SunReduction<R>, ModularError> {
    let one = ctx.cone::<R>();
    let t0 = UpperHalfPoint::<R>::from_exact(&tau0(), ctx)?;
    let m0 = moduli(&t0, ctx)?;
    let m5 = moduli(&t0.scaled(5, ctx)?, ctx)?;
    let pair = XYPair::new(m0.kprime.approx.clone(), m5.kprime.approx.clone(), Provenance::Modular);
    let pt = SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_int(8, 0))?;
    let d = d_a_dx_hyper(&pair, &pt, ctx)?;
    let x = pt.x_c::<R>(ctx);
    let w = x.clone() * ctx.cint::<R>(1054, 0);
    let r1 = (one.clone() + pair.X.clone() * &pair.Y) * ctx.cint::<R>(233, 0) / ctx.cint::<R>(2, 0) + w.clone() * &d.q;
    let r2 = w.clone() * &d.r;
    let r3 = w * &d.s;

    let alpha = one.clone() - pair.X.clone() * &pair.X;
    let beta = one.clone() - pair.Y.clone() * &pair.Y;
    let transfer = g_from_beta(&AlphaBeta::new(alpha.clone(), beta.clone(), 5), ctx)?;
    let c_ff = r1.clone() * &transfer.t + r3.clone() * &transfer.t1;
    let c_fg = r2.clone() * &transfer.t + r3.clone() * &transfer.t2;
    let six_ca = (one.clone() - &alpha) * ctx.cint::<R>(6, 0);
    let e2_coeff = c_fg.clone() / &six_ca;
    let s1 = c_ff.clone() + e2_coeff.clone() * (alpha.clone() * ctx.cint::<R>(2, 0) - &one);

    let chain = e2_tau0_chain::<R>(ctx)?;
    let sqrt5 = ctx.int::<R>(5).sqrt();
    let c52 = Complex::new(sqrt5 * ctx.int::<R>(52), R::zero());
    let pa = hyp_pair(&alpha, CutSide::Reject, ctx)?;
    let f2 = pa.f.approx.clone() * &pa.f.approx;
    let target = Complex::new(ctx.int::<R>(520) / ctx.pi::<R>(), R::zero());
    let assembled = c_ff.clone() * &f2 + c_fg.clone() * &pa.f.approx * &pa.g.approx;
    let th4 = m0.theta3_sq.approx.clone() * &m0.theta3_sq.approx;
    let checks = vec![
        NamedResidual::between("hypergeometric_theta", &f2, &th4),
        NamedResidual::new("transfer_f", transfer.f_residual.clone()),
        NamedResidual::new("transfer_g", transfer.g_residual.clone()),
        NamedResidual::between("e2_coefficient", &e2_coeff, &c52),
        NamedResidual::new(
            "s1_minimal_polynomial",
            relative_poly_residual(&S1_OVER_52_ALPHA_MINPOLY, &(s1.clone() / (alpha.clone() * ctx.cint::<R>(52, 0))), ctx),
        ),
        NamedResidual::new("cancellation", (s1.clone() + c52 * &chain.s2).modulus()),
        NamedResidual::between("assembled", &assembled, &target),
    ];
    Ok(SunReduction {
        pair,
        alpha,
        beta,
        r: [r1, r2, r3],
        transfer,
        c_ff,
        c_fg,
        e2_coeff,
        s1,
        chain,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn qsqrt5_arithmetic() {
        let a = QSqrt5::new(rational(1, 2), rational(1, 2));
        let sq = a.mul(&a);
        assert_eq!(sq, QSqrt5::new(rational(3, 2), rational(1, 2)));
        assert_eq!(sq.add(&a.scale(&rational(-1, 1))), QSqrt5::new(rational(1, 1), rational(0, 1)));
        assert_eq!(QSqrt5::sqrt5_times(rational(2, 1)).to_string(), "2 sqrt5");
    }

    #[test]
    fn e2_at_tau0() {
        let ctx = PrecisionContext::new(80).unwrap();
        let ch = e2_tau0_chain::<BigFloat>(&ctx).unwrap();
        assert_eq!(ch.pi_coeff, QSqrt5::sqrt5_times(rational(2, 1)));
        for s in &ch.steps {
            assert!(s.residual.is_zero() || s.residual.log10_abs() < -36.0, "{} {}", s.name, s.residual.to_f64());
        }
        let target = ch.pi_coeff.to_real::<BigFloat>(&ctx);
        assert!((ch.pi_coeff_numeric.clone() - Complex::new(target, BigFloat::with_bits(ctx.bits(), 0.0))).modulus().log10_abs() < -36.0);
        assert!((ch.s2.re.to_f64() + 0.043464355).abs() < 1e-9);
        assert!((ch.s2.im.to_f64() - 0.061229289).abs() < 1e-9);
    }

    #[test]
    fn reduction_cancels() {
        let ctx = PrecisionContext::new(80).unwrap();
        let red = sun_reduction::<BigFloat>(&ctx).unwrap();
        for s in &red.checks {
            assert!(s.residual.is_zero() || s.residual.log10_abs() < -33.0, "{} {}", s.name, s.residual.to_f64());
        }
        assert!((red.s1.re.to_f64() - 5.0538411).abs() < 1e-7);
        assert!((red.s1.im.to_f64() + 7.1194683).abs() < 1e-7);
    }
}
