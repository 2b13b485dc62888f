//! Jacobi theta constants, Dedekind eta, the weight-two Eisenstein series and
//! the elliptic moduli they define.
//!
//! Conventions, with `q = exp(pi i tau)`:
//!
//! * `theta3 = sum q^(n^2)`, `theta4 = sum (-1)^n q^(n^2)`
//! * `theta2 = sum exp(pi i tau (n + 1/2)^2)`, summed directly so the result
//!   is analytic in `tau` (no `q^(1/4)` branch)
//! * `k = (theta2/theta3)^2`, `k' = (theta4/theta3)^2`
//! * `E2 = 1 - 24 sum n Q^n / (1 - Q^n)` with `Q = q^2`

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::quadratic::UpperHalfPoint;
use super::SpecialError;
use crate::complex::ComplexExt;
use crate::precision::{sum_majorized, sum_with_tail, BoundedValue, GeometricTailModel, PrecisionContext};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThetaKind {
    Two,
    Three,
    Four,
}

/// `exp(pi i c tau)`.
fn nome<R: Real>(tau: &Complex<R>, c: f64, ctx: &PrecisionContext) -> Complex<R> {
    let pi_c = ctx.pi::<R>() * ctx.real::<R>(c);
    Complex::new(-(tau.im.clone() * &pi_c), tau.re.clone() * &pi_c).exp_c()
}

fn nome_ratio<R: Real>(q: &Complex<R>) -> Result<f64, SpecialError> {
    let r = q.modulus().to_f64();
    if r < 1.0 {
        Ok(r)
    } else {
        Err(SpecialError::NotInUpperHalfPlane(f64::NAN))
    }
}

pub fn theta<R: Real>(
    kind: ThetaKind,
    point: &UpperHalfPoint<R>,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, SpecialError> {
    let tau = &point.tau;
    let q = nome(tau, 1.0, ctx);
    let r = nome_ratio(&q)?;
    let q2 = q.clone() * &q;
    let two = ctx.int::<R>(2);
    match kind {
        ThetaKind::Three | ThetaKind::Four => {
            let alternating = kind == ThetaKind::Four;
            // term k >= 1 is 2 (+-1)^k q^(k^2); successive ratios are q^(2k+1)
            let mut power = ctx.cone::<R>();
            let mut step = q.clone();
            let model = GeometricTailModel::new(r, 1)?;
            let v = sum_with_tail(
                |k| {
                    if k == 0 {
                        return ctx.cone::<R>();
                    }
                    power = power.clone() * &step;
                    step = step.clone() * &q2;
                    let t = power.scale_by(&two);
                    if alternating && k % 2 == 1 {
                        -t
                    } else {
                        t
                    }
                },
                &model,
                ctx,
            )?;
            Ok(v)
        }
        ThetaKind::Two => {
            // 2 e^(pi i tau / 4) sum q^(k(k+1)); successive ratios q^(2k+2)
            let lead = nome(tau, 0.25, ctx).scale_by(&two);
            let mut power = lead.clone();
            let mut step = q2.clone();
            let model = GeometricTailModel::new(r * r, 0)?;
            let v = sum_with_tail(
                |k| {
                    if k == 0 {
                        return lead.clone();
                    }
                    power = power.clone() * &step;
                    step = step.clone() * &q2;
                    power.clone()
                },
                &model,
                ctx,
            )?;
            Ok(v)
        }
    }
}

pub fn theta_all<R: Real>(
    point: &UpperHalfPoint<R>,
    ctx: &PrecisionContext,
) -> Result<[BoundedValue<R>; 3], SpecialError> {
    Ok([
        theta(ThetaKind::Two, point, ctx)?,
        theta(ThetaKind::Three, point, ctx)?,
        theta(ThetaKind::Four, point, ctx)?,
    ])
}

/// `eta(tau) = e^(pi i tau / 12) prod (1 - Q^n)`, `Q = e^(2 pi i tau)`.
pub fn eta<R: Real>(point: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    let tau = &point.tau;
    let big_q = nome(tau, 2.0, ctx);
    nome_ratio(&big_q)?;
    let bits = ctx.bits();
    let quarter_tol = ctx.tol::<R>() / ctx.int::<R>(4);
    let abs_q = big_q.modulus();
    let denom = {
        let d = R::one() - &abs_q;
        d.clone() * &d
    };
    let mut product = ctx.cone::<R>();
    let mut power = big_q.clone();
    let mut abs_power = abs_q.clone();
    for _ in 0..crate::precision::MAX_TERMS {
        product = product.clone() * (ctx.cone::<R>() - &power);
        power = power * &big_q;
        abs_power *= &abs_q;
        // |prod_{n>N} (1 - Q^n) - 1| <= exp(b) - 1 <= 2b, b = |Q|^(N+1) / (1 - |Q|)^2
        let b = abs_power.clone() / &denom;
        if b < quarter_tol {
            let prefactor = nome(tau, 1.0 / 12.0, ctx);
            let err = b * R::from_int(2, bits) * product.modulus() * prefactor.modulus();
            return Ok(BoundedValue::new(product * prefactor, err));
        }
    }
    Err(SpecialError::Precision(crate::precision::PrecisionError::TermLimit(crate::precision::MAX_TERMS)))
}

pub fn e2<R: Real>(point: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    let big_q = nome(&point.tau, 2.0, ctx);
    let r = nome_ratio(&big_q)?;
    let abs_q = big_q.modulus();
    let m24 = ctx.int::<R>(-24);
    let mut power = ctx.cone::<R>();
    let mut abs_power = ctx.int::<R>(1);
    let model = GeometricTailModel::from_ratio(r)?.weighted(1)?;
    // majorant 24 n |Q|^n / (1 - |Q|^n) has ratio <= |Q| (n+1)/n
    let v = sum_majorized(
        |n| {
            if n == 0 {
                return (ctx.cone::<R>(), R::zero());
            }
            power = power.clone() * &big_q;
            abs_power = abs_power.clone() * &abs_q;
            let nn = ctx.int::<R>(n as i64);
            let t = (power.clone() / (ctx.cone::<R>() - &power)).scale_by(&(nn.clone() * &m24));
            let maj = nn * ctx.int::<R>(24) * &abs_power / (R::one() - &abs_power);
            (t, maj)
        },
        &model,
        ctx,
    )?;
    Ok(v)
}

/// `k(tau) = (theta2 / theta3)^2`.
pub fn modulus_k<R: Real>(point: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    let t2 = theta(ThetaKind::Two, point, ctx)?;
    let t3 = theta(ThetaKind::Three, point, ctx)?;
    Ok(t2.div(&t3).powi(2))
}

/// `k'(tau) = (theta4 / theta3)^2`.
pub fn modulus_kprime<R: Real>(
    point: &UpperHalfPoint<R>,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, SpecialError> {
    let t4 = theta(ThetaKind::Four, point, ctx)?;
    let t3 = theta(ThetaKind::Three, point, ctx)?;
    Ok(t4.div(&t3).powi(2))
}

/// Both moduli and `theta3^2` from a single set of theta evaluations.
#[derive(Clone, Debug)]
pub struct Moduli<R: Real> {
    pub k: BoundedValue<R>,
    pub kprime: BoundedValue<R>,
    pub theta3_sq: BoundedValue<R>,
}

pub fn moduli<R: Real>(point: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<Moduli<R>, SpecialError> {
    let [t2, t3, t4] = theta_all(point, ctx)?;
    Ok(Moduli { k: t2.div(&t3).powi(2), kprime: t4.div(&t3).powi(2), theta3_sq: t3.powi(2) })
}

/// Ramanujan's class invariant `G_n = 2^(-1/4) q^(-1/24) prod (1 + q^(2k-1))`,
/// `q = exp(-pi sqrt(n))`.
pub fn class_invariant_g<R: Real>(n: u64, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    let bits = ctx.bits();
    let sqrt_n = R::from_int(n as i64, bits).sqrt();
    let q = (-(ctx.pi::<R>() * &sqrt_n)).exp();
    let q2 = q.clone() * &q;
    let quarter_tol = ctx.tol::<R>() / ctx.int::<R>(4);
    let mut product = R::one();
    let mut power = q.clone();
    loop {
        product *= R::one() + &power;
        power *= &q2;
        // tail factor prod (1 + q^(2k-1)) over the rest is at most exp(2 |q|^(2K+1))
        if power < quarter_tol {
            let prefactor = (ctx.pi::<R>() * &sqrt_n / ctx.int::<R>(24)).exp()
                / ctx.int::<R>(2).sqrt().sqrt();
            let value = product * &prefactor;
            let err = power.clone() * ctx.int::<R>(4) * &value;
            return Ok(BoundedValue::new(Complex::new(value, R::zero()), err));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;
    use crate::special::quadratic::{rational, QuadraticIrrational};
    use num_traits::Zero;
    use rug::Float;

    fn at(tau: (f64, f64), ctx: &PrecisionContext) -> UpperHalfPoint<BigFloat> {
        UpperHalfPoint::new(Complex::new(ctx.real(tau.0), ctx.real(tau.1))).unwrap()
    }

    #[test]
    fn theta3_at_i() {
        let ctx = PrecisionContext::new(80).unwrap();
        let v = theta(ThetaKind::Three, &at((0.0, 1.0), &ctx), &ctx).unwrap();
        let bits = ctx.bits();
        let pi = Float::with_val(bits, rug::float::Constant::Pi);
        let expected = pi.sqrt().sqrt() / Float::with_val(bits, 0.75).gamma();
        let diff = v.approx.re.clone() - BigFloat::from_float(expected);
        assert!(diff.log10_abs() < -39.0);
        assert!(v.approx.im.is_zero() || v.approx.im.log10_abs() < -39.0);
    }

    #[test]
    fn jacobi_quartic_identity() {
        let ctx = PrecisionContext::new(60).unwrap();
        let p = at((0.31, 0.42), &ctx);
        let [t2, t3, t4] = theta_all(&p, &ctx).unwrap();
        let lhs = t3.approx.pow_int(4);
        let rhs = t2.approx.pow_int(4) + t4.approx.pow_int(4);
        assert!((lhs - rhs).modulus().log10_abs() < -29.0);
    }

    #[test]
    fn theta2_is_analytic_across_odd_real_parts() {
        // theta2(tau + 2) = i theta2(tau), so k(tau + 2) = -k(tau) and k has
        // period 4; a principal q^(1/4) would break both.
        let ctx = PrecisionContext::new(50).unwrap();
        let base = at((0.9, 0.5), &ctx);
        let shift = |n: i64| {
            let tau = base.tau.clone() + ctx.cint::<BigFloat>(n, 0);
            modulus_k(&UpperHalfPoint::new(tau).unwrap(), &ctx).unwrap()
        };
        let (a, b, c) = (shift(0), shift(2), shift(4));
        assert!((a.approx.clone() + &b.approx).modulus().log10_abs() < -24.0);
        assert!((a.approx.clone() - &c.approx).modulus().log10_abs() < -24.0);
        let d = modulus_k(&at((1.0 - 1e-9, 0.5), &ctx), &ctx).unwrap();
        let e = modulus_k(&at((1.0 + 1e-9, 0.5), &ctx), &ctx).unwrap();
        assert!((d.approx - e.approx).modulus().to_f64() < 1e-7);
    }

    #[test]
    fn e2_at_i() {
        let ctx = PrecisionContext::new(60).unwrap();
        let v = e2(&at((0.0, 1.0), &ctx), &ctx).unwrap();
        let expected = ctx.int::<BigFloat>(3) / ctx.pi::<BigFloat>();
        assert!((v.approx.re.clone() - expected).log10_abs() < -29.0);
    }

    #[test]
    fn eta_theta_relation() {
        // theta3(tau) = eta(tau)^5 / (eta(tau/2)^2 eta(2 tau)^2)
        let ctx = PrecisionContext::new(50).unwrap();
        let tau = (0.2, 0.7);
        let p = at(tau, &ctx);
        let half = at((tau.0 / 2.0, tau.1 / 2.0), &ctx);
        let double = at((tau.0 * 2.0, tau.1 * 2.0), &ctx);
        let e1 = eta(&p, &ctx).unwrap().approx;
        let eh = eta(&half, &ctx).unwrap().approx;
        let ed = eta(&double, &ctx).unwrap().approx;
        let rhs = e1.pow_int(5) / (eh.pow_int(2) * ed.pow_int(2));
        let t3 = theta(ThetaKind::Three, &p, &ctx).unwrap().approx;
        assert!((t3 - rhs).modulus().log10_abs() < -24.0);
    }

    #[test]
    fn moduli_complementary() {
        let ctx = PrecisionContext::new(50).unwrap();
        let m = moduli(&at((-0.37, 0.29), &ctx), &ctx).unwrap();
        let s = m.k.approx.pow_int(2) + m.kprime.approx.pow_int(2) - ctx.cone::<BigFloat>();
        assert!(s.modulus().log10_abs() < -24.0);
    }

    #[test]
    fn class_invariant_matches_moduli() {
        let ctx = PrecisionContext::new(60).unwrap();
        let g = class_invariant_g::<BigFloat>(5, &ctx).unwrap();
        let tau = QuadraticIrrational::imaginary(rational(1, 1), rational(5, 1)).unwrap();
        let m: Moduli<BigFloat> = moduli(&UpperHalfPoint::from_exact(&tau, &ctx).unwrap(), &ctx).unwrap();
        let kk = m.k.approx.re.clone() * &m.kprime.approx.re * ctx.int::<BigFloat>(2);
        let check = g.approx.re.powi(12) * kk - BigFloat::from_int(1, ctx.bits());
        assert!(check.log10_abs() < -29.0);
    }
}
