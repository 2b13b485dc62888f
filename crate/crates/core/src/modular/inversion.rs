use num_complex::Complex;

use super::ModularError;
use crate::complex::CutSide;
use crate::complex::ComplexExt;
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::special::hyp_f_sided;

/// Reduces `tau` into the fundamental domain of `Gamma(2)`:
/// `-1 <= Re tau < 1`, `|tau - 1/2| >= 1/2`, `|tau + 1/2| >= 1/2`.
pub fn normalize_gamma2<R: Real>(tau: &Complex<R>, ctx: &PrecisionContext) -> Result<Complex<R>, ModularError> {
    if tau.im <= R::zero() {
        return Err(ModularError::InvalidArgument("tau must lie in the upper half-plane".into()));
    }
    let one = ctx.int::<R>(1);
    let two = ctx.int::<R>(2);
    let half = ctx.cint::<R>(1, 0) / ctx.cint::<R>(2, 0);
    let ctwo = ctx.cint::<R>(2, 0);
    let mut t = tau.clone();
    for _ in 0..256 {
        let shift = ((t.re.clone() + &one) / &two).floor() * &two;
        t.re = t.re.clone() - shift;
        if (t.clone() - &half).modulus() < half.re {
            t = t.clone() / (ctx.cone::<R>() - t.clone() * &ctwo);
        } else if (t.clone() + &half).modulus() < half.re {
            t = t.clone() / (ctx.cone::<R>() + t.clone() * &ctwo);
        } else {
            return Ok(t);
        }
    }
    Err(ModularError::InvalidArgument("reduction did not terminate".into()))
}

/// `tau = i F(X^2) / F(1 - X^2)` for `X = k'(tau)`, reduced by
/// [`normalize_gamma2`].
#[allow(non_snake_case)]
pub fn tau_from_modulus<R: Real>(X: &Complex<R>, ctx: &PrecisionContext) -> Result<Complex<R>, ModularError> {
    let x2 = X.clone() * X;
    let num = hyp_f_sided(&x2, CutSide::Reject, ctx)?.approx;
    let den = hyp_f_sided(&(ctx.cone::<R>() - x2), CutSide::Reject, ctx)?.approx;
    if den.modulus().is_zero() {
        return Err(ModularError::Vanishing("F(1 - X^2)"));
    }
    normalize_gamma2(&(ctx.ci::<R>() * num / den), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::tau0;
    use crate::scalar::BigFloat;
    use crate::special::{modulus_kprime, UpperHalfPoint};

    #[test]
    fn recovers_tau0() {
        let ctx = PrecisionContext::new(50).unwrap();
        let t0 = UpperHalfPoint::<BigFloat>::from_exact(&tau0(), &ctx).unwrap();
        let x = modulus_kprime(&t0, &ctx).unwrap().approx;
        let t = tau_from_modulus(&x, &ctx).unwrap();
        assert!((t - &t0.tau).modulus().log10_abs() < -20.0);
    }

    #[test]
    fn reduction_is_idempotent() {
        let ctx = PrecisionContext::new(30).unwrap();
        let t = crate::complex::cnum::<BigFloat>(3.3, 0.05, ctx.bits());
        let a = normalize_gamma2(&t, &ctx).unwrap();
        let b = normalize_gamma2(&a, &ctx).unwrap();
        assert!((a.clone() - b).modulus().log10_abs() < -25.0);
        assert!(a.re.to_f64() >= -1.0 && a.re.to_f64() < 1.0);
    }
}
