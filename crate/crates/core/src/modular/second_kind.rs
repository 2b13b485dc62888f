use num_complex::Complex;

use super::ModularError;
use crate::complex::ComplexExt;
use crate::precision::PrecisionContext;
use crate::scalar::Real;

/// Multiplier of the second kind `R_p(l, k)`, which equals
/// `(p E2(p tau) - E2(tau)) / (theta3^2(p tau) theta3^2(tau))` for
/// `k = k(tau)`, `l = k(p tau)`:
///
/// ```text
/// R_2 = k' + l
/// R_3 = 1 + k l + k' l'
/// R_5 = (3 + k l + k' l') sqrt((1 + k l + k' l') / 2)
/// ```
///
/// Complementary moduli are taken as principal `sqrt(1 - m^2)`; use
/// [`r_p_with`] to supply them.
pub fn r_p<R: Real>(p: u32, l: &Complex<R>, k: &Complex<R>, ctx: &PrecisionContext) -> Result<Complex<R>, ModularError> {
    let one = ctx.cone::<R>();
    let lp = (one.clone() - l.clone() * l).sqrt_principal();
    let kp = (one - k.clone() * k).sqrt_principal();
    r_p_with(p, l, &lp, k, &kp, ctx)
}

pub fn r_p_with<R: Real>(
    p: u32,
    l: &Complex<R>,
    lp: &Complex<R>,
    k: &Complex<R>,
    kp: &Complex<R>,
    ctx: &PrecisionContext,
) -> Result<Complex<R>, ModularError> {
    let one = ctx.cone::<R>();
    let s = k.clone() * l + kp.clone() * lp;
    match p {
        2 => Ok(kp.clone() + l),
        3 => Ok(one + s),
        5 => {
            let root = ((one.clone() + &s) / ctx.cint::<R>(2, 0)).sqrt_principal();
            Ok((ctx.cint::<R>(3, 0) + s) * root)
        }
        _ => Err(ModularError::UnsupportedDegree(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;
    use crate::special::{e2, moduli, UpperHalfPoint};

    #[test]
    fn matches_eisenstein_definition() {
        let ctx = PrecisionContext::new(60).unwrap();
        let bits = ctx.bits();
        for (re, im) in [(0.0, 1.0), (0.0, 1.1), (0.3, 0.8), (-0.4, 0.7)] {
            let t = UpperHalfPoint::<BigFloat>::new(crate::complex::cnum(re, im, bits)).unwrap();
            let m = moduli(&t, &ctx).unwrap();
            for p in [2u32, 3, 5] {
                let tp = t.scaled(p as i64, &ctx).unwrap();
                let n = moduli(&tp, &ctx).unwrap();
                let def = (e2(&tp, &ctx).unwrap().approx * ctx.cint::<BigFloat>(p as i64, 0) - e2(&t, &ctx).unwrap().approx)
                    / (n.theta3_sq.approx.clone() * &m.theta3_sq.approx);
                let r = r_p_with(p, &n.k.approx, &n.kprime.approx, &m.k.approx, &m.kprime.approx, &ctx).unwrap();
                assert!((def - r).modulus().log10_abs() < -27.0, "p = {p} at {re}+{im}i");
            }
        }
    }

    #[test]
    fn rejects_other_degrees() {
        let ctx = PrecisionContext::new(30).unwrap();
        let z = ctx.czero::<BigFloat>();
        assert_eq!(r_p(7, &z, &z, &ctx), Err(ModularError::UnsupportedDegree(7)));
    }
}
