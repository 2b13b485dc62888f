use num_complex::Complex;

use super::{tau0, ModularError, NamedResidual};
use crate::complex::{gaussian_frac, gaussian_int, ComplexExt};
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::series::SeriesPoint;
use crate::special::quadratic::rational;
use crate::special::theta::class_invariant_g;
use crate::special::{moduli, QuadraticIrrational, UpperHalfPoint};
use crate::wz::{relations_residual, XYPair};

/// `k_n = k(i sqrt n)`, `k'_n` and Ramanujan's class invariant `G_n`.
#[derive(Clone, Debug)]
pub struct SingularValueRecord<R: Real> {
    pub n: u64,
    pub k: Complex<R>,
    pub kprime: Complex<R>,
    pub g: R,
}

impl<R: Real> SingularValueRecord<R> {
    /// `|k^2 + k'^2 - 1|`
    pub fn pythagoras_residual(&self, ctx: &PrecisionContext) -> R {
        (self.k.clone() * &self.k + self.kprime.clone() * &self.kprime - ctx.cone::<R>()).modulus()
    }

    /// `|2 k k' G^12 - 1|`
    pub fn class_invariant_residual(&self, ctx: &PrecisionContext) -> R {
        let g12 = Complex::new(self.g.powi(12), R::zero());
        (self.k.clone() * &self.kprime * g12 * ctx.cint::<R>(2, 0) - ctx.cone::<R>()).modulus()
    }
}

pub fn singular_value<R: Real>(n: u64, ctx: &PrecisionContext) -> Result<SingularValueRecord<R>, ModularError> {
    let q = QuadraticIrrational::imaginary(rational(1, 1), rational(n as i64, 1))?;
    let m = moduli(&UpperHalfPoint::from_exact(&q, ctx)?, ctx)?;
    let g = class_invariant_g::<R>(n, ctx)?.approx.re;
    Ok(SingularValueRecord { n, k: m.k.approx, kprime: m.kprime.approx, g })
}

fn sqrt_of<R: Real>(v: R) -> Complex<R> {
    Complex::new(v, R::zero()).sqrt_principal()
}

/// `k(i sqrt 5)` and `k'(i sqrt 5)` from `(sqrt(sqrt5 - 1) -+ sqrt(3 - sqrt5)) / 2`.
pub fn k5_radical<R: Real>(ctx: &PrecisionContext) -> (Complex<R>, Complex<R>) {
    let s5 = ctx.int::<R>(5).sqrt();
    let a = sqrt_of(s5.clone() - ctx.int::<R>(1));
    let b = sqrt_of(ctx.int::<R>(3) - s5);
    let two = ctx.cint::<R>(2, 0);
    ((a.clone() - &b) / &two, (a + b) / two)
}

/// `(sqrt((7 + 3e)/4) - sqrt((3 + 3e)/4))^4 (sqrt((3 + e)/2) - s sqrt((1 + e)/2))^4`
/// with `e = +-sqrt 5` and `s = +-1`.
fn unit_product<R: Real>(e: &R, s: i64, ctx: &PrecisionContext) -> (Complex<R>, Complex<R>) {
    let four = ctx.int::<R>(4);
    let two = ctx.int::<R>(2);
    let three = ctx.int::<R>(3);
    let a = sqrt_of((ctx.int::<R>(7) + three.clone() * e) / &four) - sqrt_of((three.clone() + three * e) / four);
    let root = sqrt_of((ctx.int::<R>(1) + e.clone()) / &two);
    let b = sqrt_of((ctx.int::<R>(3) + e.clone()) / two) - root.scale_by(&ctx.int::<R>(s));
    (a, b)
}

/// `k(10 tau0) = i (...)^4 (...)^4`.
pub fn k10_tau0_radical<R: Real>(ctx: &PrecisionContext) -> Complex<R> {
    let s5 = ctx.int::<R>(5).sqrt();
    let (a, b) = unit_product(&s5, 1, ctx);
    ctx.ci::<R>() * a.pow_int(4) * b.pow_int(4)
}

/// Radical forms of `X = k'(tau0)`, `Y = k'(5 tau0)`, `XY` and `X/Y`.
#[derive(Clone, Debug)]
pub struct XYRadicals<R: Real> {
    pub x: Complex<R>,
    pub y: Complex<R>,
    pub xy: Complex<R>,
    pub x_over_y: Complex<R>,
}

pub fn xy_radicals<R: Real>(ctx: &PrecisionContext) -> XYRadicals<R> {
    let e = -ctx.int::<R>(5).sqrt();
    let (a, b1) = unit_product(&e, 1, ctx);
    let (_, b2) = unit_product(&e, -1, ctx);
    let i = ctx.ci::<R>();
    XYRadicals {
        x: i.clone() * a.pow_int(4) * b1.pow_int(4),
        y: i * a.pow_int(4) * b2.pow_int(4),
        xy: -a.pow_int(8),
        x_over_y: b1.pow_int(8),
    }
}

/// Compares the radical displays with theta evaluations and with each other.
pub fn verify_radicals<R: Real>(ctx: &PrecisionContext) -> Result<Vec<NamedResidual<R>>, ModularError> {
    let t0 = UpperHalfPoint::<R>::from_exact(&tau0(), ctx)?;
    let x = moduli(&t0, ctx)?.kprime.approx;
    let y = moduli(&t0.scaled(5, ctx)?, ctx)?.kprime.approx;
    let k10 = moduli(&t0.scaled(10, ctx)?, ctx)?.k.approx;
    let rad = xy_radicals::<R>(ctx);
    let k10r = k10_tau0_radical::<R>(ctx);
    let one = ctx.cone::<R>();
    let link = (one.clone() - &k10r) / (one + &k10r);
    let (k5, k5p) = k5_radical::<R>(ctx);
    let sv = singular_value::<R>(5, ctx)?;

    let pt = SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_int(8, 0))?;
    let rel = relations_residual(&XYPair::manual(rad.x.clone(), rad.y.clone()), &pt, ctx)?;

    Ok(vec![
        NamedResidual::between("x_radical", &rad.x, &x),
        NamedResidual::between("y_radical", &rad.y, &y),
        NamedResidual::between("k10_radical", &k10r, &k10),
        NamedResidual::between("xy_display", &rad.xy, &(rad.x.clone() * &rad.y)),
        NamedResidual::between("x_over_y_display", &rad.x_over_y, &(rad.x.clone() / &rad.y)),
        NamedResidual::between("degree_two_link", &link, &rad.y),
        NamedResidual::new("radical_relation_1", rel.r1),
        NamedResidual::new("radical_relation_2", rel.r2),
        NamedResidual::between("k5_radical", &k5, &sv.k),
        NamedResidual::between("k5_prime_radical", &k5p, &sv.kprime),
    ])
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn radicals_agree_with_theta() {
        let ctx = PrecisionContext::new(80).unwrap();
        for c in verify_radicals::<BigFloat>(&ctx).unwrap() {
            assert!(c.residual.is_zero() || c.residual.log10_abs() < -38.0, "{} {}", c.name, c.residual.to_f64());
        }
    }

    #[test]
    fn class_invariants() {
        let ctx = PrecisionContext::new(60).unwrap();
        for n in [1u64, 3, 5, 7, 45] {
            let s = singular_value::<BigFloat>(n, &ctx).unwrap();
            assert!(s.pythagoras_residual(&ctx).log10_abs() < -28.0);
            assert!(s.class_invariant_residual(&ctx).log10_abs() < -28.0);
        }
    }
}
