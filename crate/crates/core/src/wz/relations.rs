use num_complex::Complex;

use super::{WzError, XYPair};
use crate::complex::{gaussian_int, ComplexExt};
use crate::poly::BiPoly;
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::series::SeriesPoint;

/// Absolute residuals of the two relations in their rational form.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationResidual<R: Real> {
    pub r1: R,
    pub r2: R,
}

impl<R: Real> RelationResidual<R> {
    pub fn max(&self) -> R {
        self.r1.clone().max_of(self.r2.clone())
    }
}

/// Denominator-free forms
///
/// ```text
/// P1 = (X - Y)^2 + 16 x y (1 + X Y)^2
/// P2 = (1 + 4x/y)(X - Y)^2 (1 + X Y)^2 - (X + Y)^2 (1 - X Y)^2
/// ```
pub fn relation_polynomials(pt: &SeriesPoint) -> (BiPoly, BiPoly) {
    let one = BiPoly::constant(gaussian_int(1, 0));
    let x = BiPoly::x();
    let y = BiPoly::y();
    let xy = x.mul(&y);
    let diff2 = x.sub(&y).pow(2);
    let plus2 = one.add(&xy).pow(2);
    let sum2 = x.add(&y).pow(2);
    let minus2 = one.sub(&xy).pow(2);
    let c1 = pt.xy() * gaussian_int(16, 0);
    let c2 = pt.four_x_over_y() + gaussian_int(1, 0);
    let p1 = diff2.add(&plus2.scale(&c1));
    let p2 = diff2.mul(&plus2).scale(&c2).sub(&sum2.mul(&minus2));
    (p1, p2)
}

#[allow(non_snake_case)]
pub fn relations_residual<R: Real>(
    pair: &XYPair<R>,
    pt: &SeriesPoint,
    ctx: &PrecisionContext,
) -> Result<RelationResidual<R>, WzError> {
    let one = ctx.cone::<R>();
    let (X, Y) = (&pair.X, &pair.Y);
    let plus = one.clone() + X.clone() * Y;
    if plus.modulus().is_zero() {
        return Err(WzError::Degenerate);
    }
    let xy: Complex<R> = crate::complex::from_gaussian(&pt.xy(), ctx.bits());
    let q: Complex<R> = crate::complex::from_gaussian(&pt.four_x_over_y(), ctx.bits());
    let diff = X.clone() - Y;
    let u = diff.clone() / (plus.clone() * ctx.cint::<R>(4, 0));
    let r1 = (-xy - u.clone() * &u).modulus();
    let num = (X.clone() + Y) * (one.clone() - X.clone() * Y);
    let r2 = if diff.modulus().is_zero() {
        let w = num / &plus;
        (w.clone() * &w).modulus()
    } else {
        let w = num / (diff * &plus);
        (one + q - w.clone() * &w).modulus()
    };
    Ok(RelationResidual { r1, r2 })
}
