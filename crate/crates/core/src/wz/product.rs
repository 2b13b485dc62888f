use num_complex::Complex;

use super::{WzError, XYPair};
use crate::complex::{ComplexExt, CutSide};
use crate::precision::{BoundedValue, PrecisionContext};
use crate::scalar::Real;
use crate::series::SeriesPoint;
use crate::special::{hyp_pair, HypergeometricPair};

/// `(1 + X Y)/2 * F(1 - X^2) F(1 - Y^2)`.
///
/// `side` resolves arguments on the cut `[1, inf)`; [`CutSide::Reject`]
/// turns them into an error.
pub fn wz_product<R: Real>(pair: &XYPair<R>, side: CutSide, ctx: &PrecisionContext) -> Result<BoundedValue<R>, WzError> {
    let (fa, fb) = factors(pair, side, ctx)?;
    let half = (ctx.cone::<R>() + pair.X.clone() * &pair.Y) / ctx.cint::<R>(2, 0);
    Ok(fa.f.mul(&fb.f).scale(&half))
}

fn factors<R: Real>(
    pair: &XYPair<R>,
    side: CutSide,
    ctx: &PrecisionContext,
) -> Result<(HypergeometricPair<R>, HypergeometricPair<R>), WzError> {
    let one = ctx.cone::<R>();
    let alpha = one.clone() - pair.X.clone() * &pair.X;
    let beta = one - pair.Y.clone() * &pair.Y;
    Ok((hyp_pair(&alpha, side, ctx)?, hyp_pair(&beta, side, ctx)?))
}

/// `dA/dx = q F(a)F(b) + r G(a)F(b) + s F(a)G(b)` with `a = 1 - X^2`,
/// `b = 1 - Y^2`, along with the ingredients.
#[allow(non_snake_case)]
#[derive(Clone, Debug)]
pub struct WzDerivative<R: Real> {
    pub value: BoundedValue<R>,
    pub dX: Complex<R>,
    pub dY: Complex<R>,
    pub q: Complex<R>,
    pub r: Complex<R>,
    pub s: Complex<R>,
}

/// `dA/dx` at fixed `y`, from the implicit derivatives of the relations
///
/// ```text
/// -y  = (X - Y)/(8 (1 + XY)^3) [(1 + Y^2) X' - (1 + X^2) Y']
/// 4/y = 4 (X + Y)(1 - XY)/((X - Y)(1 + XY))^3
///         [X (1 + Y^2)(1 - X^2) Y' - Y (1 + X^2)(1 - Y^2) X']
/// ```
#[allow(non_snake_case)]
pub fn d_a_dx_hyper<R: Real>(
    pair: &XYPair<R>,
    pt: &SeriesPoint,
    ctx: &PrecisionContext,
) -> Result<WzDerivative<R>, WzError> {
    let one = ctx.cone::<R>();
    let (X, Y) = (&pair.X, &pair.Y);
    let y = pt.y_c::<R>(ctx);
    let plus = one.clone() + X.clone() * Y;
    let minus = one.clone() - X.clone() * Y;
    let diff = X.clone() - Y;
    if plus.modulus().is_zero() {
        return Err(WzError::Degenerate);
    }
    let x2 = X.clone() * X;
    let y2 = Y.clone() * Y;
    let alpha = one.clone() - &x2;
    let beta = one.clone() - &y2;

    let c1 = diff.clone() / (plus.pow_int(3) * ctx.cint::<R>(8, 0));
    let a11 = c1.clone() * (one.clone() + &y2);
    let a12 = -(c1 * (one.clone() + &x2));
    let c2 = (X.clone() + Y) * &minus * ctx.cint::<R>(4, 0) / (diff * &plus).pow_int(3);
    let a21 = -(c2.clone() * Y * (one.clone() + &x2) * &beta);
    let a22 = c2 * X * (one.clone() + &y2) * &alpha;
    let b1 = -y.clone();
    let b2 = ctx.cint::<R>(4, 0) / y;

    let det = a11.clone() * &a22 - a12.clone() * &a21;
    if det.modulus().is_zero() || !det.all_finite() {
        return Err(WzError::SingularSystem);
    }
    let dX = (a22 * &b1 - a12 * &b2) / &det;
    let dY = (a11 * &b2 - a21 * &b1) / &det;

    let two = ctx.cint::<R>(2, 0);
    let q = (Y.clone() * &dX + X.clone() * &dY) / &two;
    let r = -(X.clone() * &plus * &dX / &alpha);
    let s = -(Y.clone() * &plus * &dY / &beta);

    let (fa, fb) = factors(pair, CutSide::Reject, ctx)?;
    let value = fa
        .f
        .mul(&fb.f)
        .scale(&q)
        .add(&fa.g.mul(&fb.f).scale(&r))
        .add(&fa.f.mul(&fb.g).scale(&s));
    Ok(WzDerivative { value, dX, dY, q, r, s })
}
