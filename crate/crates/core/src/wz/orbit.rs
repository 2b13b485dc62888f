use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::XYPair;
use crate::complex::ComplexExt;
use crate::precision::PrecisionContext;
use crate::scalar::Real;

const MAX_ORBIT: usize = 512;

/// Generators of the symmetry group of the relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    /// `(-X, -Y)`
    Negate,
    /// `(1/X, 1/Y)`
    Invert,
    /// `(Y, X)`
    Swap,
    /// complex conjugation; valid only for real `x, y`
    Conjugate,
    /// `((1 - X)/(1 + X), (1 - Y)/(1 + Y))`
    Twist,
}

impl Symmetry {
    pub const ALL: [Symmetry; 5] =
        [Symmetry::Negate, Symmetry::Invert, Symmetry::Swap, Symmetry::Conjugate, Symmetry::Twist];
}

/// Image of `pair`, or `None` where the generator is undefined.
pub fn apply<R: Real>(sym: Symmetry, pair: &XYPair<R>, ctx: &PrecisionContext) -> Option<XYPair<R>> {
    let one = ctx.cone::<R>();
    let (x, y) = (pair.X.clone(), pair.Y.clone());
    let nonzero = |z: &Complex<R>| !z.modulus().is_zero();
    let (nx, ny) = match sym {
        Symmetry::Negate => (-x, -y),
        Symmetry::Invert => {
            if !nonzero(&x) || !nonzero(&y) {
                return None;
            }
            (one.clone() / x, one / y)
        }
        Symmetry::Swap => (y, x),
        Symmetry::Conjugate => (x.conj(), y.conj()),
        Symmetry::Twist => {
            let dx = one.clone() + &x;
            let dy = one.clone() + &y;
            if !nonzero(&dx) || !nonzero(&dy) {
                return None;
            }
            ((one.clone() - x) / dx, (one - y) / dy)
        }
    };
    Some(XYPair::new(nx, ny, pair.provenance))
}

/// Closure of `{pair}` under the generators; conjugation is included only
/// when `real_point` is set. Members closer than `10^-(digits/4)` are
/// identified.
pub fn symmetry_orbit<R: Real>(pair: &XYPair<R>, real_point: bool, ctx: &PrecisionContext) -> Vec<XYPair<R>> {
    let eps = R::pow10(-(ctx.digits() as i32 / 4), ctx.bits());
    let mut orbit = vec![pair.clone()];
    let mut frontier = 0;
    while frontier < orbit.len() && orbit.len() < MAX_ORBIT {
        let current = orbit[frontier].clone();
        frontier += 1;
        for sym in Symmetry::ALL {
            if sym == Symmetry::Conjugate && !real_point {
                continue;
            }
            let Some(img) = apply(sym, &current, ctx) else { continue };
            if !img.X.all_finite() || !img.Y.all_finite() {
                continue;
            }
            if orbit.iter().all(|m| m.distance(&img) >= eps) {
                orbit.push(img);
            }
        }
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::BigFloat;
    use crate::wz::Provenance;

    #[test]
    fn unit_pair() {
        let ctx = PrecisionContext::new(30).unwrap();
        let one = ctx.cone::<BigFloat>();
        let p = XYPair::new(one.clone(), one, Provenance::Manual);
        assert_eq!(apply(Symmetry::Swap, &p, &ctx).unwrap(), p);
        assert_eq!(apply(Symmetry::Invert, &p, &ctx).unwrap(), p);
        let t = apply(Symmetry::Twist, &p, &ctx).unwrap();
        assert!(t.X.modulus().is_zero() && t.Y.modulus().is_zero());
        // (1,1), (-1,-1), (0,0); inversion of (0,0) and twist of (-1,-1) are undefined
        assert_eq!(symmetry_orbit(&p, true, &ctx).len(), 3);
    }

    #[test]
    fn twist_is_an_involution() {
        let ctx = PrecisionContext::new(40).unwrap();
        let bits = ctx.bits();
        let p = XYPair::manual(
            crate::complex::cnum::<BigFloat>(0.3, 0.2, bits),
            crate::complex::cnum::<BigFloat>(0.7, -0.1, bits),
        );
        let back = apply(Symmetry::Twist, &apply(Symmetry::Twist, &p, &ctx).unwrap(), &ctx).unwrap();
        assert!(back.distance(&p).log10_abs() < -35.0);
    }
}
