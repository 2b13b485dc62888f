use num_complex::Complex;

use super::{relation_polynomials, relations_residual, symmetry_orbit, Provenance, WzError, XYPair};
use crate::complex::ComplexExt;
use crate::poly::{aberth_roots, resultant_y, BiPoly};
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::series::SeriesPoint;

const NEWTON_STEPS: usize = 60;

/// Solutions of the relations that are related by the symmetry group.
#[derive(Clone, Debug)]
pub struct XYOrbit<R: Real> {
    pub members: Vec<XYPair<R>>,
}

impl<R: Real> XYOrbit<R> {
    /// Whether some member lies within `eps` of `pair`.
    pub fn contains(&self, pair: &XYPair<R>, eps: &R) -> bool {
        self.members.iter().any(|m| m.distance(pair) < *eps)
    }
}

/// All solutions `(X, Y)` of the relations at `pt`, grouped into orbits.
///
/// `Y` is eliminated by a resultant; the roots in `X` are found with the
/// Aberth iteration, each is completed to a pair from the first relation and
/// the pair is polished jointly by Newton's method. Pairs whose relation
/// residual exceeds `10^-(digits - 10)` are discarded.
pub fn solve_xy<R: Real>(pt: &SeriesPoint, ctx: &PrecisionContext) -> Result<Vec<XYOrbit<R>>, WzError> {
    let (p1, p2) = relation_polynomials(pt);
    let res = resultant_y(&p1, &p2).squarefree();
    if res.degree().unwrap_or(0) == 0 {
        return Err(WzError::NoSolution);
    }
    let roots = aberth_roots::<R>(&res.to_complex(ctx), ctx).ok_or(WzError::NoSolution)?;

    let accept = R::pow10(-(ctx.digits() as i32 - 10), ctx.bits());
    let same = R::pow10(-(ctx.digits() as i32 / 4), ctx.bits());
    let mut solutions: Vec<XYPair<R>> = Vec::new();
    for x in roots {
        for y in y_candidates(&p1, &x, ctx) {
            let Some(pair) = newton_polish(&p1, &p2, x.clone(), y, ctx) else { continue };
            let Ok(r) = relations_residual(&pair, pt, ctx) else { continue };
            if r.max() < accept && solutions.iter().all(|s| s.distance(&pair) >= same) {
                solutions.push(pair);
            }
        }
    }
    if solutions.is_empty() {
        return Err(WzError::NoSolution);
    }

    let mut assigned = vec![false; solutions.len()];
    let mut orbits = Vec::new();
    for i in 0..solutions.len() {
        if assigned[i] {
            continue;
        }
        let closure = symmetry_orbit(&solutions[i], pt.is_real(), ctx);
        let mut members = Vec::new();
        for (j, s) in solutions.iter().enumerate() {
            if !assigned[j] && (j == i || closure.iter().any(|c| c.distance(s) < same)) {
                assigned[j] = true;
                members.push(s.clone());
            }
        }
        orbits.push(XYOrbit { members });
    }
    Ok(orbits)
}

/// Roots in `Y` of the first relation for fixed `X`.
fn y_candidates<R: Real>(p1: &BiPoly, x: &Complex<R>, ctx: &PrecisionContext) -> Vec<Complex<R>> {
    let c = p1.y_coeffs_at(x, ctx);
    let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
    if c2.modulus().is_zero() {
        if c1.modulus().is_zero() {
            return vec![];
        }
        return vec![-(c0.clone() / c1)];
    }
    let disc = (c1.clone() * c1 - c0.clone() * c2 * ctx.cint::<R>(4, 0)).sqrt_principal();
    let two_a = c2.clone() * ctx.cint::<R>(2, 0);
    vec![(-c1.clone() + &disc) / &two_a, (-c1.clone() - disc) / two_a]
}

fn newton_polish<R: Real>(
    p1: &BiPoly,
    p2: &BiPoly,
    mut x: Complex<R>,
    mut y: Complex<R>,
    ctx: &PrecisionContext,
) -> Option<XYPair<R>> {
    let (p1x, p1y, p2x, p2y) = (p1.d_x(), p1.d_y(), p2.d_x(), p2.d_y());
    let target = -(ctx.digits() as f64) - 3.0;
    for _ in 0..NEWTON_STEPS {
        let f1 = p1.eval_c(&x, &y, ctx);
        let f2 = p2.eval_c(&x, &y, ctx);
        let a = p1x.eval_c(&x, &y, ctx);
        let b = p1y.eval_c(&x, &y, ctx);
        let c = p2x.eval_c(&x, &y, ctx);
        let d = p2y.eval_c(&x, &y, ctx);
        let det = a.clone() * &d - b.clone() * &c;
        if det.modulus().is_zero() {
            return None;
        }
        let dx = (d * &f1 - b * &f2) / &det;
        let dy = (a * &f2 - c * &f1) / &det;
        x = x - &dx;
        y = y - &dy;
        if !x.all_finite() || !y.all_finite() {
            return None;
        }
        let step = dx.modulus().max_of(dy.modulus()).log10_abs();
        let scale = x.modulus().max_of(y.modulus()).max_of(R::one()).log10_abs();
        if step - scale < target {
            break;
        }
    }
    Some(XYPair::new(x, y, Provenance::Solved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cnum, gaussian_frac, gaussian_int};
    use crate::scalar::BigFloat;

    #[test]
    fn headline_orbit() {
        let ctx = PrecisionContext::new(60).unwrap();
        let pt = SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_int(8, 0)).unwrap();
        let orbits = solve_xy::<BigFloat>(&pt, &ctx).unwrap();
        let printed = XYPair::manual(
            cnum::<BigFloat>(0.57884718, -0.81543604, ctx.bits()),
            cnum::<BigFloat>(0.99999998, -0.00021224, ctx.bits()),
        );
        let eps = BigFloat::with_bits(ctx.bits(), 1e-7);
        let hits: Vec<_> = orbits.iter().filter(|o| o.contains(&printed, &eps)).collect();
        assert_eq!(hits.len(), 1);
        for o in &orbits {
            for m in &o.members {
                let r = relations_residual(m, &pt, &ctx).unwrap();
                assert!(r.max().log10_abs() < -50.0);
            }
        }
    }

    #[test]
    fn eliminant_is_palindromic_octic_in_disguise() {
        use crate::poly::{rational_coeffs, GaussPoly};
        let pt = SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_int(8, 0)).unwrap();
        let (p1, p2) = relation_polynomials(&pt);
        let res = resultant_y(&p1, &p2).squarefree().monic();
        // z^8 p(z^2 + z^-2) = sum_j p_j z^(8 - 2j) (z^4 + 1)^j
        let p = [-470492144i64, -595063264, 237562136, 88796296, 1];
        let quartic = rational_coeffs(&[1, 0, 0, 0, 1]);
        let mut expected = GaussPoly::new(vec![]);
        for (j, &c) in p.iter().enumerate() {
            let mut mono = vec![0i64; 9 - 2 * j];
            mono[8 - 2 * j] = c;
            let mut term = rational_coeffs(&mono);
            for _ in 0..j {
                term = term.mul(&quartic);
            }
            expected = expected.add(&term);
        }
        assert_eq!(res, expected.monic());
    }
}
