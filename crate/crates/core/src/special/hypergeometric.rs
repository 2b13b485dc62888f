//! `F(a) = 2F1(1/2, 1/2; 1; a)` and `G(a) = a F'(a)` on the cut plane.
//!
//! Each evaluation picks the expansion with the smallest convergence ratio:
//!
//! | expansion        | ratio       |
//! |------------------|-------------|
//! | direct           | `|a|`       |
//! | log at 1         | `|1 - a|`   |
//! | log at infinity  | `1 / |a|`   |
//!
//! each optionally composed with the Pfaff map `a -> a / (a - 1)`. The
//! neighbourhood of `exp(+-i pi/3)`, where all six ratios are close to one,
//! goes through the arithmetic-geometric mean instead.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::SpecialError;
use crate::complex::{ComplexExt, CutSide};
use crate::precision::{sum_majorized, BoundedValue, GeometricTailModel, PrecisionContext};
use crate::scalar::Real;

pub const AGM_THRESHOLD: f64 = 0.85;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expansion {
    Direct,
    LogAtOne,
    LogAtInfinity,
    Agm,
}

#[derive(Clone, Debug)]
pub struct HypergeometricPair<R: Real> {
    pub f: BoundedValue<R>,
    pub g: BoundedValue<R>,
    pub expansion: Expansion,
    pub pfaff: bool,
}

pub fn hyp_f<R: Real>(alpha: &Complex<R>, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    Ok(hyp_pair(alpha, CutSide::Reject, ctx)?.f)
}

pub fn hyp_g<R: Real>(alpha: &Complex<R>, ctx: &PrecisionContext) -> Result<BoundedValue<R>, SpecialError> {
    Ok(hyp_pair(alpha, CutSide::Reject, ctx)?.g)
}

pub fn hyp_f_sided<R: Real>(
    alpha: &Complex<R>,
    side: CutSide,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, SpecialError> {
    Ok(hyp_pair(alpha, side, ctx)?.f)
}

/// Whether `alpha` lies on `[1, inf)` to within the context tolerance,
/// relative to `max(1, |alpha|)`.
pub fn on_branch_cut<R: Real>(alpha: &Complex<R>, ctx: &PrecisionContext) -> bool {
    let eps = ctx.tol::<R>();
    let scale = alpha.modulus().max_of(R::one());
    alpha.re > R::one() && alpha.im.abs() <= eps * scale
}

pub fn hyp_pair<R: Real>(
    alpha: &Complex<R>,
    side: CutSide,
    ctx: &PrecisionContext,
) -> Result<HypergeometricPair<R>, SpecialError> {
    if !alpha.all_finite() {
        return Err(SpecialError::InvalidArgument("non-finite argument".into()));
    }
    let one = ctx.cone::<R>();
    let w = one.clone() - alpha;
    if w.modulus().log10_abs() < -(ctx.digits() as f64) {
        return Err(SpecialError::Singular);
    }

    if on_branch_cut(alpha, ctx) {
        if side == CutSide::Reject {
            return Err(SpecialError::OnBranchCut(alpha.re.to_f64()));
        }
        let a = Complex::new(alpha.re.clone(), R::zero());
        let rw = (one - &a).modulus().to_f64();
        let ri = 1.0 / a.modulus().to_f64();
        let e = if rw <= ri { Expansion::LogAtOne } else { Expansion::LogAtInfinity };
        let (f, g) = expand(e, &a, side, ctx)?;
        return Ok(HypergeometricPair { f, g, expansion: e, pfaff: false });
    }

    let m = alpha.modulus().to_f64();
    let mw = w.modulus().to_f64();
    let direct = [
        (Expansion::Direct, m),
        (Expansion::LogAtOne, mw),
        (Expansion::LogAtInfinity, 1.0 / m),
    ];
    // Pfaff image z = a / (a - 1): |z| = |a|/|1-a|, |1-z| = 1/|1-a|
    let pfaff = [
        (Expansion::Direct, m / mw),
        (Expansion::LogAtOne, 1.0 / mw),
        (Expansion::LogAtInfinity, mw / m),
    ];
    let best_direct = direct.iter().cloned().fold((Expansion::Direct, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b });
    let best_pfaff = pfaff.iter().cloned().fold((Expansion::Direct, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b });

    if best_direct.1.min(best_pfaff.1) > AGM_THRESHOLD {
        let (f, g) = agm_pair(alpha, ctx)?;
        return Ok(HypergeometricPair { f, g, expansion: Expansion::Agm, pfaff: false });
    }

    if best_direct.1 <= best_pfaff.1 {
        let (f, g) = expand(best_direct.0, alpha, CutSide::Reject, ctx)?;
        return Ok(HypergeometricPair { f, g, expansion: best_direct.0, pfaff: false });
    }

    // F(a) = (1-a)^(-1/2) F(z), G(a) = [a F(a)/2 + (1-a)^(-1/2) G(z)] / (1-a)
    let z = alpha.clone() / (alpha.clone() - ctx.cone::<R>());
    let (fz, gz) = expand(best_pfaff.0, &z, CutSide::Reject, ctx)?;
    let s = ctx.cone::<R>() / w.sqrt_principal();
    let f = fz.scale(&s);
    let half_alpha = alpha.clone() / Complex::new(ctx.int::<R>(2), R::zero());
    let g = f.scale(&half_alpha).add(&gz.scale(&s)).scale(&(ctx.cone::<R>() / &w));
    Ok(HypergeometricPair { f, g, expansion: best_pfaff.0, pfaff: true })
}

/// `c_n = ((1/2)_n / n!)^2` and `d_n = 2 (psi(n+1) - psi(n+1/2))`, advanced
/// together.
struct Coefficients<R: Real> {
    c: R,
    d: R,
    n: usize,
    bits: u32,
}

impl<R: Real> Coefficients<R> {
    fn new(ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits();
        let d = R::from_int(4, bits) * R::from_int(2, bits).ln();
        Coefficients { c: R::from_int(1, bits), d, n: 0, bits }
    }

    fn advance(&mut self) {
        let n = self.n as i64;
        let ratio = R::from_int(2 * n + 1, self.bits) / R::from_int(2 * n + 2, self.bits);
        self.c = self.c.clone() * &ratio * &ratio;
        self.n += 1;
        let m = self.n as i64;
        self.d -= R::from_int(2, self.bits) / R::from_int(m * (2 * m - 1), self.bits);
    }
}

fn series<R, T>(
    ratio: f64,
    weighted: bool,
    x: &Complex<R>,
    mut weight: T,
    ctx: &PrecisionContext,
) -> Result<BoundedValue<R>, SpecialError>
where
    R: Real,
    T: FnMut(&Coefficients<R>) -> (Complex<R>, R),
{
    let mut model = GeometricTailModel::from_ratio(ratio)?;
    if weighted {
        model = model.weighted(1)?;
    }
    let mut coeffs = Coefficients::new(ctx);
    let mut power = ctx.cone::<R>();
    let abs_x = x.modulus();
    let mut abs_power = ctx.int::<R>(1);
    Ok(sum_majorized(
        |k| {
            if k > 0 {
                coeffs.advance();
                power = power.clone() * x;
                abs_power = abs_power.clone() * &abs_x;
            }
            let (wt, maj) = weight(&coeffs);
            let scale = coeffs.c.clone();
            ((power.clone() * wt).scale_by(&scale), maj * &scale * &abs_power)
        },
        &model,
        ctx,
    )?)
}

fn expand<R: Real>(
    e: Expansion,
    x: &Complex<R>,
    side: CutSide,
    ctx: &PrecisionContext,
) -> Result<(BoundedValue<R>, BoundedValue<R>), SpecialError> {
    let bits = ctx.bits();
    let one_c = ctx.cone::<R>();
    let inv_pi = R::one() / ctx.pi::<R>();
    let real = |v: R| Complex::new(v, R::zero());
    match e {
        Expansion::Direct => {
            let r = x.modulus().to_f64();
            let f = series(r, false, x, |_| (one_c.clone(), R::one()), ctx)?;
            let g = series(
                r,
                true,
                x,
                |c| {
                    let n = R::from_int(c.n as i64, bits);
                    (real(n.clone()), n)
                },
                ctx,
            )?;
            Ok((f, g))
        }
        Expansion::LogAtOne => {
            let w = one_c.clone() - x;
            let lw = w.ln_sided(side);
            let abs_lw = lw.modulus();
            let r = w.modulus().to_f64();
            let f = series(
                r,
                false,
                &w,
                |c| (real(c.d.clone()) - &lw, c.d.clone() + &abs_lw),
                ctx,
            )?;
            let g = series(
                r,
                true,
                &w,
                |c| {
                    let n = R::from_int(c.n as i64, bits);
                    let t = (real(c.d.clone()) - &lw).scale_by(&n) - &one_c;
                    let m = n * (c.d.clone() + &abs_lw) + R::one();
                    (t, m)
                },
                ctx,
            )?;
            let f = f.scale(&real(inv_pi.clone()));
            // G = -x / (pi w) * sum
            let pre = -(x.clone() / &w).scale_by(&inv_pi);
            Ok((f, g.scale(&pre)))
        }
        Expansion::LogAtInfinity => {
            let u = one_c.clone() / x;
            let minus_x = -x.clone();
            let l = minus_x.ln_sided(side);
            let abs_l = l.modulus();
            let pre = (one_c.clone() / minus_x.sqrt_sided(side)).scale_by(&inv_pi);
            let r = u.modulus().to_f64();
            let f = series(r, false, &u, |c| (l.clone() + real(c.d.clone()), abs_l.clone() + &c.d), ctx)?;
            let half = R::from_f64(0.5, bits);
            let g = series(
                r,
                true,
                &u,
                |c| {
                    let n = R::from_int(c.n as i64, bits);
                    let coeff = -(half.clone() + &n);
                    let t = (l.clone() + real(c.d.clone())).scale_by(&coeff) + &one_c;
                    let m = (half.clone() + &n) * (abs_l.clone() + &c.d) + R::one();
                    (t, m)
                },
                ctx,
            )?;
            Ok((f.scale(&pre), g.scale(&pre)))
        }
        Expansion::Agm => agm_pair(x, ctx),
    }
}

/// `F = 1 / M(1, sqrt(1 - a))`, `G = (F/2) ((1 - S)/(1 - a) - 1)` with
/// `S = sum 2^(n-1) c_n^2`, `c_0^2 = a`.
fn agm_pair<R: Real>(alpha: &Complex<R>, ctx: &PrecisionContext) -> Result<(BoundedValue<R>, BoundedValue<R>), SpecialError> {
    let bits = ctx.bits();
    let one = ctx.cone::<R>();
    let two = R::from_int(2, bits);
    let w = one.clone() - alpha;
    let mut a = one.clone();
    let mut b = w.sqrt_principal();
    let mut s = alpha.scale_by(&R::from_f64(0.5, bits));
    let mut weight = R::from_f64(0.5, bits);
    let tol = ctx.tol::<R>() / R::from_int(16, bits);
    for _ in 0..200 {
        let gap = (a.clone() - &b).modulus();
        if gap <= tol.clone() * a.modulus() {
            let f = one.clone() / &a;
            let fm = f.modulus();
            let err = gap.clone() * &fm * &fm;
            let inner = (one.clone() - &s) / &w - &one;
            let g = (f.clone() * inner.clone()).scale_by(&R::from_f64(0.5, bits));
            let g_err = err.clone() * (inner.modulus() + R::one());
            return Ok((BoundedValue::new(f, err), BoundedValue::new(g, g_err)));
        }
        let c = (a.clone() - &b).scale_by(&R::from_f64(0.5, bits));
        weight *= &two;
        s = s + (c.clone() * &c).scale_by(&weight);
        let next_a = (a.clone() + &b).scale_by(&R::from_f64(0.5, bits));
        let mut next_b = (a * &b).sqrt_principal();
        if (next_a.clone() - &next_b).modulus() > (next_a.clone() + &next_b).modulus() {
            next_b = -next_b;
        }
        a = next_a;
        b = next_b;
        if a.modulus().is_zero() {
            return Err(SpecialError::Singular);
        }
    }
    Err(SpecialError::InvalidArgument("AGM failed to converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cnum;
    use crate::scalar::BigFloat;
    use num_traits::Zero;

    fn c(re: f64, im: f64, ctx: &PrecisionContext) -> Complex<BigFloat> {
        cnum(re, im, ctx.bits())
    }

    fn close(a: &Complex<BigFloat>, b: &Complex<BigFloat>, digits: f64) -> bool {
        (a.clone() - b).modulus().log10_abs() < -digits
    }

    #[test]
    fn value_at_half_from_gamma() {
        // F(1/2) = Gamma(1/4)^2 / (2 pi^(3/2))
        let ctx = PrecisionContext::new(80).unwrap();
        let f = hyp_f(&c(0.5, 0.0, &ctx), &ctx).unwrap();
        let bits = ctx.bits();
        let g14 = rug::Float::with_val(bits, 0.25).gamma();
        let pi = rug::Float::with_val(bits, rug::float::Constant::Pi);
        let expected = rug::Float::with_val(bits, &g14 * &g14) / (pi.clone() * pi.sqrt() * 2u32);
        assert!(close(&f.approx, &Complex::new(BigFloat::from_float(expected), BigFloat::zero()), 39.0));
    }

    #[test]
    fn expansions_agree_on_overlaps() {
        let ctx = PrecisionContext::new(60).unwrap();
        for &(re, im) in &[(0.45, 0.2), (0.6, -0.3), (-0.4, 0.5), (1.4, 0.9), (2.5, -1.0), (-3.0, 0.4)] {
            let x = c(re, im, &ctx);
            let mut vals = Vec::new();
            for e in [Expansion::Direct, Expansion::LogAtOne, Expansion::LogAtInfinity] {
                let ok = match e {
                    Expansion::Direct => x.modulus().to_f64() < 0.95,
                    Expansion::LogAtOne => (ctx.cone::<BigFloat>() - &x).modulus().to_f64() < 0.95,
                    _ => x.modulus().to_f64() > 1.05,
                };
                if ok {
                    vals.push(expand(e, &x, CutSide::Reject, &ctx).unwrap());
                }
            }
            vals.push(agm_pair(&x, &ctx).unwrap());
            let auto = hyp_pair(&x, CutSide::Reject, &ctx).unwrap();
            for (f, g) in &vals {
                assert!(close(&f.approx, &auto.f.approx, 28.0), "F at {re}+{im}i");
                assert!(close(&g.approx, &auto.g.approx, 28.0), "G at {re}+{im}i");
            }
        }
    }

    #[test]
    fn agm_region_near_sixth_root_of_unity() {
        let ctx = PrecisionContext::new(50).unwrap();
        let x = c(0.5, 0.8660254, &ctx);
        let p = hyp_pair(&x, CutSide::Reject, &ctx).unwrap();
        assert_eq!(p.expansion, Expansion::Agm);
        // G equals a F'(a): compare with a symmetric difference quotient
        let h = c(1e-12, 0.0, &ctx);
        let fp = hyp_f(&(x.clone() + &h), &ctx).unwrap().approx;
        let fm = hyp_f(&(x.clone() - &h), &ctx).unwrap().approx;
        let deriv = (fp - fm) / (h.clone() + &h) * &x;
        assert!(close(&deriv, &p.g.approx, 20.0));
    }

    #[test]
    fn cut_sides_are_conjugate() {
        let ctx = PrecisionContext::new(50).unwrap();
        let x = c(2.0, 0.0, &ctx);
        assert!(matches!(hyp_pair(&x, CutSide::Reject, &ctx), Err(SpecialError::OnBranchCut(_))));
        let above = hyp_pair(&x, CutSide::Above, &ctx).unwrap();
        let below = hyp_pair(&x, CutSide::Below, &ctx).unwrap();
        assert!(close(&above.f.approx, &below.f.approx.conj(), 24.0));
        // the upper limit agrees with a point just above the cut
        let near = hyp_f(&c(2.0, 1e-20, &ctx), &ctx).unwrap();
        assert!(close(&above.f.approx, &near.approx, 19.0));
    }

    #[test]
    fn singular_at_one() {
        let ctx = PrecisionContext::new(40).unwrap();
        assert_eq!(hyp_f(&c(1.0, 0.0, &ctx), &ctx).unwrap_err(), SpecialError::Singular);
        let zero = hyp_pair(&c(0.0, 0.0, &ctx), CutSide::Reject, &ctx).unwrap();
        assert!(close(&zero.f.approx, &ctx.cone(), 19.0));
        assert!(zero.g.approx.modulus().is_zero());
    }
}
