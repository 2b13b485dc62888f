use num_complex::Complex;

use super::{root_of_unity, AlphaBeta, BranchCertificate, ModularError};
use crate::complex::{ComplexExt, CutSide};
use crate::precision::{BoundedValue, PrecisionContext};
use crate::scalar::Real;
use crate::special::{e2, hyp_pair, moduli, UpperHalfPoint};

fn log10<R: Real>(r: &R) -> f64 {
    if r.is_zero() {
        f64::NEG_INFINITY
    } else {
        r.log10_abs()
    }
}

/// `-1/tau`, exact when `tau` is.
pub(crate) fn neg_recip<R: Real>(tau: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<UpperHalfPoint<R>, ModularError> {
    Ok(match &tau.exact {
        Some(q) => UpperHalfPoint::from_exact(&q.neg_recip(), ctx)?,
        None => UpperHalfPoint::new(-(ctx.cone::<R>() / &tau.tau))?,
    })
}

/// `|k'(tau) - (1 - k(2 tau)) / (1 + k(2 tau))|`.
pub fn modular_eq2<R: Real>(tau: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<R, ModularError> {
    let m = moduli(tau, ctx)?;
    let l = moduli(&tau.scaled(2, ctx)?, ctx)?.k.approx;
    let one = ctx.cone::<R>();
    let rhs = (one.clone() - &l) / (one + l);
    Ok((m.kprime.approx - rhs).modulus())
}

/// `|sqrt(k l) + sqrt(k' l') - 1|` with `l = k(3 tau)`, minimised over the
/// signs of both roots.
pub fn modular_eq3_residual<R: Real>(
    tau: &UpperHalfPoint<R>,
    ctx: &PrecisionContext,
) -> Result<(R, BranchCertificate), ModularError> {
    let m = moduli(tau, ctx)?;
    let n = moduli(&tau.scaled(3, ctx)?, ctx)?;
    let a = (m.k.approx * &n.k.approx).sqrt_principal();
    let b = (m.kprime.approx * &n.kprime.approx).sqrt_principal();
    let one = ctx.cone::<R>();
    let mut best: Option<(R, [u32; 2])> = None;
    for (i, j) in [(0u32, 0u32), (0, 1), (1, 0), (1, 1)] {
        let sa = if i == 0 { a.clone() } else { -a.clone() };
        let sb = if j == 0 { b.clone() } else { -b.clone() };
        let r = (sa + sb - &one).modulus();
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, [i, j]));
        }
    }
    let (r, choice) = best.expect("four candidates");
    let cert = BranchCertificate {
        display: "sqrt(kl) + sqrt(k'l') = 1".into(),
        radicals: vec!["sqrt(k l)".into(), "sqrt(k' l')".into()],
        choices: choice.to_vec(),
        log10_residual: log10(&r),
    };
    Ok((r, cert))
}

/// Chosen radicals of the degree-5 modular equation
///
/// ```text
/// (ab)^(1/2) + ((1-a)(1-b))^(1/2) + 2 (16 ab (1-a)(1-b))^(1/6) = 1
/// ```
#[derive(Clone, Debug)]
pub struct Eq5Branch<R: Real> {
    pub residual: R,
    pub s1: Complex<R>,
    pub s2: Complex<R>,
    pub w: Complex<R>,
    pub certificate: BranchCertificate,
}

/// Residual of the degree-5 modular equation, minimised over the 24 choices
/// of roots.
pub fn modular_eq5_residual<R: Real>(ab: &AlphaBeta<R>, ctx: &PrecisionContext) -> Result<Eq5Branch<R>, ModularError> {
    if ab.p != 5 {
        return Err(ModularError::UnsupportedDegree(ab.p));
    }
    let one = ctx.cone::<R>();
    let (a, b) = (&ab.alpha, &ab.beta);
    let ca = one.clone() - a;
    let cb = one.clone() - b;
    let s1 = (a.clone() * b).sqrt_principal();
    let s2 = (ca.clone() * &cb).sqrt_principal();
    let w = (a.clone() * b * &ca * &cb * ctx.cint::<R>(16, 0)).root_principal(6);
    let two = ctx.cint::<R>(2, 0);
    let mut best: Option<Eq5Branch<R>> = None;
    for i in 0..2 {
        for j in 0..2 {
            for m in 0..6 {
                let c1 = s1.clone() * root_of_unity::<R>(i, 2, ctx);
                let c2 = s2.clone() * root_of_unity::<R>(j, 2, ctx);
                let cw = w.clone() * root_of_unity::<R>(m, 6, ctx);
                let r = (c1.clone() + &c2 + cw.clone() * &two - &one).modulus();
                if best.as_ref().is_none_or(|b| r < b.residual) {
                    let certificate = BranchCertificate {
                        display: "modular equation of degree 5".into(),
                        radicals: vec![
                            "(ab)^(1/2)".into(),
                            "((1-a)(1-b))^(1/2)".into(),
                            "(16ab(1-a)(1-b))^(1/6)".into(),
                        ],
                        choices: vec![i, j, m],
                        log10_residual: log10(&r),
                    };
                    best = Some(Eq5Branch { residual: r, s1: c1, s2: c2, w: cw, certificate });
                }
            }
        }
    }
    Ok(best.expect("24 candidates"))
}

fn check_generic<R: Real>(ab: &AlphaBeta<R>, ctx: &PrecisionContext) -> Result<(), ModularError> {
    let one = ctx.cone::<R>();
    for v in [&ab.alpha, &ab.beta] {
        if v.modulus().is_zero() || (one.clone() - v).modulus().is_zero() {
            return Err(ModularError::InvalidArgument("alpha and beta must avoid 0 and 1".into()));
        }
    }
    Ok(())
}

/// The degree-5 multiplier
///
/// ```text
/// F(a)/F(b) = (b/a)^(1/4) + ((1-b)/(1-a))^(1/4) - (b(1-b)/(a(1-a)))^(1/4)
/// ```
#[derive(Clone, Debug)]
pub struct Multiplier5<R: Real> {
    pub value: BoundedValue<R>,
    /// the three chosen fourth roots
    pub u: [Complex<R>; 3],
    /// `|value - F(a)/F(b)|`
    pub residual: R,
    pub certificate: BranchCertificate,
}

/// Evaluates the multiplier display with the fourth roots chosen to match
/// `F(alpha)/F(beta)`.
pub fn multiplier5<R: Real>(ab: &AlphaBeta<R>, ctx: &PrecisionContext) -> Result<Multiplier5<R>, ModularError> {
    if ab.p != 5 {
        return Err(ModularError::UnsupportedDegree(ab.p));
    }
    check_generic(ab, ctx)?;
    let one = ctx.cone::<R>();
    let (a, b) = (&ab.alpha, &ab.beta);
    let ca = one.clone() - a;
    let cb = one.clone() - b;
    let fa = hyp_pair(a, CutSide::Reject, ctx)?.f;
    let fb = hyp_pair(b, CutSide::Reject, ctx)?.f;
    let target = fa.div(&fb);
    let p1 = (b.clone() / a).root_principal(4);
    let p2 = (cb.clone() / &ca).root_principal(4);
    let p3 = (b.clone() * &cb / (a.clone() * &ca)).root_principal(4);
    let mut best: Option<(R, [u32; 3], [Complex<R>; 3])> = None;
    for i in 0..4 {
        for j in 0..4 {
            for m in 0..4 {
                let u1 = p1.clone() * root_of_unity::<R>(i, 4, ctx);
                let u2 = p2.clone() * root_of_unity::<R>(j, 4, ctx);
                let u3 = p3.clone() * root_of_unity::<R>(m, 4, ctx);
                let v = u1.clone() + &u2 - &u3;
                let r = (v - &target.approx).modulus();
                if best.as_ref().is_none_or(|b| r < b.0) {
                    best = Some((r, [i, j, m], [u1, u2, u3]));
                }
            }
        }
    }
    let (residual, choices, u) = best.expect("64 candidates");
    let value = BoundedValue::exact(u[0].clone() + &u[1] - &u[2]);
    let certificate = BranchCertificate {
        display: "degree-5 multiplier F(a)/F(b)".into(),
        radicals: vec!["(b/a)^(1/4)".into(), "((1-b)/(1-a))^(1/4)".into(), "(b(1-b)/(a(1-a)))^(1/4)".into()],
        choices: choices.to_vec(),
        log10_residual: log10(&(residual.clone() + &target.err)),
    };
    Ok(Multiplier5 { value, u, residual, certificate })
}

/// `d beta / d alpha` along the degree-5 modular curve, from the derivative
/// of the modular equation with the root branches of
/// [`modular_eq5_residual`].
pub fn dbeta_dalpha<R: Real>(ab: &AlphaBeta<R>, ctx: &PrecisionContext) -> Result<Complex<R>, ModularError> {
    check_generic(ab, ctx)?;
    let br = modular_eq5_residual(ab, ctx)?;
    dbeta_from_branch(ab, &br, ctx)
}

fn dbeta_from_branch<R: Real>(ab: &AlphaBeta<R>, br: &Eq5Branch<R>, ctx: &PrecisionContext) -> Result<Complex<R>, ModularError> {
    let one = ctx.cone::<R>();
    let two = ctx.cint::<R>(2, 0);
    let three = ctx.cint::<R>(3, 0);
    let (a, b) = (&ab.alpha, &ab.beta);
    let ca = one.clone() - a;
    let cb = one.clone() - b;
    // d/da [s1 + s2 + 2w] with s1 = (ab)^(1/2), s2 = ((1-a)(1-b))^(1/2),
    // w = (16ab(1-a)(1-b))^(1/6)
    let da = br.s1.clone() / (a.clone() * &two) - br.s2.clone() / (ca.clone() * &two)
        + br.w.clone() * (one.clone() - a.clone() * &two) / (a.clone() * &ca * &three);
    let db = br.s1.clone() / (b.clone() * &two) - br.s2.clone() / (cb.clone() * &two)
        + br.w.clone() * (one - b.clone() * &two) / (b.clone() * &cb * &three);
    if db.modulus().is_zero() {
        return Err(ModularError::Vanishing("d/d beta of the modular equation"));
    }
    Ok(-(da / db))
}

/// `F(beta) = t F(alpha)` and `G(beta) = t1 F(alpha) + t2 G(alpha)`.
#[derive(Clone, Debug)]
pub struct BetaFromAlpha<R: Real> {
    pub t: Complex<R>,
    pub t1: Complex<R>,
    pub t2: Complex<R>,
    pub dbeta: Complex<R>,
    /// `|t F(alpha) - F(beta)|`
    pub f_residual: R,
    /// `|t1 F(alpha) + t2 G(alpha) - G(beta)|`
    pub g_residual: R,
    pub eq5: BranchCertificate,
    pub multiplier: BranchCertificate,
}

/// `t = 1/M`; `t1`, `t2` from the logarithmic derivative of the multiplier
///
/// ```text
/// G(a)/(a F(a)) - G(b)/(b F(b)) db/da = M'/M
/// ```
pub fn g_from_beta<R: Real>(ab: &AlphaBeta<R>, ctx: &PrecisionContext) -> Result<BetaFromAlpha<R>, ModularError> {
    let br = modular_eq5_residual(ab, ctx)?;
    let mult = multiplier5(ab, ctx)?;
    let dbeta = dbeta_from_branch(ab, &br, ctx)?;
    let one = ctx.cone::<R>();
    let four = ctx.cint::<R>(4, 0);
    let two = ctx.cint::<R>(2, 0);
    let (a, b) = (&ab.alpha, &ab.beta);
    let ca = one.clone() - a;
    let cb = one.clone() - b;
    let [u1, u2, u3] = &mult.u;
    let d1 = u1.clone() / &four * (dbeta.clone() / b - one.clone() / a);
    let d2 = u2.clone() / &four * (one.clone() / &ca - dbeta.clone() / &cb);
    let d3 = u3.clone() / &four
        * (dbeta.clone() * (one.clone() - b.clone() * &two) / (b.clone() * &cb)
            - (one.clone() - a.clone() * &two) / (a.clone() * &ca));
    let m = mult.value.approx.clone();
    let dm = d1 + d2 - d3;
    let t = one / &m;
    // G(b) = (b t / db) [G(a)/a - (M'/M) F(a)]
    let scale = b.clone() * &t / &dbeta;
    let t2 = scale.clone() / a;
    let t1 = -(scale * &dm / &m);

    let pa = hyp_pair(a, CutSide::Reject, ctx)?;
    let pb = hyp_pair(b, CutSide::Reject, ctx)?;
    let f_residual = (t.clone() * &pa.f.approx - &pb.f.approx).modulus() + pa.f.err.clone() * t.modulus() + pb.f.err;
    let g_residual = (t1.clone() * &pa.f.approx + t2.clone() * &pa.g.approx - &pb.g.approx).modulus()
        + pa.f.err * t1.modulus()
        + pa.g.err * t2.modulus()
        + pb.g.err;
    Ok(BetaFromAlpha {
        t,
        t1,
        t2,
        dbeta,
        f_residual,
        g_residual,
        eq5: br.certificate,
        multiplier: mult.certificate,
    })
}

/// `|F(a)G(a) - (E2(tau) + (2a - 1) F(a)^2) / (6 (1 - a))|` for
/// `a = k^2(tau)`.
pub fn fg_e2_residual<R: Real>(alpha: &Complex<R>, tau: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<R, ModularError> {
    let one = ctx.cone::<R>();
    let ca = one.clone() - alpha;
    if ca.modulus().is_zero() {
        return Err(ModularError::InvalidArgument("alpha = 1".into()));
    }
    let p = hyp_pair(alpha, CutSide::Reject, ctx)?;
    let e = e2(tau, ctx)?;
    let f2 = p.f.approx.clone() * &p.f.approx;
    let rhs = (e.approx + (alpha.clone() * ctx.cint::<R>(2, 0) - one) * f2) / (ca * ctx.cint::<R>(6, 0));
    Ok((p.f.approx * &p.g.approx - rhs).modulus())
}

/// `|E2(-1/tau) - tau^2 E2(tau) - 6 tau / (pi i)|`.
pub fn e2_inversion_residual<R: Real>(tau: &UpperHalfPoint<R>, ctx: &PrecisionContext) -> Result<R, ModularError> {
    let inv = neg_recip(tau, ctx)?;
    let lhs = e2(&inv, ctx)?.approx;
    let t = tau.tau.clone();
    let corr = t.clone() * ctx.cint::<R>(6, 0) / (ctx.ci::<R>().scale_by(&ctx.pi::<R>()));
    Ok((lhs - t.clone() * &t * e2(tau, ctx)?.approx - corr).modulus())
}
