use num_complex::Complex;

use super::registry::{Registry, TableEntry};
use super::report::{ReportBuilder, VerificationReport};
use super::{HarnessConfig, HarnessError, Target};
use crate::complex::{creal, gaussian_frac, gaussian_int, ComplexExt, CutSide};
use crate::modular::{
    e2_tau0_chain, sun_reduction, tau0, verify_radicals, QSqrt5, S1_OVER_52_ALPHA_MINPOLY, S2_MINPOLY,
};
use crate::precision::{BoundedValue, PrecisionContext, Tolerance};
use crate::recognition::{poly_residual, recognize_min_poly, IntPolynomial, RecognitionBudget};
use crate::scalar::{BigFloat, Real};
use crate::series::{
    converges_absolutely, double_series, eval_pi_series, PiSeriesForm, PiSeriesSpec, SeriesPoint,
};
use crate::special::quadratic::rational;
use crate::special::{moduli, UpperHalfPoint};
use crate::wz::{relations_residual, wz_product, Provenance, XYPair};

type C = Complex<BigFloat>;

/// Input precision of recognized constants: values carry 400 correct digits.
pub const RECOGNITION_DIGITS: u32 = 800;
/// Lower bound on the discrepancy of an expected failure.
pub const EXPECTED_FAILURE_FLOOR: f64 = 1e-3;

/// `p(z) = z^4 + 88796296 z^3 + 237562136 z^2 - 595063264 z - 470492144`.
pub const P_COEFFS: [i64; 5] = [1, 88_796_296, 237_562_136, -595_063_264, -470_492_144];

/// `z^8 p(z^2 + 1/z^2)`.
pub fn palindromic_octic_lift() -> IntPolynomial {
    IntPolynomial::from_descending(&[
        1,
        0,
        88_796_296,
        0,
        237_562_140,
        0,
        -328_674_376,
        0,
        4_632_134,
        0,
        -328_674_376,
        0,
        237_562_140,
        0,
        88_796_296,
        0,
        1,
    ])
    .expect("nonzero")
}

fn headline_point() -> SeriesPoint {
    SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_int(8, 0)).expect("y != 0")
}

fn contexts(cfg: &HarnessConfig) -> (PrecisionContext, BigFloat) {
    let ctx = PrecisionContext::new(cfg.digits).expect("validated config");
    let tol = cfg.tolerance.to_real::<BigFloat>(ctx.bits());
    (ctx, tol)
}

fn printed(re: &str, im: &str, ctx: &PrecisionContext) -> C {
    let bits = ctx.bits();
    Complex::new(
        BigFloat::parse_decimal(re, bits).expect("decimal literal"),
        BigFloat::parse_decimal(im, bits).expect("decimal literal"),
    )
}

fn dist(a: &C, b: &C) -> BigFloat {
    (a.clone() - b).modulus()
}

fn pow10(e: i32, ctx: &PrecisionContext) -> BigFloat {
    BigFloat::pow10(e, ctx.bits())
}

/// `X = k'(tau)`, `Y = k'(p tau)` (or `1/k'(p tau)` when starred) and the
/// Pythagorean residual of both moduli.
pub fn entry_pair(e: &TableEntry, ctx: &PrecisionContext) -> Result<(XYPair<BigFloat>, BigFloat), HarnessError> {
    let t = UpperHalfPoint::<BigFloat>::from_exact(&e.tau, ctx).map_err(HarnessError::stage)?;
    let m = moduli(&t, ctx).map_err(HarnessError::stage)?;
    let n = moduli(&t.scaled(e.p as i64, ctx).map_err(HarnessError::stage)?, ctx).map_err(HarnessError::stage)?;
    let one = ctx.cone::<BigFloat>();
    let pyth = |k: &C, kp: &C| (k.clone() * k + kp.clone() * kp - &one).modulus();
    let res = pyth(&m.k.approx, &m.kprime.approx).max_of(pyth(&n.k.approx, &n.kprime.approx));
    let y = if e.starred { one.clone() / &n.kprime.approx } else { n.kprime.approx };
    Ok((XYPair::new(m.kprime.approx, y, Provenance::Modular), res))
}

pub fn verify_entry(e: &TableEntry, cfg: &HarnessConfig) -> VerificationReport {
    let (ctx, tol) = contexts(cfg);
    let mut b = ReportBuilder::new(e.id.clone(), cfg.digits, tol);
    b.describe(e.describe());
    entry_checks(&mut b, e, &ctx);
    b.finish()
}

fn entry_checks(b: &mut ReportBuilder, e: &TableEntry, ctx: &PrecisionContext) {
    let pair = match entry_pair(e, ctx) {
        Ok((pair, res)) => {
            b.at_most("modular_parametrization", &res);
            Some(pair)
        }
        Err(err) => {
            b.failed("modular_parametrization", err);
            None
        }
    };
    if let Some(pair) = &pair {
        match relations_residual(pair, &e.point, ctx) {
            Ok(r) => {
                b.at_most("wz_relations", &r.max());
            }
            Err(err) => b.failed("wz_relations", err),
        }
    }
    let conv = converges_absolutely(&e.point);
    let one = BigFloat::from_int(1, ctx.bits());
    b.at_most_with("absolute_convergence", &BigFloat::from_f64(conv.ratio, 53), &one, &[]);

    let Some(pair) = pair else { return };
    let a = match double_series::<BigFloat>(&e.point, ctx) {
        Ok(s) => s.a,
        Err(err) => {
            b.failed("hypergeometric_form", err);
            return;
        }
    };
    if e.expected_failure {
        let on_cut = wz_product(&pair, CutSide::Reject, ctx).is_err();
        b.predicate("arguments_on_branch_cut", on_cut, "");
        let floor = BigFloat::from_f64(EXPECTED_FAILURE_FLOOR, ctx.bits());
        for (name, side) in [("hypergeometric_form_fails_above", CutSide::Above), ("hypergeometric_form_fails_below", CutSide::Below)] {
            match wz_product(&pair, side, ctx) {
                Ok(w) => {
                    let d = dist(&w.approx, &a.approx) - w.err - a.err.clone();
                    b.at_least(name, &d, &floor);
                }
                Err(err) => b.failed(name, err),
            }
        }
    } else {
        match wz_product(&pair, CutSide::Reject, ctx) {
            Ok(w) => {
                let r = dist(&w.approx, &a.approx) + w.err + a.err;
                b.at_most("hypergeometric_form", &r);
            }
            Err(err) => b.failed("hypergeometric_form", err),
        }
    }
}

pub fn verify_headline(cfg: &HarnessConfig) -> VerificationReport {
    let (ctx, tol) = contexts(cfg);
    let mut b = ReportBuilder::new("headline", cfg.digits, tol);
    b.describe("sum (1054 n + 233) / 480^n C(2n,n) sum_k C(n,k)^2 C(2k,n) (-1)^k 8^(2k-n) = 520/pi");
    let pt = headline_point();
    let bits = ctx.bits();
    let pi = ctx.pi::<BigFloat>();

    let spec = PiSeriesSpec {
        a: rational(1054, 1),
        b: rational(233, 1),
        form: PiSeriesForm::Double(pt.clone()),
        target: rational(520, 1),
    };
    match eval_pi_series::<BigFloat>(&spec, &ctx) {
        Ok(v) => {
            b.at_most("series_520_over_pi", &(v.residual() + v.lhs.err.clone()));
        }
        Err(err) => b.failed("series_520_over_pi", err),
    }

    let target = creal(BigFloat::from_int(520, bits) / &pi);
    match double_series::<BigFloat>(&pt, &ctx) {
        Ok(s) => {
            let c = |v: i64| ctx.cint::<BigFloat>(v, 0);
            let lhs = s.a.scale(&c(233)).add(&s.theta_x.scale(&c(1054)));
            b.at_most("a_theta_form_520_over_pi", &(dist(&lhs.approx, &target) + lhs.err));
            let rel = s.a.scale(&c(2)).sub(&s.theta_x.scale(&c(28))).add(&s.theta_y.scale(&c(65)));
            b.at_most("differential_relation", &(rel.approx.modulus() + rel.err));
        }
        Err(err) => {
            b.failed("a_theta_form_520_over_pi", &err);
            b.failed("differential_relation", err);
        }
    }

    match sun_reduction::<BigFloat>(&ctx) {
        Ok(red) => {
            let certs = [red.transfer.eq5.clone(), red.transfer.multiplier.clone()];
            let assembled = red.checks.iter().find(|c| c.name == "assembled").expect("assembled check");
            let t = b.tolerance().clone();
            b.at_most_with("modular_assembly_520_over_pi", &assembled.residual, &t, &certs);
            let c52 = creal(BigFloat::from_int(5, bits).sqrt() * BigFloat::from_int(52, bits));
            let zero = red.s1.clone() + c52 * &red.chain.s2;
            b.at_most("s1_plus_52_sqrt5_s2", &zero.modulus());
        }
        Err(err) => {
            b.failed("modular_assembly_520_over_pi", &err);
            b.failed("s1_plus_52_sqrt5_s2", err);
        }
    }

    let iv2 = PiSeriesSpec {
        a: rational(340, 1),
        b: rational(59, 1),
        form: PiSeriesForm::Trinomial { base: rational(-1, 480 * 480), tb: 62.into(), tc: 1.into() },
        target: rational(120, 1),
    };
    match eval_pi_series::<BigFloat>(&iv2, &ctx) {
        Ok(v) => {
            b.at_most("trinomial_series_120_over_pi", &(v.residual() + v.lhs.err.clone()));
        }
        Err(err) => b.failed("trinomial_series_120_over_pi", err),
    }
    b.finish()
}

fn recognition_checks(b: &mut ReportBuilder) {
    let ctx = PrecisionContext::new(RECOGNITION_DIGITS).expect("valid digits");
    let t0 = match UpperHalfPoint::<BigFloat>::from_exact(&tau0(), &ctx) {
        Ok(t) => t,
        Err(err) => return b.failed("x_recognition", err),
    };
    let x = match moduli(&t0, &ctx) {
        Ok(m) => m.kprime.approx,
        Err(err) => return b.failed("x_recognition", err),
    };
    let budget = RecognitionBudget::new(16, 10, 20.0).expect("valid budget");
    match recognize_min_poly(&BoundedValue::new(x, ctx.tol()), &budget, &ctx) {
        Ok(Some(poly)) => {
            let p = poly.palindromic_even_reduce();
            let expected = IntPolynomial::from_descending(&P_COEFFS);
            let found = p.is_some() && p == expected;
            let note = p.as_ref().map(|p| p.to_string()).unwrap_or_else(|| poly.to_string());
            b.predicate("x_recognition", found, note);
        }
        Ok(None) => b.predicate("x_recognition", false, "no relation within budget"),
        Err(err) => b.failed("x_recognition", err),
    }
    match e2_tau0_chain::<BigFloat>(&ctx) {
        Ok(ch) => {
            let budget = RecognitionBudget::new(8, 12, 20.0).expect("valid budget");
            match recognize_min_poly(&BoundedValue::new(ch.s2, ctx.tol()), &budget, &ctx) {
                Ok(Some(poly)) => {
                    let ok = Some(&poly) == IntPolynomial::from_descending(&S2_MINPOLY).as_ref();
                    b.predicate("s2_recognition", ok, poly.to_string());
                }
                Ok(None) => b.predicate("s2_recognition", false, "no relation within budget"),
                Err(err) => b.failed("s2_recognition", err),
            }
        }
        Err(err) => b.failed("s2_recognition", err),
    }
}

pub fn verify_constants(cfg: &HarnessConfig) -> VerificationReport {
    let (ctx, tol) = contexts(cfg);
    let mut b = ReportBuilder::new("constants", cfg.digits, tol);
    b.describe("printed approximations, minimal polynomials, radical forms, E2(tau0) and the negative example");
    let bits = ctx.bits();

    match UpperHalfPoint::<BigFloat>::from_exact(&tau0(), &ctx).and_then(|t| {
        let m = moduli(&t, &ctx)?;
        let n = moduli(&t.scaled(5, &ctx)?, &ctx)?;
        Ok((m, n))
    }) {
        Ok((m, n)) => {
            let x = m.kprime.approx.clone();
            let y = n.kprime.approx.clone();
            b.at_most_with("x_printed", &dist(&x, &printed("0.57884718", "-0.81543604", &ctx)), &pow10(-8, &ctx), &[]);
            b.at_most_with("y_printed", &dist(&y, &printed("0.99999998", "-0.00021224", &ctx)), &pow10(-8, &ctx), &[]);
            let one = ctx.cone::<BigFloat>();
            let alpha = one.clone() - x.clone() * &x;
            let beta = one - y.clone() * &y;
            b.at_most_with("alpha_printed", &dist(&alpha, &printed("1.329871878", "0.944025712", &ctx)), &pow10(-9, &ctx), &[]);
            b.at_most_with("beta_printed", &dist(&beta, &printed("9.00938e-8", "0.0004244852051", &ctx)), &pow10(-13, &ctx), &[]);
            let lift = palindromic_octic_lift();
            b.at_most("x_minimal_polynomial", &poly_residual(&lift, &BoundedValue::new(x, ctx.tol()), &ctx));
            b.at_most("y_minimal_polynomial", &poly_residual(&lift, &BoundedValue::new(y, ctx.tol()), &ctx));
        }
        Err(err) => b.failed("x_printed", err),
    }

    if cfg.recognize {
        recognition_checks(&mut b);
    }

    match sun_reduction::<BigFloat>(&ctx) {
        Ok(red) => {
            b.at_most_with("s1_printed", &dist(&red.s1, &printed("5.0538411", "-7.1194683", &ctx)), &pow10(-7, &ctx), &[]);
            b.at_most_with("s2_printed", &dist(&red.chain.s2, &printed("-0.043464355", "0.061229289", &ctx)), &pow10(-9, &ctx), &[]);
            let s1n = red.s1.clone() / (red.alpha.clone() * ctx.cint::<BigFloat>(52, 0));
            let p1 = IntPolynomial::from_descending(&S1_OVER_52_ALPHA_MINPOLY).expect("nonzero");
            b.at_most("s1_minimal_polynomial", &poly_residual(&p1, &BoundedValue::new(s1n, ctx.tol()), &ctx));
            let p2 = IntPolynomial::from_descending(&S2_MINPOLY).expect("nonzero");
            b.at_most("s2_minimal_polynomial", &poly_residual(&p2, &BoundedValue::new(red.chain.s2.clone(), ctx.tol()), &ctx));
            b.predicate(
                "e2_pi_coefficient_exact",
                red.chain.pi_coeff == QSqrt5::sqrt5_times(rational(2, 1)),
                red.chain.pi_coeff.to_string(),
            );
            let two_sqrt5 = creal(BigFloat::from_int(5, bits).sqrt() * BigFloat::from_int(2, bits));
            b.at_most("e2_pi_coefficient", &dist(&red.chain.pi_coeff_numeric, &two_sqrt5));
            for s in red.chain.steps.iter().chain(&red.checks) {
                b.at_most(&format!("chain_{}", s.name), &s.residual);
            }
        }
        Err(err) => b.failed("s1_printed", err),
    }

    match verify_radicals::<BigFloat>(&ctx) {
        Ok(list) => {
            for r in list {
                b.at_most(&format!("radical_{}", r.name), &r.residual);
            }
        }
        Err(err) => b.failed("radical_displays", err),
    }

    let registry = Registry::builtin();
    for e in registry.expected_failures() {
        match entry_pair(e, &ctx) {
            Ok((pair, _)) => {
                b.at_most_with(&format!("{}_x_printed", e.id), &dist(&pair.X, &printed("0", "0.000106121305", &ctx)), &pow10(-12, &ctx), &[]);
                b.at_most_with(&format!("{}_y_printed", e.id), &dist(&pair.Y, &printed("0", "0.51647560", &ctx)), &pow10(-8, &ctx), &[]);
            }
            Err(err) => b.failed(&format!("{}_x_printed", e.id), err),
        }
        let mut sub = ReportBuilder::new(e.id.clone(), cfg.digits, b.tolerance().clone());
        entry_checks(&mut sub, e, &ctx);
        for mut c in sub.finish().checks {
            c.name = format!("{}_{}", e.id, c.name);
            b.push_record(c);
        }
    }
    b.finish()
}

pub fn verify_target(t: &Target, cfg: &HarnessConfig, registry: &Registry) -> Result<VerificationReport, HarnessError> {
    Ok(match t {
        Target::Headline => verify_headline(cfg),
        Target::Constants => verify_constants(cfg),
        Target::Entry(id) => verify_entry(registry.get(id).ok_or_else(|| HarnessError::UnknownEntry(id.clone()))?, cfg),
    })
}

/// Default reporting tolerance for a working precision:
/// `10^-min(40, digits/2 - 5)`.
pub fn default_tolerance(digits: u32) -> Tolerance {
    Tolerance::pow10(-((digits / 2).saturating_sub(5).min(40) as i32))
}
