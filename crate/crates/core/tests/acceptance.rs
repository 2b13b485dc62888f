//! Acceptance criteria 1-9. One line per criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pi520::complex::{creal, gaussian_frac, CutSide};
use pi520::harness::{run_all, verify_entry, HarnessConfig, Registry, P_COEFFS, RECOGNITION_DIGITS};
use pi520::modular::{e2_tau0_chain, sun_reduction, tau0, QSqrt5, S2_MINPOLY};
use pi520::recognition::{poly_residual, recognize_min_poly, IntPolynomial, RecognitionBudget};
use pi520::series::{a_double, a_legendre, converges_absolutely, double_series, eval_pi_series, PiSeriesForm, PiSeriesSpec, SeriesPoint};
use pi520::special::quadratic::rational;
use pi520::special::{e2, hyp_f, hyp_pair, moduli, theta_all, UpperHalfPoint};
use pi520::wz::{relations_residual, wz_product, XYPair};
use pi520::{BigComplex, BigFloat, BoundedValue, ComplexExt, PrecisionContext, Real};

const DIGITS: u32 = 120;
const TOL: i32 = -40;
const TOL_POLY: i32 = -30;
const TOL_PRINTED_8: i32 = -8;
const TOL_PRINTED_9: i32 = -9;
const TOL_FINITE_DIFF: i32 = -20;
const FAILURE_FLOOR: i32 = -3;
const SAMPLES: usize = 10;
const SEED: u64 = 520;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn p10(e: i32, c: &PrecisionContext) -> BigFloat {
    BigFloat::pow10(e, c.bits())
}

fn lg(v: &BigFloat) -> f64 {
    v.log10_abs()
}

fn dist(a: &BigComplex, b: &BigComplex) -> BigFloat {
    (a.clone() - b).modulus()
}

fn printed(re: &str, im: &str, c: &PrecisionContext) -> BigComplex {
    Complex::new(BigFloat::parse_decimal(re, c.bits()).unwrap(), BigFloat::parse_decimal(im, c.bits()).unwrap())
}

fn headline_point() -> SeriesPoint {
    SeriesPoint::new(gaussian_frac(1, 0, 480), gaussian_frac(8, 0, 1)).unwrap()
}

fn xy_tau0(c: &PrecisionContext) -> (BigComplex, BigComplex) {
    let t = UpperHalfPoint::<BigFloat>::from_exact(&tau0(), c).unwrap();
    let x = moduli(&t, c).unwrap().kprime.approx;
    let y = moduli(&t.scaled(5, c).unwrap(), c).unwrap().kprime.approx;
    (x, y)
}

fn criterion_1() -> Outcome {
    let c = ctx(DIGITS);
    let start = Instant::now();
    let spec = PiSeriesSpec {
        a: rational(1054, 1),
        b: rational(233, 1),
        form: PiSeriesForm::Double(headline_point()),
        target: rational(520, 1),
    };
    let v = eval_pi_series::<BigFloat>(&spec, &c).unwrap();
    let res = v.residual() + v.lhs.err.clone();
    let elapsed = start.elapsed();
    Outcome {
        pass: res < p10(TOL, &c) && v.terms <= 200 && elapsed < Duration::from_secs(10),
        detail: format!("|S_N - 520/pi| = 1e{:.1}, N = {}, {:?}", lg(&res), v.terms, elapsed),
    }
}

/// Gaussian rationals with small numerators and denominators, kept only when
/// the double series converges with ratio below 0.8.
fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<SeriesPoint> {
    let mut out = Vec::new();
    while out.len() < n {
        let den = rng.gen_range(20..2000);
        let x = gaussian_frac(rng.gen_range(-3..=3), rng.gen_range(-3..=3), den);
        let y = gaussian_frac(rng.gen_range(-40..=40), rng.gen_range(-40..=40), rng.gen_range(1..=8));
        let Ok(pt) = SeriesPoint::new(x, y) else { continue };
        let r = converges_absolutely(&pt).ratio;
        if r > 0.0 && r < 0.8 {
            out.push(pt);
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let c = ctx(DIGITS);
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points: Vec<SeriesPoint> = Registry::builtin().entries.iter().map(|e| e.point.clone()).collect();
    let registry_points = points.len();
    points.extend(random_points(&mut rng, SAMPLES));
    let mut worst = f64::NEG_INFINITY;
    let mut pass = true;
    for pt in &points {
        let d = a_double::<BigFloat>(pt, &c).unwrap();
        let l = a_legendre::<BigFloat>(pt, &c).unwrap();
        let r = dist(&d.approx, &l.approx) + d.err + l.err;
        worst = worst.max(lg(&r));
        pass &= r < p10(TOL, &c);
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: pass && registry_points == 18 && elapsed < Duration::from_secs(60),
        detail: format!("{} points, max |A_double - A_legendre| = 1e{worst:.1}, {elapsed:?}", points.len()),
    }
}

fn criterion_3() -> Outcome {
    let c = ctx(DIGITS);
    let (x, y) = xy_tau0(&c);
    let rel = relations_residual(&XYPair::manual(x.clone(), y.clone()), &headline_point(), &c).unwrap().max();
    let dx = dist(&x, &printed("0.57884718", "-0.81543604", &c));
    let dy = dist(&y, &printed("0.99999998", "-0.00021224", &c));
    Outcome {
        pass: rel < p10(TOL, &c) && dx <= p10(TOL_PRINTED_8, &c) && dy <= p10(TOL_PRINTED_8, &c),
        detail: format!("relations 1e{:.1}, |X - X~| = 1e{:.1}, |Y - Y~| = 1e{:.1}", lg(&rel), lg(&dx), lg(&dy)),
    }
}

fn criterion_4() -> Outcome {
    let lift = pi520::harness::palindromic_octic_lift();
    let c200 = ctx(200);
    let (x200, _) = xy_tau0(&c200);
    let res = poly_residual(&lift, &BoundedValue::new(x200, c200.tol()), &c200);

    let c = ctx(RECOGNITION_DIGITS);
    let (x, _) = xy_tau0(&c);
    let budget = RecognitionBudget::new(16, 10, 20.0).unwrap();
    let found = recognize_min_poly(&BoundedValue::new(x, c.tol()), &budget, &c).unwrap();
    let reduced = found.as_ref().and_then(|p| p.palindromic_even_reduce());
    let expected = IntPolynomial::from_descending(&P_COEFFS).unwrap();
    let exact = reduced.as_ref() == Some(&expected);
    Outcome {
        pass: res < p10(TOL_POLY, &c200) && exact,
        detail: format!(
            "octic residual 1e{:.1} at 200 digits; recognized p = {}",
            lg(&res),
            reduced.map(|p| p.to_string()).unwrap_or_else(|| "none".into())
        ),
    }
}

fn criterion_5() -> Outcome {
    let c = ctx(DIGITS);
    let chain = e2_tau0_chain::<BigFloat>(&c).unwrap();
    let red = sun_reduction::<BigFloat>(&c).unwrap();
    let ds2 = dist(&chain.s2, &printed("-0.043464355", "0.061229289", &c));
    let p2 = IntPolynomial::from_descending(&S2_MINPOLY).unwrap();
    let poly = poly_residual(&p2, &BoundedValue::new(chain.s2.clone(), c.tol()), &c);
    let sqrt5 = BigFloat::from_int(5, c.bits()).sqrt();
    let two_sqrt5 = creal(sqrt5.clone() * BigFloat::from_int(2, c.bits()));
    let pic = dist(&chain.pi_coeff_numeric, &two_sqrt5);
    let exact = chain.pi_coeff == QSqrt5::sqrt5_times(rational(2, 1));
    let zero = (red.s1.clone() + creal(sqrt5 * BigFloat::from_int(52, c.bits())) * &red.chain.s2).modulus();
    Outcome {
        pass: ds2 <= p10(TOL_PRINTED_9, &c)
            && poly < p10(TOL_POLY, &c)
            && pic < p10(TOL, &c)
            && exact
            && zero < p10(TOL, &c),
        detail: format!(
            "|s2 - s2~| = 1e{:.1}, poly 1e{:.1}, 1/pi coeff {} (1e{:.1}), |s1 + 52 sqrt5 s2| = 1e{:.1}",
            lg(&ds2),
            lg(&poly),
            chain.pi_coeff,
            lg(&pic),
            lg(&zero)
        ),
    }
}

fn criterion_6() -> Outcome {
    let c = ctx(DIGITS);
    let spec = PiSeriesSpec {
        a: rational(340, 1),
        b: rational(59, 1),
        form: PiSeriesForm::Trinomial { base: rational(-1, 480 * 480), tb: 62.into(), tc: 1.into() },
        target: rational(120, 1),
    };
    let v = eval_pi_series::<BigFloat>(&spec, &c).unwrap();
    let iv2 = v.residual() + v.lhs.err.clone();
    let s = double_series::<BigFloat>(&headline_point(), &c).unwrap();
    let k = |n: i64| c.cint::<BigFloat>(n, 0);
    let rel = s.a.scale(&k(2)).sub(&s.theta_x.scale(&k(28))).add(&s.theta_y.scale(&k(65)));
    let drel = rel.approx.modulus() + rel.err;
    Outcome {
        pass: iv2 < p10(TOL, &c) && drel < p10(TOL, &c),
        detail: format!("trinomial series 1e{:.1}, 2A - 28 x A_x + 65 y A_y = 1e{:.1}", lg(&iv2), lg(&drel)),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let summary = run_all(&HarnessConfig::with_digits(DIGITS)).unwrap();
    let elapsed = start.elapsed();
    let registry = Registry::builtin();
    let entries: Vec<_> = summary.reports.iter().filter(|r| registry.get(&r.target).is_some()).collect();
    let verified = entries.iter().filter(|r| r.verified() && r.checks.len() == 4).count();
    let failing: Vec<&str> = summary.reports.iter().filter(|r| !r.verified()).map(|r| r.target.as_str()).collect();
    Outcome {
        pass: entries.len() == 17 && verified == 17 && summary.all_verified() && elapsed < Duration::from_secs(300),
        detail: format!(
            "{verified}/17 entries verified, {} reports, failing {failing:?}, {elapsed:?}",
            summary.reports.len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let c = ctx(DIGITS);
    let registry = Registry::builtin();
    let e = registry.expected_failures().next().unwrap();
    let report = verify_entry(e, &HarnessConfig::with_digits(DIGITS));
    let (pair, _) = pi520::harness::entry_pair(e, &c).unwrap();
    let a = a_double::<BigFloat>(&e.point, &c).unwrap();
    let mut gaps = Vec::new();
    for side in [CutSide::Above, CutSide::Below] {
        let w = wz_product(&pair, side, &c).unwrap();
        gaps.push(dist(&w.approx, &a.approx) - w.err - a.err.clone());
    }
    let rejected = wz_product(&pair, CutSide::Reject, &c).is_err();
    let floor = p10(FAILURE_FLOOR, &c);
    Outcome {
        pass: e.expected_failure && report.verified() && rejected && gaps.iter().all(|g| *g > floor),
        detail: format!(
            "tau1: |A - WZ| = {} / {} on the two sides of the cut, report {}",
            gaps[0].to_sci(6),
            gaps[1].to_sci(6),
            report.verdict
        ),
    }
}

fn sample_tau(rng: &mut ChaCha8Rng, c: &PrecisionContext) -> UpperHalfPoint<BigFloat> {
    let re = rng.gen_range(-0.5..0.5);
    let im = rng.gen_range(0.6..2.0);
    UpperHalfPoint::new(Complex::new(BigFloat::from_f64(re, c.bits()), BigFloat::from_f64(im, c.bits()))).unwrap()
}

fn criterion_9() -> Outcome {
    let c = ctx(DIGITS);
    let bits = c.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let one = c.cone::<BigFloat>();
    let i = c.ci::<BigFloat>();
    let pi = c.pi::<BigFloat>();
    let h = BigFloat::pow10(-12, bits);
    let names = ["jacobi", "pythagoras", "translation", "inversion", "e2_law", "f_theta", "g_difference"];
    let mut worst = [f64::NEG_INFINITY; 7];
    for _ in 0..SAMPLES {
        let t = sample_tau(&mut rng, &c);
        let tau = t.tau.clone();
        let [t2, t3, t4] = theta_all(&t, &c).unwrap();
        let q4 = |v: &BoundedValue<BigFloat>| v.approx.clone() * &v.approx * &v.approx * &v.approx;
        let jac = dist(&q4(&t3), &(q4(&t2) + q4(&t4)));

        let m = moduli(&t, &c).unwrap();
        let (k, kp) = (m.k.approx.clone(), m.kprime.approx.clone());
        let pyth = dist(&(k.clone() * &k + kp.clone() * &kp), &one);

        let shifted = moduli(&UpperHalfPoint::new(tau.clone() + &one).unwrap(), &c).unwrap();
        let trans = dist(&shifted.k.approx, &(i.clone() * &k / &kp)).max_of(dist(&shifted.kprime.approx, &(one.clone() / &kp)));

        let inv_t = UpperHalfPoint::new(-(one.clone() / &tau)).unwrap();
        let inv = moduli(&inv_t, &c).unwrap();
        let inversion = dist(&inv.k.approx, &kp).max_of(dist(&inv.kprime.approx, &k));

        let e_tau = e2(&t, &c).unwrap().approx;
        let e_inv = e2(&inv_t, &c).unwrap().approx;
        let law = tau.clone() * &tau * &e_tau - (i.clone() * &tau).scale_by(&(BigFloat::from_int(6, bits) / &pi));
        let e2_law = dist(&e_inv, &law);

        let alpha = k.clone() * &k;
        let f = hyp_f(&alpha, &c).unwrap().approx;
        let f_theta = dist(&f, &m.theta3_sq.approx);

        let g = hyp_pair(&alpha, CutSide::Reject, &c).unwrap().g.approx;
        let hc = creal(h.clone());
        let fp = hyp_f(&(alpha.clone() + &hc), &c).unwrap().approx;
        let fm = hyp_f(&(alpha.clone() - &hc), &c).unwrap().approx;
        let fd = alpha * (fp - fm) / creal(h.clone() * BigFloat::from_int(2, bits));
        let g_diff = dist(&g, &fd);

        for (w, r) in worst.iter_mut().zip([jac, pyth, trans, inversion, e2_law, f_theta, g_diff]) {
            *w = w.max(lg(&r));
        }
    }
    let pass = worst[..6].iter().all(|w| *w < TOL as f64) && worst[6] < TOL_FINITE_DIFF as f64;
    let detail = names.iter().zip(worst).map(|(n, w)| format!("{n} 1e{w:.1}")).collect::<Vec<_>>().join(", ");
    Outcome { pass, detail: format!("{SAMPLES} tau: {detail}") }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("headline series equals 520/pi", criterion_1),
        ("double series equals Legendre form", criterion_2),
        ("modular parametrization at tau0", criterion_3),
        ("minimal polynomial of X", criterion_4),
        ("E2 chain and s1 + 52 sqrt5 s2 = 0", criterion_5),
        ("trinomial series and differential relation", criterion_6),
        ("table entries", criterion_7),
        ("negative control off the principal branch", criterion_8),
        ("modular and hypergeometric property suites", criterion_9),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {} [{:.1}s]",
            n + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
