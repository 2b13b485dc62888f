use num_complex::Complex;
use serde::Serialize;

use super::XYPair;
use crate::complex::ComplexExt;
use crate::precision::PrecisionContext;
use crate::scalar::Real;
use crate::series::convergence_ratio;

pub const PATH_GRID: usize = 64;

/// A-priori bounds along `X_t = (1 - t) X + t`, `Y_t = (1 - t) Y + t`,
/// all derived from the endpoint pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathEstimates {
    /// `|1 - XY| + |1 - X||1 - Y|`, bounds `|1 - X_t Y_t|`
    pub one_minus_xy: f64,
    /// `2 - one_minus_xy`, bounds `|1 + X_t Y_t|` from below
    pub one_plus_xy: f64,
    /// `|X - Y| / (4 one_plus_xy)`, bounds `|x_t y_t|^(1/2)`
    pub sqrt_xy: f64,
    /// `|(1 - X)(1 - Y) / (X - Y)|`
    pub eps1: f64,
    /// `|(1 - X)(1 - Y)| / one_plus_xy`
    pub eps2: f64,
    /// `|(1 - XY) / (X - Y)|`
    pub a: f64,
    /// bound on `|4 x_t / y_t|`
    pub four_x_over_y: f64,
    /// convergence ratio implied by the bounds
    pub ratio: f64,
}

impl PathEstimates {
    #[allow(non_snake_case)]
    pub fn from_pair<R: Real>(pair: &XYPair<R>, ctx: &PrecisionContext) -> Self {
        let one = ctx.cone::<R>();
        let (X, Y) = (&pair.X, &pair.Y);
        let m = |z: Complex<R>| z.modulus().to_f64();
        let xy = X.clone() * Y;
        let diff = X.clone() - Y;
        let omx = one.clone() - X;
        let omy = one.clone() - Y;
        let one_minus_xy = m(one.clone() - &xy) + m(omx.clone()) * m(omy.clone());
        let one_plus_xy = 2.0 - one_minus_xy;
        let sqrt_xy = m(diff.clone()) / (4.0 * one_plus_xy);
        let eps1 = m(omx.clone() * &omy / &diff);
        let eps2 = m(omx * omy) / one_plus_xy;
        let big_a = (one.clone() - &xy) / &diff;
        let a = m(big_a.clone());
        let spread = (a + eps1).powi(2) * (1.0 + eps2).powi(2) - a * a;
        let four_x_over_y = m(big_a.clone() * &big_a - one) + spread;
        let ratio = convergence_ratio(sqrt_xy * sqrt_xy, four_x_over_y);
        PathEstimates { one_minus_xy, one_plus_xy, sqrt_xy, eps1, eps2, a, four_x_over_y, ratio }
    }
}

/// Result of checking the continuation path on a grid of `t` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathCertificate {
    pub grid: usize,
    /// largest convergence ratio seen on the grid
    pub max_ratio: f64,
    /// every `X_t`, `Y_t` has nonzero real part, so `1 - X_t^2`, `1 - Y_t^2`
    /// stay off the cut
    pub cut_clear: bool,
    pub estimates: PathEstimates,
}

impl PathCertificate {
    pub fn certified(&self) -> bool {
        self.cut_clear && self.max_ratio < 1.0 && self.estimates.one_plus_xy > 0.0 && self.estimates.ratio < 1.0
    }
}

pub fn certify_path<R: Real>(pair: &XYPair<R>, ctx: &PrecisionContext) -> PathCertificate {
    let one = ctx.cone::<R>();
    let mut max_ratio = 0.0f64;
    let mut cut_clear = true;
    for j in 0..PATH_GRID {
        let t = ctx.real::<R>(j as f64 / PATH_GRID as f64);
        let s = R::one() - &t;
        let xt = pair.X.scale_by(&s) + Complex::new(t.clone(), R::zero());
        let yt = pair.Y.scale_by(&s) + Complex::new(t, R::zero());
        if xt.re.is_zero() || yt.re.is_zero() {
            cut_clear = false;
        }
        let plus = one.clone() + xt.clone() * &yt;
        let diff = xt.clone() - &yt;
        if plus.modulus().is_zero() || diff.modulus().is_zero() {
            max_ratio = f64::INFINITY;
            continue;
        }
        // -x_t y_t = u^2, 1 + 4 x_t / y_t = w^2
        let u = diff.clone() / (plus.clone() * ctx.cint::<R>(4, 0));
        let w = (xt.clone() + &yt) * (one.clone() - xt * &yt) / (diff * plus);
        let xy_abs = (u.clone() * u).modulus().to_f64();
        let q = (w.clone() * w - &one).modulus().to_f64();
        max_ratio = max_ratio.max(convergence_ratio(xy_abs, q));
    }
    PathCertificate { grid: PATH_GRID, max_ratio, cut_clear, estimates: PathEstimates::from_pair(pair, ctx) }
}
