//! Dense polynomials over `Q(i)` and over floating complex numbers.
//!
//! Coefficients are stored in ascending order of degree.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::{from_gaussian, gaussian_int, gaussian_is_zero, ComplexExt, GaussianRational};
use crate::precision::PrecisionContext;
use crate::scalar::Real;

/// Univariate polynomial over `Q(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly(pub Vec<GaussianRational>);

fn gzero() -> GaussianRational {
    gaussian_int(0, 0)
}

impl GaussPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(gaussian_is_zero) {
            coeffs.pop();
        }
        GaussPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.0.iter().rev().fold(gzero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> GaussPoly {
        GaussPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * gaussian_int(i as i64, 0))
                .collect(),
        )
    }

    pub fn mul(&self, o: &GaussPoly) -> GaussPoly {
        if self.is_zero() || o.is_zero() {
            return GaussPoly(vec![]);
        }
        let mut out = vec![gzero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        GaussPoly::new(out)
    }

    pub fn add(&self, o: &GaussPoly) -> GaussPoly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &GaussPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(gzero);
        GaussPoly::new((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }

    pub fn monic(&self) -> GaussPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => {
                let lead = lead.clone();
                GaussPoly(self.0.iter().map(|c| c.clone() / &lead).collect())
            }
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &GaussPoly) -> (GaussPoly, GaussPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut rem = self.0.clone();
        let n = self.0.len();
        if n <= dd {
            return (GaussPoly(vec![]), self.clone());
        }
        let mut quot = vec![gzero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = rem[i + dd].clone() / &lead;
            if !gaussian_is_zero(&c) {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (GaussPoly::new(quot), GaussPoly::new(rem))
    }

    pub fn gcd(&self, other: &GaussPoly) -> GaussPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> GaussPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn to_complex<R: Real>(&self, ctx: &PrecisionContext) -> Vec<Complex<R>> {
        self.0.iter().map(|c| from_gaussian(c, ctx.bits())).collect()
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[GaussianRational], ys: &[GaussianRational]) -> GaussPoly {
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                coef[i] = (coef[i].clone() - &coef[i - 1]) / (xs[i].clone() - &xs[i - j]);
            }
        }
        // expand the Newton form
        let mut out = vec![gzero(); n];
        for i in (0..n).rev() {
            // out = out * (X - xs[i]) + coef[i]
            let mut next = vec![gzero(); n];
            for k in 0..n {
                if gaussian_is_zero(&out[k]) {
                    continue;
                }
                if k + 1 < n {
                    next[k + 1] = next[k + 1].clone() + &out[k];
                }
                next[k] = next[k].clone() - out[k].clone() * &xs[i];
            }
            next[0] = next[0].clone() + &coef[i];
            out = next;
        }
        GaussPoly::new(out)
    }
}

/// Bivariate polynomial over `Q(i)`; `c[i][j]` multiplies `X^i Y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub c: Vec<Vec<GaussianRational>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { c: vec![] }
    }

    pub fn constant(v: GaussianRational) -> Self {
        BiPoly { c: vec![vec![v]] }
    }

    pub fn x() -> Self {
        BiPoly { c: vec![vec![gzero()], vec![gaussian_int(1, 0)]] }
    }

    pub fn y() -> Self {
        BiPoly { c: vec![vec![gzero(), gaussian_int(1, 0)]] }
    }

    pub fn deg_x(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_y(&self) -> usize {
        self.c.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1)
    }

    fn get(&self, i: usize, j: usize) -> GaussianRational {
        self.c.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(gzero)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let nx = self.c.len().max(o.c.len());
        let ny = self.deg_y().max(o.deg_y()) + 1;
        let c = (0..nx).map(|i| (0..ny).map(|j| self.get(i, j) + o.get(i, j)).collect()).collect();
        BiPoly { c }
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly { c: self.c.iter().map(|r| r.iter().map(|v| -v.clone()).collect()).collect() }
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.c.is_empty() || o.c.is_empty() {
            return BiPoly::zero();
        }
        let nx = self.deg_x() + o.deg_x() + 1;
        let ny = self.deg_y() + o.deg_y() + 1;
        let mut c = vec![vec![gzero(); ny]; nx];
        for (i, r) in self.c.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                if gaussian_is_zero(a) {
                    continue;
                }
                for (k, s) in o.c.iter().enumerate() {
                    for (l, b) in s.iter().enumerate() {
                        c[i + k][j + l] = c[i + k][j + l].clone() + a.clone() * b;
                    }
                }
            }
        }
        BiPoly { c }
    }

    pub fn scale(&self, v: &GaussianRational) -> BiPoly {
        BiPoly { c: self.c.iter().map(|r| r.iter().map(|a| a.clone() * v).collect()).collect() }
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        (0..n).fold(BiPoly::constant(gaussian_int(1, 0)), |acc, _| acc.mul(self))
    }

    /// Coefficients in `Y` after substituting `X = x`, padded to `deg_y + 1`.
    pub fn at_x(&self, x: &GaussianRational) -> Vec<GaussianRational> {
        let ny = self.deg_y() + 1;
        (0..ny)
            .map(|j| (0..self.c.len()).rev().fold(gzero(), |acc, i| acc * x + self.get(i, j)))
            .collect()
    }

    pub fn eval_c<R: Real>(&self, x: &Complex<R>, y: &Complex<R>, ctx: &PrecisionContext) -> Complex<R> {
        let bits = ctx.bits();
        let mut acc = ctx.czero::<R>();
        for r in self.c.iter().rev() {
            let mut inner = ctx.czero::<R>();
            for a in r.iter().rev() {
                inner = inner * y + from_gaussian::<R>(a, bits);
            }
            acc = acc * x + inner;
        }
        acc
    }

    pub fn d_x(&self) -> BiPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.iter().map(|a| a.clone() * gaussian_int(i as i64, 0)).collect())
            .collect();
        BiPoly { c }
    }

    pub fn d_y(&self) -> BiPoly {
        let c = self
            .c
            .iter()
            .map(|r| r.iter().enumerate().skip(1).map(|(j, a)| a.clone() * gaussian_int(j as i64, 0)).collect())
            .collect();
        BiPoly { c }
    }

    /// Coefficients in `Y` as polynomials in `X`, for floating evaluation.
    pub fn y_coeffs_at<R: Real>(&self, x: &Complex<R>, ctx: &PrecisionContext) -> Vec<Complex<R>> {
        let bits = ctx.bits();
        (0..=self.deg_y())
            .map(|j| {
                (0..self.c.len())
                    .rev()
                    .fold(ctx.czero::<R>(), |acc, i| acc * x + from_gaussian::<R>(&self.get(i, j), bits))
            })
            .collect()
    }
}

/// Determinant over `Q(i)` by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<GaussianRational>>) -> GaussianRational {
    let n = m.len();
    let mut det = gaussian_int(1, 0);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !gaussian_is_zero(&m[r][col])) else {
            return gzero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if gaussian_is_zero(&m[r][col]) {
                continue;
            }
            let f = m[r][col].clone() / &p;
            for c in col..n {
                let v = m[col][c].clone() * &f;
                m[r][c] = m[r][c].clone() - v;
            }
        }
    }
    det
}

/// Sylvester matrix of `p` and `q` (ascending coefficients) with the given
/// formal degrees.
pub fn sylvester(p: &[GaussianRational], q: &[GaussianRational]) -> Vec<Vec<GaussianRational>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![gzero(); size];
        for (k, c) in p.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![gzero(); size];
        for (k, c) in q.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res_Y(p, q)` as a polynomial in `X`, by evaluation at integer points and
/// interpolation.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> GaussPoly {
    let bound = p.deg_x() * q.deg_y() + q.deg_x() * p.deg_y();
    let xs: Vec<GaussianRational> = (0..=bound as i64).map(|v| gaussian_int(v, 0)).collect();
    let ys: Vec<GaussianRational> = xs
        .iter()
        .map(|x| determinant(sylvester(&p.at_x(x), &q.at_x(x))))
        .collect();
    GaussPoly::interpolate(&xs, &ys)
}

pub fn eval_c<R: Real>(coeffs: &[Complex<R>], z: &Complex<R>, ctx: &PrecisionContext) -> Complex<R> {
    coeffs.iter().rev().fold(ctx.czero::<R>(), |acc, c| acc * z + c)
}

fn eval_with_derivative<R: Real>(coeffs: &[Complex<R>], z: &Complex<R>, ctx: &PrecisionContext) -> (Complex<R>, Complex<R>) {
    let mut p = ctx.czero::<R>();
    let mut dp = ctx.czero::<R>();
    for c in coeffs.iter().rev() {
        dp = dp * z + &p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of a polynomial with complex coefficients by the Aberth-Ehrlich
/// iteration; `None` when it fails to settle.
pub fn aberth_roots<R: Real>(coeffs: &[Complex<R>], ctx: &PrecisionContext) -> Option<Vec<Complex<R>>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.modulus().is_zero()) {
        coeffs.pop();
    }
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(vec![]);
    }
    let bits = ctx.bits();
    let lead = coeffs[n].modulus();
    // Cauchy bound for the initial circle
    let radius = coeffs[..n]
        .iter()
        .map(|c| (c.modulus() / &lead).to_f64())
        .fold(0.0f64, f64::max)
        + 1.0;
    let mut z: Vec<Complex<R>> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex::new(
                R::from_f64(radius * angle.cos() * 0.5, bits),
                R::from_f64(radius * angle.sin() * 0.5, bits),
            )
        })
        .collect();
    let eps_log = -(ctx.digits() as f64) + 5.0;
    let one = ctx.cone::<R>();
    let mut settled_rounds = 0;
    for _ in 0..2000 {
        let mut worst = f64::NEG_INFINITY;
        for k in 0..n {
            let (p, dp) = eval_with_derivative(&coeffs, &z[k], ctx);
            if p.modulus().is_zero() {
                continue;
            }
            let ratio = p / dp;
            let mut s = ctx.czero::<R>();
            for j in 0..n {
                if j != k {
                    s = s + one.clone() / (z[k].clone() - &z[j]);
                }
            }
            let step = ratio.clone() / (one.clone() - ratio * s);
            let rel = step.modulus().log10_abs() - z[k].modulus().max_of(R::one()).log10_abs();
            worst = worst.max(rel);
            z[k] = z[k].clone() - step;
        }
        if worst < eps_log {
            settled_rounds += 1;
            if settled_rounds >= 2 {
                return Some(z);
            }
        }
    }
    None
}

/// Polynomial with the given integer coefficients.
pub fn rational_coeffs(coeffs: &[i64]) -> GaussPoly {
    GaussPoly::new(coeffs.iter().map(|&c| gaussian_int(c, 0)).collect())
}

pub fn gaussian_from_rational(q: BigRational) -> GaussianRational {
    Complex::new(q, BigRational::zero())
}
