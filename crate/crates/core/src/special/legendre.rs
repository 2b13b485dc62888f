//! Legendre polynomials of complex argument and generalised central
//! trinomial coefficients `T_n(b, c)`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::precision::PrecisionContext;
use crate::scalar::Real;

/// `P_0(z), P_1(z), ...` by `(n+1) P_{n+1} = (2n+1) z P_n - n P_{n-1}`.
pub struct LegendreSequence<R: Real> {
    z: Complex<R>,
    prev: Complex<R>,
    cur: Complex<R>,
    n: i64,
    bits: u32,
}

impl<R: Real> LegendreSequence<R> {
    pub fn new(z: &Complex<R>, ctx: &PrecisionContext) -> Self {
        LegendreSequence { z: z.clone(), prev: ctx.czero(), cur: ctx.cone(), n: 0, bits: ctx.bits() }
    }
}

impl<R: Real> Iterator for LegendreSequence<R> {
    type Item = Complex<R>;

    fn next(&mut self) -> Option<Complex<R>> {
        let out = self.cur.clone();
        let n = self.n;
        let a = R::from_int(2 * n + 1, self.bits);
        let b = R::from_int(n, self.bits);
        let d = R::from_int(n + 1, self.bits);
        let next = (self.z.clone() * &self.cur * Complex::new(a, R::zero()) - self.prev.clone() * Complex::new(b, R::zero()))
            / Complex::new(d, R::zero());
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        Some(out)
    }
}

pub fn legendre_p<R: Real>(n: usize, z: &Complex<R>, ctx: &PrecisionContext) -> Complex<R> {
    LegendreSequence::new(z, ctx).nth(n).expect("sequence is infinite")
}

/// `T_n(b, c) = sum_j C(n, 2j) C(2j, j) b^(n-2j) c^j`, the coefficient of
/// `x^n` in `(x^2 + b x + c)^n`.
pub fn trinomial(n: u64, b: &BigInt, c: &BigInt) -> BigInt {
    let mut total = BigInt::zero();
    let mut binom_n_2j = BigInt::one();
    let mut binom_2j_j = BigInt::one();
    let mut c_pow = BigInt::one();
    for j in 0..=n / 2 {
        if j > 0 {
            // C(n, 2j) from C(n, 2j-2); C(2j, j) from C(2j-2, j-1)
            binom_n_2j = binom_n_2j * (n - 2 * j + 2) * (n - 2 * j + 1) / ((2 * j - 1) * (2 * j));
            binom_2j_j = binom_2j_j * (2 * (2 * j - 1)) / j;
            c_pow *= c;
        }
        total += &binom_n_2j * &binom_2j_j * b.pow((n - 2 * j) as u32) * &c_pow;
    }
    total
}

/// `T_0, T_1, ...` by `(n+1) T_{n+1} = (2n+1) b T_n - n (b^2 - 4c) T_{n-1}`.
pub struct TrinomialSequence {
    b: BigInt,
    disc: BigInt,
    prev: BigInt,
    cur: BigInt,
    n: u64,
}

impl TrinomialSequence {
    pub fn new(b: &BigInt, c: &BigInt) -> Self {
        TrinomialSequence { b: b.clone(), disc: b * b - c * 4u32, prev: BigInt::zero(), cur: BigInt::one(), n: 0 }
    }
}

impl Iterator for TrinomialSequence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.cur.clone();
        let n = self.n;
        let num = &self.cur * &self.b * (2 * n + 1) - &self.prev * &self.disc * n;
        let (next, rem) = num.div_rem(&BigInt::from(n + 1));
        debug_assert!(rem.is_zero());
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n += 1;
        Some(out)
    }
}
