use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::RecognitionError;
use crate::scalar::Real;

/// Lovasz constant.
pub const DELTA: f64 = 0.99;

fn to_real<R: Real>(v: &[BigInt], bits: u32) -> Vec<R> {
    v.iter().map(|c| R::from_bigint(c, bits)).collect()
}

fn dot<R: Real>(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(R::zero(), |acc, (x, y)| acc + x.clone() * y)
}

/// Gram-Schmidt data for the rows processed so far.
struct Gso<R: Real> {
    bstar: Vec<Vec<R>>,
    norm: Vec<R>,
    mu: Vec<Vec<R>>,
}

impl<R: Real> Gso<R> {
    fn row(&mut self, basis: &[Vec<BigInt>], k: usize, bits: u32) {
        let bk = to_real::<R>(&basis[k], bits);
        let mut star = bk.clone();
        for j in 0..k {
            let m = dot(&bk, &self.bstar[j]) / &self.norm[j];
            for (s, b) in star.iter_mut().zip(&self.bstar[j]) {
                *s = s.clone() - m.clone() * b;
            }
            self.mu[k][j] = m;
        }
        self.norm[k] = dot(&star, &star);
        self.bstar[k] = star;
    }
}

/// In-place LLL reduction of the rows of `basis`, with Gram-Schmidt in `R` at
/// `bits` of precision.
pub fn lll_reduce<R: Real>(basis: &mut [Vec<BigInt>], bits: u32, max_iterations: usize) -> Result<(), RecognitionError> {
    let n = basis.len();
    if n < 2 {
        return Ok(());
    }
    let zero = R::from_int(0, bits);
    let mut g = Gso {
        bstar: vec![Vec::new(); n],
        norm: vec![zero.clone(); n],
        mu: vec![vec![zero; n]; n],
    };
    let delta = R::from_f64(DELTA, bits);
    let big = BigInt::from(1u64 << 20);
    g.row(basis, 0, bits);
    let mut k = 1;
    let mut iterations = 0;
    while k < n {
        iterations += 1;
        if iterations > max_iterations {
            return Err(RecognitionError::NonTermination(max_iterations));
        }
        // size reduction, repeated while large multipliers lose precision
        loop {
            g.row(basis, k, bits);
            let mut large = false;
            for j in (0..k).rev() {
                let r = g.mu[k][j].round_bigint().ok_or(RecognitionError::NonFinite)?;
                if r.is_zero() {
                    continue;
                }
                large |= r.abs() > big;
                let (head, tail) = basis.split_at_mut(k);
                for (a, b) in tail[0].iter_mut().zip(&head[j]) {
                    *a -= &r * b;
                }
                let rr = R::from_bigint(&r, bits);
                g.mu[k][j] = g.mu[k][j].clone() - &rr;
                for i in 0..j {
                    g.mu[k][i] = g.mu[k][i].clone() - rr.clone() * &g.mu[j][i];
                }
            }
            if !large {
                break;
            }
        }
        if g.norm[k].is_zero() {
            return Err(RecognitionError::Degenerate);
        }
        let m = g.mu[k][k - 1].clone();
        if g.norm[k] < (delta.clone() - m.clone() * &m) * &g.norm[k - 1] {
            basis.swap(k, k - 1);
            if k == 1 {
                g.row(basis, 0, bits);
            } else {
                k -= 1;
            }
        } else {
            k += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn reduces_a_skewed_basis() {
        let mut b: Vec<Vec<BigInt>> = [[1i64, 0, 0, 31416], [0, 1, 0, 27183], [0, 0, 1, 14142]]
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        lll_reduce::<BigFloat>(&mut b, 128, 10_000).unwrap();
        let n0: f64 = b[0].iter().map(|c| c.to_string().parse::<f64>().unwrap().powi(2)).sum();
        assert!(n0.sqrt() < 100.0);
    }
}
