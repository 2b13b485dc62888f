//! Hypergeometric form of `A(x, y)`.
//!
//! For `(X, Y)` near `(1, 1)` with
//!
//! ```text
//! -x y      = ((X - Y) / (4 (1 + X Y)))^2
//! 1 + 4x/y  = ((X + Y)(1 - X Y) / ((X - Y)(1 + X Y)))^2
//! ```
//!
//! one has `A(x, y) = (1 + X Y)/2 * F(1 - X^2) F(1 - Y^2)`. This module
//! solves the relations, walks their symmetry group, evaluates the product
//! and its `x`-derivative, and certifies the straight-line continuation path
//! from `(1, 1)` to a solution.

mod orbit;
mod path;
mod product;
mod relations;
mod solve;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::precision::PrecisionError;
use crate::scalar::Real;
use crate::series::SeriesError;
use crate::special::SpecialError;

pub use orbit::{apply, symmetry_orbit, Symmetry};
pub use path::{certify_path, PathCertificate, PathEstimates, PATH_GRID};
pub use product::{d_a_dx_hyper, wz_product, WzDerivative};
pub use relations::{relation_polynomials, relations_residual, RelationResidual};
pub use solve::{solve_xy, XYOrbit};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WzError {
    #[error("degenerate pair: 1 + XY vanishes")]
    Degenerate,
    #[error("singular derivative system")]
    SingularSystem,
    #[error("no solution found at the requested precision")]
    NoSolution,
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Precision(#[from] PrecisionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Solved,
    Modular,
    Manual,
}

/// A candidate `(X, Y)` for the relations above.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq)]
pub struct XYPair<R: Real> {
    pub X: Complex<R>,
    pub Y: Complex<R>,
    pub provenance: Provenance,
}

#[allow(non_snake_case)]
impl<R: Real> XYPair<R> {
    pub fn new(X: Complex<R>, Y: Complex<R>, provenance: Provenance) -> Self {
        XYPair { X, Y, provenance }
    }

    pub fn manual(X: Complex<R>, Y: Complex<R>) -> Self {
        XYPair::new(X, Y, Provenance::Manual)
    }

    /// `max(|X - X'|, |Y - Y'|)`.
    pub fn distance(&self, other: &Self) -> R {
        use crate::complex::ComplexExt;
        let dx = (self.X.clone() - &other.X).modulus();
        let dy = (self.Y.clone() - &other.Y).modulus();
        dx.max_of(dy)
    }
}
