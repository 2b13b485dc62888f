//! High-precision verification engine for the 520/pi Ramanujan-type series
//! and its seventeen companion identities.

pub mod complex;
pub mod harness;
pub mod modular;
pub mod poly;
pub mod precision;
pub mod recognition;
pub mod scalar;
pub mod series;
pub mod special;
pub mod wz;

pub use complex::{ComplexExt, CutSide, GaussianRational};
pub use precision::{BoundedValue, GeometricTailModel, PrecisionContext, PrecisionError, Tolerance, Verdict};
pub use scalar::{BigFloat, Real};

/// Complex number over the arbitrary-precision scalar.
pub type BigComplex = num_complex::Complex<BigFloat>;
/// Complex number over `f64`, for quick low-precision work.
pub type Complex64 = num_complex::Complex<f64>;
