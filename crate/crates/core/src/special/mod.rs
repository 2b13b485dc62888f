//! Theta constants, Eisenstein series, elliptic moduli, `2F1(1/2,1/2;1;.)`
//! and Legendre polynomials.

pub mod hypergeometric;
pub mod legendre;
pub mod quadratic;
pub mod theta;

use thiserror::Error;

use crate::precision::PrecisionError;

pub use hypergeometric::{hyp_f, hyp_f_sided, hyp_g, hyp_pair, Expansion, HypergeometricPair};
pub use legendre::{legendre_p, trinomial, LegendreSequence, TrinomialSequence};
pub use quadratic::{QuadraticIrrational, QuadraticRecord, UpperHalfPoint};
pub use theta::{e2, eta, modulus_k, modulus_kprime, moduli, theta, theta_all, Moduli, ThetaKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialError {
    #[error("point is not in the upper half-plane (Im tau = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("argument {0} lies on the branch cut [1, inf) and no side was given")]
    OnBranchCut(f64),
    #[error("logarithmic singularity at 1")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Precision(#[from] PrecisionError),
}
