//! Quadratic Lie algebras of neutral signature and their Fock spinor modules.
//!
//! A [`QuadraticLieAlgebra`] carries exact structure constants and an invariant
//! Gram matrix. When the metric splits over `Q`, it also carries the Fock model
//! `ΛW` of the Clifford algebra together with its canonical pairing.

mod algebra;
pub mod linalg;
mod multivec;
mod spinors;

pub use algebra::{inertia, QlaDoc, QuadraticLieAlgebra, WittBasis, WittDoc};
pub use linalg::Mat;
pub use multivec::Multivec;
pub use spinors::{exp_series, mat_exp_nilpotent, mat_log_unipotent, Linear, SpinorModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QlaError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("structure constants are not antisymmetric")]
    NotAntisymmetric,
    #[error("Jacobi identity fails")]
    JacobiFails,
    #[error("scalar product is not invariant")]
    NotInvariant,
    #[error("Gram matrix is not symmetric")]
    GramNotSymmetric,
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("signature ({pos}, {neg}) is not neutral")]
    NotNeutral { pos: usize, neg: usize },
    #[error("no rational Witt basis is available")]
    NoWittBasis,
    #[error("invalid Witt basis: {0}")]
    BadWittBasis(String),
    #[error("endomorphism is not skew")]
    NotSkew,
    #[error("powers do not vanish within the dimension bound")]
    NotNilpotent,
    #[error("adjoint map is not injective")]
    AdNotInjective,
    #[error("parse error: {0}")]
    Parse(String),
}
