//! Invariant spinors `Λ(T*) ⊗̂ 𝒮_𝔤` of a standard Courant algebroid.
//!
//! The crate provides the Clifford action of sections, the canonical Dirac
//! generating operator, the torus action on spinors, the canonical pairing,
//! pullback and pushforward along fiber inclusions, and spin lifts of
//! isomorphisms.

mod dirac;
mod lift;
mod spinor;

pub use dirac::{dirac, spinor_action, DiracOperator};
pub use lift::{spin_lift, SpinLift};
pub use spinor::{pushforward_sign, Spinor, SpinorEntry};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpinorError {
    #[error("the automorphism K is not the exponential of a nilpotent skew derivation")]
    UnsupportedK,
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Exterior(#[from] exterior::ExteriorError),
    #[error(transparent)]
    Qla(#[from] qla::QlaError),
    #[error(transparent)]
    Courant(#[from] courant::CourantError),
    #[error("parse error: {0}")]
    Parse(String),
}
