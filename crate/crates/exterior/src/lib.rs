//! The invariant de Rham complex of a torus bundle over a torus.
//!
//! Invariant forms are polynomials in `dx_1..dx_m` and the connection forms of
//! the fibers, with coefficients in [`coeff_ring::TrigScalar`]. The differential
//! sends each connection form to its curvature.

mod form;
mod signature;
mod vector;

pub use form::{bits, gen_map, map_mask, position, same_sig, wedge_sign, Form, FormDoc, TermDoc};
pub use signature::{fiber, FiberDoc, FiberGen, FiberKind, Sig, Signature, SignatureDoc};
pub use vector::VectorField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("curvature of {0} is not basic")]
    CurvatureNotBasic(String),
    #[error("curvature of {0} is not a 2-form")]
    CurvatureDegree(String),
    #[error("curvature of {0} is not closed")]
    CurvatureNotClosed(String),
    #[error("generator names must be unique")]
    DuplicateGenerator,
    #[error("at most 64 generators are supported")]
    TooManyGenerators,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("signatures have different bases")]
    SignatureMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}
