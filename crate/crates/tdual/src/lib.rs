//! T-duality for invariant standard Courant algebroids over torus bundles.
//!
//! Starting from base data, the crate computes the dual curvatures `𝒦_i`,
//! builds the dual Courant algebroid and the isomorphism `F` on the
//! correspondence space, verifies the duality relations, and applies the
//! induced maps `τ` on invariant spinors and `ρ` on invariant sections.

pub mod catalog;
mod kforms;
mod maps;
mod package;
pub mod par;
mod verify;

pub use kforms::{compute_k_forms, require_integral, KForm};
pub use maps::{rho, tau, Duality};
pub use package::{dualize, DualityPackage, DualityPackageDoc, DUAL_PREFIX};
pub use verify::{verify_duality, DualityReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TdualError {
    #[error("𝒦_{index} is not closed: d𝒦 = {residual}")]
    NotClosed { index: usize, residual: String },
    #[error("𝒦_{index} is not integral: {}", format_coefficients(.coefficients))]
    NotIntegral {
        index: usize,
        coefficients: Vec<(String, String)>,
    },
    #[error("the spinor is not invariant under the torus action")]
    NotInvariantInput,
    #[error("the system for the invariant lift is not an invertible constant matrix")]
    SingularSystem,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Courant(#[from] courant::CourantError),
    #[error(transparent)]
    Spinor(#[from] spinor::SpinorError),
    #[error(transparent)]
    Exterior(#[from] exterior::ExteriorError),
    #[error("parse error: {0}")]
    Parse(String),
}

fn format_coefficients(c: &[(String, String)]) -> String {
    c.iter().map(|(w, v)| format!("{w}: {v}")).collect::<Vec<_>>().join(", ")
}
