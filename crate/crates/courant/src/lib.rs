//! Standard Courant algebroids over torus bundles in the invariant model.
//!
//! Data `(∇, R, H)` live in the invariant complex of [`exterior`] with values in a
//! [`qla::QuadraticLieAlgebra`]. The crate checks the compatibility conditions,
//! evaluates the Dorfman bracket, applies and composes fiber-preserving
//! isomorphisms, splits the data by fiber degree and builds data from the base.

mod build;
mod data;
mod decomp;
mod doc;
pub mod examples;
mod gform;
mod iso;
mod report;

pub use build::BaseData;
pub use data::{CourantData, Section};
pub use decomp::{slot_of, DecompRecord, EQUATION_SLOTS};
pub use doc::{BaseDataDoc, CourantDataDoc, IsoDoc};
pub use gform::{
    ad_preimage, bracket_scalars, bracket_wedge, pair_fn, pair_scalars, pair_wedge, skew_derivation_residual,
    EndForm, GForm,
};
pub use iso::{is_automorphism, IsoData};
pub use report::{Report, Residual, ResidualValue};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CourantError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("connection along {0} is not valued in skew derivations")]
    ConnectionNotDerivation(String),
    #[error("K does not preserve the bracket and scalar product")]
    NotAutomorphism,
    #[error("the adjoint map is not an isomorphism onto skew derivations")]
    AdNotIso,
    #[error("curvature of the base connection is not inner")]
    CurvatureNotInner,
    #[error("reduced relations violated: {}", .0.nonzero().join(", "))]
    ReducedRelationsViolated(Report),
    #[error(transparent)]
    Exterior(#[from] exterior::ExteriorError),
    #[error(transparent)]
    Qla(#[from] qla::QlaError),
    #[error("parse error: {0}")]
    Parse(String),
}
