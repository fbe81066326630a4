//! Built-in base data used by the demos and test suites.

use std::sync::Arc;

use coeff_ring::{qi, TauPoly, TrigScalar};
use exterior::{fiber, FiberKind, Form, Signature};
use qla::QuadraticLieAlgebra;

use crate::build::BaseData;
use crate::gform::{EndForm, GForm};

fn konst(dim: usize, n: i64) -> TrigScalar {
    TrigScalar::constant(dim, qi(n))
}

fn abelian_circle(curvature: i64, flux: i64) -> BaseData {
    let f = if curvature == 0 {
        vec![]
    } else {
        vec![(0b11, konst(2, curvature))]
    };
    let sig = Signature::new(2, vec![fiber("th1", FiberKind::Theta, &f)]).expect("valid signature");
    BaseData {
        g: Arc::new(QuadraticLieAlgebra::zero()),
        omega_b: EndForm::zero(&sig, 0),
        r: vec![vec![]],
        h3: Form::zero(&sig),
        h2: vec![Form::monomial(&sig, 0b11, konst(2, flux))],
        c: None,
        sig,
    }
}

/// `T³ → T²` with a trivial circle and `H = n dx₁∧dx₂∧θ₁`.
pub fn exact_flux(n: i64) -> BaseData {
    abelian_circle(0, n)
}

/// The Heisenberg nilmanifold: `dθ₁ = n dx₁∧dx₂` and `H = 0`.
pub fn heisenberg(n: i64) -> BaseData {
    abelian_circle(n, 0)
}

/// `T³ → T²` with all data zero.
pub fn trivial() -> BaseData {
    abelian_circle(0, 0)
}

/// A heterotic example over `T³` with `𝔤 = so(3) ⋉ so(3)*`, one circle with
/// `dθ₁ = dx₁∧dx₂`, a non-flat base connection and a non-constant section `r₁`.
pub fn affine_so3() -> BaseData {
    let one = TrigScalar::one(3);
    let sig = Signature::new(3, vec![fiber("th1", FiberKind::Theta, &[(0b011, one.clone())])])
        .expect("valid signature");
    let g = Arc::new(QuadraticLieAlgebra::so3_ltimes_dual());
    let zero = TrigScalar::zero(3);
    let mut rho = vec![zero.clone(); 6];
    rho[5] = TrigScalar::sin(&[0, 1, 0], TauPoly::one());
    let omega_b = EndForm::ad(&g, &GForm::tensor(&Form::gen(&sig, 0), &rho));
    let mut r1 = vec![zero; 6];
    r1[0] = one.clone();
    r1[3] = one;
    r1[2] = TrigScalar::cos(&[1, 0, 0], TauPoly::one());
    BaseData {
        omega_b,
        r: vec![r1],
        h3: Form::monomial(&sig, 0b111, konst(3, 5)),
        h2: vec![Form::monomial(&sig, 0b011, konst(3, 3)).add(&Form::monomial(&sig, 0b110, konst(3, 2)))],
        c: None,
        g,
        sig,
    }
}

/// Looks up a built-in example by name: `exact-flux-<n>`, `heisenberg`,
/// `heisenberg-<n>`, `trivial` or `affine-so3`.
pub fn by_name(name: &str) -> Option<BaseData> {
    if let Some(n) = name.strip_prefix("exact-flux-") {
        return n.parse().ok().map(exact_flux);
    }
    if let Some(n) = name.strip_prefix("heisenberg-") {
        return n.parse().ok().map(heisenberg);
    }
    match name {
        "heisenberg" => Some(heisenberg(1)),
        "trivial" => Some(trivial()),
        "affine-so3" => Some(affine_so3()),
        _ => None,
    }
}
