use std::sync::Arc;

use coeff_ring::{q, TrigScalar};
use exterior::{same_sig, Form, Sig, VectorField};
use num_traits::Zero;
use qla::linalg::{self, Mat};
use qla::QuadraticLieAlgebra;

use crate::data::{CourantData, Section};
use crate::gform::{bracket_wedge, pair_fn, pair_wedge, EndForm, GForm};
use crate::CourantError;

/// A fiber-preserving isomorphism of standard Courant algebroids, given by a
/// 2-form `β`, a constant automorphism `K` of `𝔤` and a `𝔤`-valued 1-form `Φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsoData {
    pub beta: Form,
    pub k: Mat,
    pub phi: GForm,
}

impl IsoData {
    pub fn new(g: &QuadraticLieAlgebra, beta: Form, k: Mat, phi: GForm) -> Result<Self, CourantError> {
        let n = g.dim();
        if k.len() != n || k.iter().any(|r| r.len() != n) || phi.dim() != n {
            return Err(CourantError::Shape("iso data has the wrong algebra dimension".into()));
        }
        if !same_sig(beta.sig(), phi.sig()) {
            return Err(CourantError::Shape("β and Φ live in different complexes".into()));
        }
        if !beta.is_homogeneous(2) || !phi.is_homogeneous(1) {
            return Err(CourantError::Shape("β must be a 2-form and Φ a 1-form".into()));
        }
        if !is_automorphism(g, &k) {
            return Err(CourantError::NotAutomorphism);
        }
        Ok(Self { beta, k, phi })
    }

    pub fn identity(sig: &Sig, n: usize) -> Self {
        Self {
            beta: Form::zero(sig),
            k: linalg::identity(n),
            phi: GForm::zero(sig, n),
        }
    }

    pub fn sig(&self) -> &Sig {
        self.beta.sig()
    }

    /// `Φ*(x) = Σ g_kl x^k Φ^l` for a `𝔤`-valued function `x`.
    fn phi_star(&self, g: &QuadraticLieAlgebra, x: &[TrigScalar]) -> Form {
        pair_fn(g, &self.phi, x)
    }

    /// `Φ(X) = i_X Φ`.
    pub fn phi_of(&self, x: &VectorField) -> Vec<TrigScalar> {
        self.phi.interior(x).scalar_parts()
    }

    /// `ξ + r + X ↦ ξ + (Kr − 2Φ*(Kr)) + (X + Φ(X) − Φ*Φ(X) + i_X β)`.
    pub fn apply(&self, g: &QuadraticLieAlgebra, u: &Section) -> Section {
        let sig = self.sig().clone();
        let kr = GForm::from_scalars(&sig, &u.r).apply_const(&self.k).scalar_parts();
        let phix = self.phi_of(&u.x);
        let mut xi = u.xi.clone();
        xi.sub_assign_ref(&self.phi_star(g, &kr).scale(&q(2, 1)));
        xi.sub_assign_ref(&self.phi_star(g, &phix));
        xi.add_assign_ref(&self.beta.interior(&u.x));
        let r = kr.iter().zip(&phix).map(|(a, b)| a.add(b)).collect();
        Section {
            xi,
            r,
            x: u.x.clone(),
        }
    }

    /// `I₂ ∘ I₁`: `K₃ = K₂K₁`, `Φ₃ = Φ₂ + K₂Φ₁`, `β₃ = β₁ + β₂ + ⟨Φ₂ ∧ K₂Φ₁⟩`.
    pub fn compose(g: &QuadraticLieAlgebra, i2: &IsoData, i1: &IsoData) -> IsoData {
        let k2phi1 = i1.phi.apply_const(&i2.k);
        IsoData {
            beta: i1.beta.add(&i2.beta).add(&pair_wedge(g, &i2.phi, &k2phi1)),
            k: linalg::mul(&i2.k, &i1.k),
            phi: i2.phi.add(&k2phi1),
        }
    }

    /// `(−β, K⁻¹, −K⁻¹Φ)`.
    pub fn inverse(&self) -> IsoData {
        let kinv = linalg::inverse(&self.k).expect("automorphisms are invertible");
        IsoData {
            beta: self.beta.neg(),
            phi: self.phi.apply_const(&kinv).neg(),
            k: kinv,
        }
    }

    /// The target data making this map a Courant isomorphism from `data`.
    ///
    /// `Ω₂ = KΩ₁K⁻¹ − ad_Φ`, `R₂ = KR₁ − d^{∇₂}Φ − ½[Φ ∧ Φ]` and
    /// `H₂ = H₁ − dβ − ⟨(KR₁ + R₂) ∧ Φ⟩ + c₃(Φ)` with `c₃ = ⅙⟨Φ ∧ [Φ ∧ Φ]⟩`.
    pub fn transport(&self, data: &CourantData) -> Result<CourantData, CourantError> {
        let g = data.algebra();
        let kinv = linalg::inverse(&self.k).expect("automorphisms are invertible");
        let omega2 = data
            .connection()
            .mul_const_left(&self.k)
            .mul_const_right(&kinv)
            .sub(&EndForm::ad(g, &self.phi));
        let kr1 = data.r().apply_const(&self.k);
        let d2phi = self.phi.d().add(&omega2.apply(&self.phi));
        let phiphi = bracket_wedge(g, &self.phi, &self.phi);
        let r2 = kr1.sub(&d2phi).sub(&phiphi.scale(&q(1, 2)));
        let c3 = pair_wedge(g, &self.phi, &phiphi).scale(&q(1, 6));
        let h2 = data
            .h()
            .sub(&self.beta.d())
            .sub(&pair_wedge(g, &kr1.add(&r2), &self.phi))
            .add(&c3);
        CourantData::from_connection(data.sig(), Arc::clone(g), omega2, r2, h2)
    }

    pub fn is_identity(&self) -> bool {
        self.beta.is_zero() && self.phi.is_zero() && self.k == linalg::identity(self.k.len())
    }
}

/// Whether a constant matrix preserves the bracket and the scalar product.
pub fn is_automorphism(g: &QuadraticLieAlgebra, k: &Mat) -> bool {
    let n = g.dim();
    let kt = linalg::transpose(k);
    if linalg::mul(&linalg::mul(&kt, g.gram()), k) != *g.gram() {
        return false;
    }
    let col = |j: usize| -> Vec<coeff_ring::Q> { (0..n).map(|i| k[i][j].clone()).collect() };
    for i in 0..n {
        for j in i + 1..n {
            let lhs = linalg::mul_vec(k, &g.bracket(&g.basis_vector(i), &g.basis_vector(j)));
            let rhs = g.bracket(&col(i), &col(j));
            if lhs.iter().zip(&rhs).any(|(a, b)| !(a - b).is_zero()) {
                return false;
            }
        }
    }
    true
}
