use std::sync::Arc;

use coeff_ring::{q, Q};
use courant::IsoData;
use exterior::Form;
use qla::{exp_series, linalg, mat_exp_nilpotent, mat_log_unipotent, Linear, Mat, QuadraticLieAlgebra};

use crate::spinor::{module, Spinor};
use crate::SpinorError;

impl Linear for Spinor {
    fn is_zero(&self) -> bool {
        Spinor::is_zero(self)
    }

    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
}

/// The spinor map `e^{−β} ∧ ∘ exp(x_Φ) ∘ S_K` of an isomorphism `(β, K, Φ)`.
///
/// `x_Φ = −Σ_k Φ^k · e_k` in the Clifford algebra, and `S_K = exp(lift(log K))`.
/// It satisfies `I_𝕊 ∘ γ_u = γ_{I(u)} ∘ I_𝕊`.
#[derive(Clone, Debug)]
pub struct SpinLift {
    g: Arc<QuadraticLieAlgebra>,
    exp_beta: Form,
    phi: Vec<(Form, Mat)>,
    s_k: Mat,
}

/// `e^{−β} = Σ_p (−β)^p / p!`.
fn exp_neg(beta: &Form) -> Form {
    let mut sum = Form::one(beta.sig());
    let mut term = sum.clone();
    let minus = beta.neg();
    for p in 1.. {
        term = term.wedge(&minus).scale(&q(1, p));
        if term.is_zero() {
            break;
        }
        sum.add_assign_ref(&term);
    }
    sum
}

/// Lift of a constant automorphism `K = exp(D)` with `D` a nilpotent skew derivation.
fn lift_k(g: &QuadraticLieAlgebra, k: &Mat) -> Result<Mat, SpinorError> {
    let md = module(g);
    if *k == linalg::identity(g.dim()) {
        return Ok(linalg::identity(md.size()));
    }
    let d = mat_log_unipotent(k).map_err(|_| SpinorError::UnsupportedK)?;
    if !g.is_skew(&d) || g.derivation_residual(&d).iter().any(|c| c != &Q::from_integer(0.into())) {
        return Err(SpinorError::UnsupportedK);
    }
    let l = md.lift(g, &d)?;
    mat_exp_nilpotent(&l).map_err(|_| SpinorError::UnsupportedK)
}

pub fn spin_lift(g: &Arc<QuadraticLieAlgebra>, iso: &IsoData) -> Result<SpinLift, SpinorError> {
    let md = module(g);
    let phi = iso
        .phi
        .comps()
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(k, w)| (w.clone(), md.gamma_basis(k).clone()))
        .collect();
    Ok(SpinLift {
        g: g.clone(),
        exp_beta: exp_neg(&iso.beta),
        phi,
        s_k: lift_k(g, &iso.k)?,
    })
}

impl SpinLift {
    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.g
    }

    /// `x_Φ(ω ⊗ s) = −Σ_k (−1)^{|ω|} Φ^k ∧ ω ⊗ e_k s`.
    fn x_phi(&self, s: &Spinor) -> Spinor {
        let graded = s.graded();
        let mut out = Spinor::zero(s.sig(), s.algebra());
        for (w, gk) in &self.phi {
            out = out.sub(&graded.fock_wedge(Some(w), gk));
        }
        out
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        let t = s.fock_apply(&self.s_k);
        let bound = s.sig().num_gens() + 1;
        let t = exp_series(|v: &Spinor| self.x_phi(v), &t, bound).expect("form degree bounds the series");
        t.wedge_left(&self.exp_beta)
    }
}
