use std::sync::Arc;

use coeff_ring::{q, TrigScalar};
use courant::CourantData;
use exterior::{Form, Sig};
use qla::{linalg, Mat, QuadraticLieAlgebra};

use crate::spinor::{module, Spinor};

/// The canonical Dirac generating operator of a standard Courant algebroid,
/// with its Clifford coefficients precomputed:
///
/// `đ(ω⊗s) = (dω − H∧ω)⊗s + Σ_ij Ω_ij∧ω ⊗ L_ij s − ¼(−1)^{|ω|} ω⊗C s − (−1)^{|ω|} Σ_k R^k∧ω ⊗ e_k s`
///
/// where `L_ij` lifts the matrix unit `E_ij` to the Fock module and `C` is the Cartan 3-form.
#[derive(Clone, Debug)]
pub struct DiracOperator {
    sig: Sig,
    g: Arc<QuadraticLieAlgebra>,
    h: Form,
    connection: Vec<(Form, Mat)>,
    cartan: Mat,
    curvature: Vec<(Form, Mat)>,
}

impl DiracOperator {
    pub fn new(data: &CourantData) -> Self {
        let g = data.algebra().clone();
        let md = module(&g);
        let units = md.lift_units(&g);
        let omega = data.connection();
        let mut connection = Vec::new();
        for (i, row) in units.iter().enumerate() {
            for (j, l) in row.iter().enumerate() {
                let w = omega.entry(i, j);
                if !w.is_zero() && !linalg::is_zero(l) {
                    connection.push((w.clone(), l.clone()));
                }
            }
        }
        let cartan = linalg::scale(&md.multivector(&g.cartan_form()), &q(-1, 4));
        let curvature = data
            .r()
            .comps()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, w)| (w.clone(), md.gamma_basis(k).clone()))
            .collect();
        Self {
            sig: data.sig().clone(),
            g,
            h: data.h().clone(),
            connection,
            cartan,
            curvature,
        }
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.g
    }

    /// The covariant exterior part `𝓔(ω⊗s) = dω⊗s + Σ_i α_i∧ω ⊗ ∇^𝒮_{X_i} s`.
    pub fn covariant_exterior(&self, s: &Spinor) -> Spinor {
        let mut out = s.map_forms(Form::d);
        for (w, l) in &self.connection {
            out = out.add(&s.fock_wedge(Some(w), l));
        }
        out
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        let mut out = self.covariant_exterior(s).sub(&s.wedge_left(&self.h));
        let graded = s.graded();
        out = out.add(&graded.fock_apply(&self.cartan));
        for (w, gk) in &self.curvature {
            out = out.sub(&graded.fock_wedge(Some(w), gk));
        }
        out
    }
}

/// `đ s` for the given data.
pub fn dirac(data: &CourantData, s: &Spinor) -> Spinor {
    DiracOperator::new(data).apply(s)
}

/// `ω ⊗ s ↦ ω ⊗ lift(M) s` for a matrix of functions, extended linearly over the lifts of matrix units.
fn lift_apply(g: &QuadraticLieAlgebra, m: &[Vec<TrigScalar>], s: &Spinor) -> Spinor {
    let units = module(g).lift_units(g);
    let mut out = Spinor::zero(s.sig(), s.algebra());
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&s.fock_apply(&units[i][j]).mul_scalar(c));
            }
        }
    }
    out
}

/// The infinitesimal action of fiber `a` on invariant spinors,
/// `ω ⊗ s ↦ (ℒ_{X_a} ω) ⊗ s + ω ⊗ (∇^𝒮_{X_a} + lift(A_a)) s`.
///
/// On the invariant complex `ℒ_{X_a} ω = 0`, and the vertical connection term
/// `lift(Ω(X_a))` is evaluated separately from the action term `lift(A_a)`.
pub fn spinor_action(data: &CourantData, a: usize, s: &Spinor) -> Spinor {
    let g = data.algebra();
    let gen = data.sig().fiber_gen(a);
    let vertical = data.connection().interior_gen(gen).scalar_matrix();
    let action = data.action(a).scalar_matrix();
    lift_apply(g, &vertical, s).add(&lift_apply(g, &action, s))
}
