use coeff_ring::TrigScalar;

use crate::form::same_sig;
use crate::signature::Sig;

/// An invariant vector field `Σ X^g X_g` on the frame dual to the generators.
///
/// `X_a` (for `a < m`) are the horizontal lifts of the base coordinate fields and
/// the remaining `X_i` generate the torus action.
#[derive(Clone, Debug)]
pub struct VectorField {
    sig: Sig,
    comps: Vec<TrigScalar>,
}

impl PartialEq for VectorField {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps && same_sig(&self.sig, &other.sig)
    }
}

impl VectorField {
    pub fn zero(sig: &Sig) -> Self {
        Self {
            sig: sig.clone(),
            comps: vec![TrigScalar::zero(sig.base_dim()); sig.num_gens()],
        }
    }

    /// The frame field dual to generator `g`.
    pub fn frame(sig: &Sig, g: usize) -> Self {
        let mut out = Self::zero(sig);
        out.comps[g] = TrigScalar::one(sig.base_dim());
        out
    }

    pub fn from_comps(sig: &Sig, comps: Vec<TrigScalar>) -> Self {
        assert_eq!(comps.len(), sig.num_gens());
        Self {
            sig: sig.clone(),
            comps,
        }
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn comps(&self) -> &[TrigScalar] {
        &self.comps
    }

    pub fn comp(&self, g: usize) -> &TrigScalar {
        &self.comps[g]
    }

    pub fn set_comp(&mut self, g: usize, f: TrigScalar) {
        self.comps[g] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TrigScalar::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Self::from_comps(&self.sig, comps)
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect();
        Self::from_comps(&self.sig, comps)
    }

    pub fn neg(&self) -> VectorField {
        Self::from_comps(&self.sig, self.comps.iter().map(TrigScalar::neg).collect())
    }

    pub fn mul_scalar(&self, f: &TrigScalar) -> VectorField {
        Self::from_comps(&self.sig, self.comps.iter().map(|c| c.mul(f)).collect())
    }

    /// Derivative of a basic function: only the horizontal components act.
    pub fn apply(&self, f: &TrigScalar) -> TrigScalar {
        let mut out = TrigScalar::zero(self.sig.base_dim());
        for a in 0..self.sig.base_dim() {
            if !self.comps[a].is_zero() {
                out.add_assign_ref(&self.comps[a].mul(&f.partial(a)));
            }
        }
        out
    }

    /// Lie bracket, using `[X_a, X_b] = -Σ_i F_i(X_a, X_b) X_i` for the frame.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let m = self.sig.base_dim();
        let mut comps: Vec<TrigScalar> = (0..self.sig.num_gens())
            .map(|g| self.apply(&other.comps[g]).sub(&other.apply(&self.comps[g])))
            .collect();
        for (i, fib) in self.sig.fibers().iter().enumerate() {
            for (mask, f) in &fib.curvature {
                let a = mask.trailing_zeros() as usize;
                let b = 63 - mask.leading_zeros() as usize;
                // F(X_a, X_b) = f and F(X_b, X_a) = -f for a < b.
                let coeff = self.comps[a]
                    .mul(&other.comps[b])
                    .sub(&self.comps[b].mul(&other.comps[a]));
                if !coeff.is_zero() {
                    comps[m + i].sub_assign_ref(&coeff.mul(f));
                }
            }
        }
        Self::from_comps(&self.sig, comps)
    }
}
