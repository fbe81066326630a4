use std::sync::Arc;

use coeff_ring::{q, TrigScalar};
use exterior::{same_sig, Form, Sig, VectorField};
use qla::QuadraticLieAlgebra;

use crate::gform::{
    bracket_scalars, pair_fn, pair_scalars, pair_wedge, skew_derivation_residual, EndForm, GForm,
};
use crate::report::{Report, ResidualValue};
use crate::CourantError;

/// A standard Courant algebroid `T* ⊕ 𝒢 ⊕ T` over the total space of a torus
/// bundle, restricted to invariant objects, with `𝒢` trivialized as `𝔤`.
///
/// The connection is stored as one `End(𝔤)`-valued 1-form
/// `Ω = ω^B − Σ_i θ_i ⊗ A_i`, so `∇ = d + Ω` on invariant sections.
#[derive(Clone, Debug, PartialEq)]
pub struct CourantData {
    sig: Sig,
    g: Arc<QuadraticLieAlgebra>,
    omega: EndForm,
    r: GForm,
    h: Form,
}

impl CourantData {
    /// Assembles `Ω = ω^B − Σ θ_i ⊗ A_i` from a basic connection form and one
    /// matrix-valued function per fiber.
    pub fn new(
        sig: &Sig,
        g: Arc<QuadraticLieAlgebra>,
        omega_b: EndForm,
        actions: &[EndForm],
        r: GForm,
        h: Form,
    ) -> Result<Self, CourantError> {
        if actions.len() != sig.num_fibers() {
            return Err(CourantError::Shape(format!(
                "expected {} action matrices, got {}",
                sig.num_fibers(),
                actions.len()
            )));
        }
        if !omega_b.is_basic() {
            return Err(CourantError::Shape("base connection is not basic".into()));
        }
        let mut omega = omega_b;
        for (i, a) in actions.iter().enumerate() {
            if !a.is_basic() || !a.is_homogeneous(0) {
                return Err(CourantError::Shape(format!("action {i} is not a basic function")));
            }
            let theta = Form::gen(sig, sig.fiber_gen(i));
            omega = omega.sub(&a.wedge_left(&theta));
        }
        Self::from_connection(sig, g, omega, r, h)
    }

    pub fn from_connection(
        sig: &Sig,
        g: Arc<QuadraticLieAlgebra>,
        omega: EndForm,
        r: GForm,
        h: Form,
    ) -> Result<Self, CourantError> {
        let n = g.dim();
        if omega.dim() != n || r.dim() != n {
            return Err(CourantError::Shape(format!("values must lie in a {n}-dimensional algebra")));
        }
        if !same_sig(omega.sig(), sig) || !same_sig(r.sig(), sig) || !same_sig(h.sig(), sig) {
            return Err(CourantError::Shape("data lives in different complexes".into()));
        }
        if !omega.is_homogeneous(1) {
            return Err(CourantError::Shape("connection must be a 1-form".into()));
        }
        if !r.is_homogeneous(2) {
            return Err(CourantError::Shape("R must be a 2-form".into()));
        }
        if !h.is_homogeneous(3) {
            return Err(CourantError::Shape("H must be a 3-form".into()));
        }
        let data = Self {
            sig: sig.clone(),
            g,
            omega,
            r,
            h,
        };
        for gen in 0..sig.num_gens() {
            let m = data.omega.interior_gen(gen).scalar_matrix();
            if !skew_derivation_residual(&data.g, &m).iter().all(TrigScalar::is_zero) {
                return Err(CourantError::ConnectionNotDerivation(sig.gen_name(gen)));
            }
        }
        Ok(data)
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.g
    }

    pub fn connection(&self) -> &EndForm {
        &self.omega
    }

    pub fn r(&self) -> &GForm {
        &self.r
    }

    pub fn h(&self) -> &Form {
        &self.h
    }

    /// Pullback of the data to a complex with more fibers over the same base.
    pub fn embed(&self, target: &Sig) -> Result<CourantData, CourantError> {
        Self::from_connection(
            target,
            self.g.clone(),
            self.omega.embed(target)?,
            self.r.embed(target)?,
            self.h.embed(target)?,
        )
    }

    /// The basic part `ω^B` of the connection.
    pub fn omega_b(&self) -> EndForm {
        self.omega.basic_part()
    }

    /// `A_i`, minus the coefficient of `θ_i` in the connection.
    pub fn action(&self, fiber: usize) -> EndForm {
        self.omega.interior_gen(self.sig.fiber_gen(fiber)).neg()
    }

    /// `d^∇ α = dα + Ω ∧ α`.
    pub fn covariant_d(&self, a: &GForm) -> GForm {
        a.d().add(&self.omega.apply(a))
    }

    /// `∇ r` for a `𝔤`-valued function.
    pub fn nabla(&self, r: &[TrigScalar]) -> GForm {
        self.covariant_d(&GForm::from_scalars(&self.sig, r))
    }

    /// `∇_X r`.
    pub fn nabla_x(&self, x: &VectorField, r: &[TrigScalar]) -> Vec<TrigScalar> {
        let omega_x = self.omega.interior(x);
        let rot = omega_x.apply_scalars(r);
        r.iter().zip(rot).map(|(f, o)| x.apply(f).add(&o)).collect()
    }

    /// `R^∇ = dΩ + Ω ∧ Ω`.
    pub fn curvature(&self) -> EndForm {
        self.omega.d().add(&self.omega.wedge(&self.omega))
    }

    /// Residuals of `dH = ⟨R∧R⟩`, `d^∇R = 0` and `R^∇ = ad_R`.
    pub fn check_compatibility(&self) -> Report {
        let mut rep = Report::new();
        let dh = self.h.d().sub(&pair_wedge(&self.g, &self.r, &self.r));
        rep.push("dH-RR", ResidualValue::Form(dh));
        rep.push("bianchi", ResidualValue::GForm(self.covariant_d(&self.r)));
        let curv = self.curvature().sub(&EndForm::ad(&self.g, &self.r));
        rep.push("curvature-ad", ResidualValue::End(curv));
        rep
    }

    /// Residuals of the torus-action compatibility conditions.
    ///
    /// Each `A_i` must be a skew derivation, and `∇_X A_i = ad_{R(X_i, X)}` must
    /// hold on every frame field. Invariance of `H`, `R` and flatness of the
    /// vertical partial connection hold by construction in the invariant model.
    pub fn check_action_compat(&self) -> Report {
        let mut rep = Report::new();
        for f in 0..self.sig.num_fibers() {
            let a = self.action(f);
            let name = self.sig.gen_name(self.sig.fiber_gen(f));
            let res = skew_derivation_residual(&self.g, &a.scalar_matrix());
            rep.push(format!("action-skew-derivation[{name}]"), ResidualValue::Scalars(res));
            let xf = VectorField::frame(&self.sig, self.sig.fiber_gen(f));
            for p in 0..self.sig.num_gens() {
                let xp = VectorField::frame(&self.sig, p);
                let moved = EndForm::from_scalars(
                    &self.sig,
                    &a.scalar_matrix()
                        .iter()
                        .map(|row| row.iter().map(|e| xp.apply(e)).collect())
                        .collect::<Vec<_>>(),
                );
                let omega_p = self.omega.interior(&xp);
                let nabla_a = moved.add(&omega_p.wedge(&a)).sub(&a.wedge(&omega_p));
                let r_fp = GForm::from_scalars(
                    &self.sig,
                    &self.r.comps().iter().map(|c| c.eval2(&xf, &xp)).collect::<Vec<_>>(),
                );
                let res = nabla_a.sub(&EndForm::ad(&self.g, &r_fp));
                rep.push(
                    format!("action-covariance[{name},{}]", self.sig.gen_name(p)),
                    ResidualValue::End(res),
                );
            }
        }
        rep
    }

    /// `⟨u, v⟩ = ½(ξ(Y) + η(X)) + ⟨r, s⟩`.
    pub fn pair(&self, u: &Section, v: &Section) -> TrigScalar {
        let xy = u.xi.interior(&v.x).scalar_part();
        let yx = v.xi.interior(&u.x).scalar_part();
        xy.add(&yx).scale(&q(1, 2)).add(&pair_scalars(&self.g, &u.r, &v.r))
    }

    /// The Dorfman bracket of two invariant sections.
    pub fn dorfman(&self, u: &Section, v: &Section) -> Section {
        let g = &self.g;
        let (xi, r, x) = (&u.xi, &u.r, &u.x);
        let (eta, s, y) = (&v.xi, &v.r, &v.x);
        // [X, Y] = L_X Y + R(X, Y) + i_Y i_X H
        let out_x = x.bracket(y);
        let mut out_r: Vec<TrigScalar> = self.r.comps().iter().map(|c| c.eval2(x, y)).collect();
        let mut out_xi = self.h.interior(x).interior(y);
        // [X, s] = ∇_X s − 2⟨i_X R, s⟩
        let nxs = self.nabla_x(x, s);
        out_r = add_vec(&out_r, &nxs);
        out_xi = out_xi.sub(&pair_fn(g, &self.r.interior(x), s).scale(&q(2, 1)));
        // [X, η] = L_X η
        out_xi = out_xi.add(&eta.lie(x));
        // [r, Y] = −∇_Y r + 2⟨i_Y R, r⟩
        let nyr = self.nabla_x(y, r);
        out_r = sub_vec(&out_r, &nyr);
        out_xi = out_xi.add(&pair_fn(g, &self.r.interior(y), r).scale(&q(2, 1)));
        // [r, s] = [r, s]_𝔤 + 2⟨∇r, s⟩
        out_r = add_vec(&out_r, &bracket_scalars(g, r, s));
        out_xi = out_xi.add(&pair_fn(g, &self.nabla(r), s).scale(&q(2, 1)));
        // [ξ, Y] = −i_Y dξ
        out_xi = out_xi.sub(&xi.d().interior(y));
        Section {
            xi: out_xi,
            r: out_r,
            x: out_x,
        }
    }
}

fn add_vec(a: &[TrigScalar], b: &[TrigScalar]) -> Vec<TrigScalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn sub_vec(a: &[TrigScalar], b: &[TrigScalar]) -> Vec<TrigScalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// An invariant section `ξ + r + X`.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub xi: Form,
    pub r: Vec<TrigScalar>,
    pub x: VectorField,
}

impl Section {
    pub fn zero(sig: &Sig, n: usize) -> Self {
        Self {
            xi: Form::zero(sig),
            r: vec![TrigScalar::zero(sig.base_dim()); n],
            x: VectorField::zero(sig),
        }
    }

    pub fn form(xi: Form, n: usize) -> Self {
        let sig = xi.sig().clone();
        Self {
            r: vec![TrigScalar::zero(sig.base_dim()); n],
            x: VectorField::zero(&sig),
            xi,
        }
    }

    pub fn algebra(sig: &Sig, r: Vec<TrigScalar>) -> Self {
        Self {
            xi: Form::zero(sig),
            r,
            x: VectorField::zero(sig),
        }
    }

    pub fn vector(x: VectorField, n: usize) -> Self {
        let sig = x.sig().clone();
        Self {
            xi: Form::zero(&sig),
            r: vec![TrigScalar::zero(sig.base_dim()); n],
            x,
        }
    }

    /// The section dual to frame element `k` of `T* ⊕ 𝔤 ⊕ T`, ordered as
    /// generators, then algebra basis, then frame fields.
    pub fn frame(sig: &Sig, n: usize, k: usize) -> Self {
        let gens = sig.num_gens();
        let mut out = Self::zero(sig, n);
        if k < gens {
            out.xi = Form::gen(sig, k);
        } else if k < gens + n {
            out.r[k - gens] = TrigScalar::one(sig.base_dim());
        } else {
            out.x = VectorField::frame(sig, k - gens - n);
        }
        out
    }

    /// Number of frame elements: `2·(generators) + dim 𝔤`.
    pub fn frame_len(sig: &Sig, n: usize) -> usize {
        2 * sig.num_gens() + n
    }

    pub fn sig(&self) -> &Sig {
        self.xi.sig()
    }

    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.r.iter().all(TrigScalar::is_zero) && self.x.is_zero()
    }

    pub fn add(&self, other: &Section) -> Section {
        Section {
            xi: self.xi.add(&other.xi),
            r: add_vec(&self.r, &other.r),
            x: self.x.add(&other.x),
        }
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section {
            xi: self.xi.sub(&other.xi),
            r: sub_vec(&self.r, &other.r),
            x: self.x.sub(&other.x),
        }
    }

    pub fn mul_scalar(&self, f: &TrigScalar) -> Section {
        Section {
            xi: self.xi.mul_scalar(f),
            r: self.r.iter().map(|c| c.mul(f)).collect(),
            x: self.x.mul_scalar(f),
        }
    }

    /// Rewrites the section in a larger complex with the same base (by generator name).
    pub fn embed(&self, target: &Sig) -> Result<Section, CourantError> {
        let map = exterior::gen_map(self.sig(), target)?;
        let mut comps = vec![TrigScalar::zero(target.base_dim()); target.num_gens()];
        for (g, c) in self.x.comps().iter().enumerate() {
            comps[map[g]] = c.clone();
        }
        Ok(Section {
            xi: self.xi.embed(target)?,
            r: self.r.clone(),
            x: VectorField::from_comps(target, comps),
        })
    }
}
