use std::sync::Arc;

use coeff_ring::{q, TrigScalar, Q};
use exterior::{Form, Sig, Signature};
use num_traits::Zero;
use qla::QuadraticLieAlgebra;

use crate::data::CourantData;
use crate::decomp::DecompRecord;
use crate::gform::{ad_preimage, bracket_scalars, pair_scalars, pair_wedge, EndForm, GForm};
use crate::report::{Report, ResidualValue};
use crate::CourantError;

/// Data on the base from which invariant Courant data on a torus bundle is built.
///
/// All forms live on the complex of the bundle `sig` and must be basic; the
/// curvatures `F_i` are those of `sig`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseData {
    pub sig: Sig,
    pub g: Arc<QuadraticLieAlgebra>,
    /// The basic connection `ω^B`, a matrix of 1-forms valued in skew derivations.
    pub omega_b: EndForm,
    /// One `𝔤`-valued function `r_i` per fiber.
    pub r: Vec<Vec<TrigScalar>>,
    pub h3: Form,
    pub h2: Vec<Form>,
    /// Constants `c_ijs`, antisymmetric; `None` means all zero.
    pub c: Option<Vec<Vec<Vec<Q>>>>,
}

impl BaseData {
    pub fn num_fibers(&self) -> usize {
        self.sig.num_fibers()
    }

    pub fn curvature(&self, i: usize) -> Form {
        Signature::curvature_form(&self.sig, self.sig.fiber_gen(i))
    }

    fn c_at(&self, i: usize, j: usize, s: usize) -> Q {
        self.c.as_ref().map_or_else(Q::zero, |c| c[i][j][s].clone())
    }

    /// `∇^B r = dr + ω^B r`.
    pub fn nabla(&self, r: &[TrigScalar]) -> GForm {
        let rr = GForm::from_scalars(&self.sig, r);
        rr.d().add(&self.omega_b.apply(&rr))
    }

    /// `R^B = dω^B + ω^B ∧ ω^B`.
    pub fn base_curvature(&self) -> EndForm {
        self.omega_b.d().add(&self.omega_b.wedge(&self.omega_b))
    }

    /// The `𝔤`-valued 2-form `𝔯` with `ad_𝔯 = R^B`.
    pub fn inner_curvature(&self) -> Result<GForm, CourantError> {
        let g = &self.g;
        if !g.ad_is_iso() {
            return Err(CourantError::AdNotIso);
        }
        ad_preimage(g, &self.base_curvature())
    }

    /// `𝒦_i = H₂^i + 2⟨𝔯, r_i⟩ − Σ_j ⟨r_i, r_j⟩ F_j`.
    pub fn k_forms(&self, frak_r: &GForm) -> Vec<Form> {
        let g = &self.g;
        (0..self.num_fibers())
            .map(|i| {
                let ri = GForm::from_scalars(&self.sig, &self.r[i]);
                let mut out = self.h2[i].add(&pair_wedge(g, frak_r, &ri).scale(&q(2, 1)));
                for j in 0..self.num_fibers() {
                    let c = pair_scalars(g, &self.r[i], &self.r[j]);
                    out.sub_assign_ref(&self.curvature(j).mul_scalar(&c));
                }
                out
            })
            .collect()
    }

    /// The pieces of `H` and `R` determined by the base data.
    pub fn record(&self, frak_r: &GForm) -> DecompRecord {
        let g = &self.g;
        let sig = &self.sig;
        let k = self.num_fibers();
        let mut rec = DecompRecord::zero(sig, Arc::clone(g));
        rec.h3 = self.h3.clone();
        rec.h2 = self.h2.clone();
        rec.omega_b = self.omega_b.clone();
        let nab: Vec<GForm> = self.r.iter().map(|r| self.nabla(r)).collect();
        let mut r2 = frak_r.clone();
        for i in 0..k {
            r2 = r2.sub(&GForm::tensor(&self.curvature(i), &self.r[i]));
            rec.actions[i] = EndForm::ad(g, &GForm::from_scalars(sig, &self.r[i]));
            rec.r1[i] = nab[i].clone();
            for j in i + 1..k {
                let rij = bracket_scalars(g, &self.r[i], &self.r[j]);
                rec.set_r0(i, j, GForm::from_scalars(sig, &rij).scale(&q(1, 2)));
                let h1 = pair_wedge(g, &nab[i], &GForm::from_scalars(sig, &self.r[j]))
                    .sub(&pair_wedge(g, &nab[j], &GForm::from_scalars(sig, &self.r[i])))
                    .scale(&q(1, 2));
                rec.set_h1(i, j, h1);
                for s in j + 1..k {
                    let v = pair_scalars(g, &rij, &self.r[s]).scale(&q(-1, 3));
                    let val = Form::scalar(sig, v).add(&Form::constant(sig, self.c_at(i, j, s)));
                    rec.set_h0(i, j, s, val);
                }
            }
        }
        rec.r2 = r2;
        rec
    }

    /// Residuals of the three relations the base data must satisfy.
    pub fn reduced_relations(&self, frak_r: &GForm) -> Report {
        let g = &self.g;
        let sig = &self.sig;
        let k = self.num_fibers();
        let kf = self.k_forms(frak_r);
        let two = q(2, 1);
        let nab: Vec<GForm> = self.r.iter().map(|r| self.nabla(r)).collect();
        let rg = |i: usize| GForm::from_scalars(sig, &self.r[i]);
        let h1 = |p: usize, i: usize| -> Form {
            if p == i {
                return Form::zero(sig);
            }
            pair_wedge(g, &nab[p], &rg(i))
                .sub(&pair_wedge(g, &nab[i], &rg(p)))
                .scale(&q(1, 2))
        };
        let mut rep = Report::new();
        let mut e = self.h3.d().sub(&pair_wedge(g, frak_r, frak_r));
        for i in 0..k {
            e.add_assign_ref(&kf[i].wedge(&self.curvature(i)));
        }
        rep.push("reduced-h3", ResidualValue::Form(e));
        for p in 0..k {
            let mut e = self.h2[p].d().add(&pair_wedge(g, frak_r, &nab[p]).scale(&two));
            for i in 0..k {
                let coef = pair_wedge(g, &nab[p], &rg(i)).sub(&h1(p, i));
                e.sub_assign_ref(&coef.wedge(&self.curvature(i)).scale(&two));
            }
            rep.push(format!("reduced-h2[{}]", p + 1), ResidualValue::Form(e));
        }
        for p in 0..k {
            for qq in p + 1..k {
                let rpq = GForm::from_scalars(sig, &bracket_scalars(g, &self.r[p], &self.r[qq]));
                let mut e = h1(p, qq)
                    .d()
                    .sub(&pair_wedge(g, frak_r, &rpq))
                    .add(&pair_wedge(g, &nab[p], &nab[qq]));
                for i in 0..k {
                    let c = self.c_at(i, p, qq);
                    if !c.is_zero() {
                        e.add_assign_ref(&self.curvature(i).scale(&(c * q(3, 1))));
                    }
                }
                rep.push(format!("reduced-h1[{},{}]", p + 1, qq + 1), ResidualValue::Form(e));
            }
        }
        rep
    }

    /// Builds the invariant Courant data on the bundle.
    pub fn build(&self) -> Result<CourantData, CourantError> {
        self.validate()?;
        let frak_r = self.inner_curvature()?;
        let rel = self.reduced_relations(&frak_r);
        if !rel.all_zero() {
            return Err(CourantError::ReducedRelationsViolated(rel));
        }
        let rec = self.record(&frak_r);
        let (h, r) = rec.assemble();
        CourantData::from_connection(&self.sig, Arc::clone(&self.g), rec.connection(), r, h)
    }

    fn validate(&self) -> Result<(), CourantError> {
        let k = self.num_fibers();
        let n = self.g.dim();
        if self.r.len() != k || self.h2.len() != k {
            return Err(CourantError::Shape(format!("expected {k} sections and {k} 2-forms")));
        }
        if self.r.iter().any(|r| r.len() != n) || self.omega_b.dim() != n {
            return Err(CourantError::Shape(format!("values must lie in a {n}-dimensional algebra")));
        }
        let basic = self.omega_b.is_basic()
            && self.h3.is_basic()
            && self.h2.iter().all(Form::is_basic);
        if !basic {
            return Err(CourantError::Shape("base data must be basic".into()));
        }
        if !self.omega_b.is_homogeneous(1)
            || !self.h3.is_homogeneous(3)
            || !self.h2.iter().all(|f| f.is_homogeneous(2))
        {
            return Err(CourantError::Shape("base data has the wrong degrees".into()));
        }
        if let Some(c) = &self.c {
            let shape_ok = c.len() == k && c.iter().all(|r| r.len() == k && r.iter().all(|s| s.len() == k));
            if !shape_ok {
                return Err(CourantError::Shape("constants c must be k × k × k".into()));
            }
            for i in 0..k {
                for j in 0..k {
                    for s in 0..k {
                        let v = &c[i][j][s];
                        if *v != -c[j][i][s].clone() || *v != -c[i][s][j].clone() {
                            return Err(CourantError::Shape("constants c must be antisymmetric".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
