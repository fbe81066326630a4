use coeff_ring::{q, TrigScalar};
use courant::{pair_scalars, pair_wedge, BaseData, CourantData, CourantDataDoc, EndForm, GForm, IsoData, IsoDoc};
use exterior::{fiber, FiberKind, Form, FormDoc, Sig, Signature, SignatureDoc};
use num_traits::Zero;
use qla::linalg;
use serde::{Deserialize, Serialize};

use crate::kforms::{compute_k_forms, require_integral};
use crate::TdualError;

/// Name prefix of the dual fiber generators on the correspondence space.
pub const DUAL_PREFIX: &str = "tth";

/// A T-dual pair together with the isomorphism `F` on the correspondence space.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityPackage {
    pub source: CourantData,
    pub dual: CourantData,
    /// The fibered product, carrying both the original and the dual fibers.
    pub correspondence: Sig,
    /// `F : p*E → p̃*Ẽ` on the correspondence space.
    pub f: IsoData,
    pub r: Vec<Vec<TrigScalar>>,
    pub r_tilde: Vec<Vec<TrigScalar>>,
    /// The inner curvature `𝔯` of the source base connection.
    pub frak_r: GForm,
}

impl DualityPackage {
    pub fn num_fibers(&self) -> usize {
        self.r.len()
    }

    /// Generator index on the correspondence space of the `i`-th original fiber.
    pub fn theta(&self, i: usize) -> usize {
        self.correspondence.gens_of_kind(FiberKind::Theta)[i]
    }

    /// Generator index on the correspondence space of the `i`-th dual fiber.
    pub fn theta_tilde(&self, i: usize) -> usize {
        self.correspondence.gens_of_kind(FiberKind::ThetaTilde)[i]
    }

    /// The curvatures `F_i` of the original fibers, as forms on the correspondence space.
    pub fn f_forms(&self) -> Vec<Form> {
        (0..self.num_fibers())
            .map(|i| Signature::curvature_form(&self.correspondence, self.theta(i)))
            .collect()
    }

    /// The curvatures `𝒦_i` of the dual fibers, as forms on the correspondence space.
    pub fn k_forms(&self) -> Vec<Form> {
        (0..self.num_fibers())
            .map(|i| Signature::curvature_form(&self.correspondence, self.theta_tilde(i)))
            .collect()
    }

    pub fn to_doc(&self) -> DualityPackageDoc {
        DualityPackageDoc {
            correspondence: self.correspondence.to_doc(),
            source: self.source.to_doc(),
            dual: self.dual.to_doc(),
            f: self.f.to_doc(),
            r: self.r.clone(),
            r_tilde: self.r_tilde.clone(),
            frak_r: self.frak_r.to_doc(),
        }
    }

    pub fn from_doc(doc: &DualityPackageDoc) -> Result<Self, TdualError> {
        let correspondence = Signature::from_doc(&doc.correspondence)?;
        let source = CourantData::from_doc(&doc.source)?;
        let dual = CourantData::from_doc(&doc.dual)?;
        let f = IsoData::from_doc(&correspondence, source.algebra(), &doc.f)?;
        let frak_r = GForm::from_doc(source.sig(), &doc.frak_r)?;
        let k = source.sig().num_fibers();
        let n = source.algebra().dim();
        let shape_ok = |v: &[Vec<TrigScalar>]| v.len() == k && v.iter().all(|r| r.len() == n);
        if !shape_ok(&doc.r) || !shape_ok(&doc.r_tilde) {
            return Err(TdualError::Parse(format!("expected {k} sections with {n} components")));
        }
        Ok(Self {
            source,
            dual,
            correspondence,
            f,
            r: doc.r.clone(),
            r_tilde: doc.r_tilde.clone(),
            frak_r,
        })
    }
}

/// JSON shape of a [`DualityPackage`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualityPackageDoc {
    pub correspondence: SignatureDoc,
    pub source: CourantDataDoc,
    pub dual: CourantDataDoc,
    pub f: IsoDoc,
    pub r: Vec<Vec<TrigScalar>>,
    pub r_tilde: Vec<Vec<TrigScalar>>,
    pub frak_r: Vec<FormDoc>,
}

fn restrict_end(e: &EndForm, target: &Sig) -> Result<EndForm, TdualError> {
    let entries = e
        .entries()
        .iter()
        .map(|row| row.iter().map(|f| f.restrict(target)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(EndForm::from_entries(target, entries))
}

fn check_input(base: &BaseData, r_tilde: &[Vec<TrigScalar>]) -> Result<(), TdualError> {
    let sig = &base.sig;
    if sig.fibers().iter().any(|f| f.kind != FiberKind::Theta) {
        return Err(TdualError::Unsupported("every source fiber must be of kind θ".into()));
    }
    let c_zero = base
        .c
        .as_ref()
        .is_none_or(|c| c.iter().flatten().flatten().all(Zero::is_zero));
    if !c_zero {
        return Err(TdualError::Unsupported("nonzero constants c".into()));
    }
    let k = sig.num_fibers();
    let n = base.g.dim();
    if r_tilde.len() != k || r_tilde.iter().any(|r| r.len() != n) {
        return Err(TdualError::Unsupported(format!("r̃ must be {k} sections with {n} components")));
    }
    if r_tilde.iter().flatten().any(|f| f.dim() != sig.base_dim() && !f.is_zero()) {
        return Err(TdualError::Unsupported("r̃ lives on a base of the wrong dimension".into()));
    }
    Ok(())
}

/// Builds the T-dual of the Courant algebroid described by `base`.
///
/// The dual bundle has curvatures `𝒦_i`, which must be closed and integral.
/// The dual algebroid is built from `r̃` (zero when omitted) with
/// `H̃₂^i = F_i − 2⟨𝔯, r̃_i⟩ + Σ_j ⟨r̃_i, r̃_j⟩ 𝒦_j`, and on the correspondence space
/// `F` has `K = 1`, `Φ = Σ θ̃_i ⊗ r̃_i − Σ θ_i ⊗ r_i` and
/// `β = Σ_ij (⟨r_i, r̃_j⟩ − δ_ij) θ_i ∧ θ̃_j`.
pub fn dualize(base: &BaseData, r_tilde: Option<&[Vec<TrigScalar>]>) -> Result<DualityPackage, TdualError> {
    let g = &base.g;
    let sig = &base.sig;
    let k = base.num_fibers();
    let n = g.dim();
    let zeros = vec![vec![TrigScalar::zero(sig.base_dim()); n]; k];
    let r_tilde = r_tilde.unwrap_or(&zeros);
    check_input(base, r_tilde)?;

    let source = base.build()?;
    let ks = compute_k_forms(base)?;
    require_integral(&ks)?;
    let frak_r = base.inner_curvature()?;

    let dual_fibers = ks
        .iter()
        .enumerate()
        .map(|(i, kf)| {
            let curv: Vec<(u64, TrigScalar)> = kf.form.terms().iter().map(|(m, f)| (*m, f.clone())).collect();
            fiber(&format!("{DUAL_PREFIX}{}", i + 1), FiberKind::ThetaTilde, &curv)
        })
        .collect();
    let correspondence = sig.extended(dual_fibers)?;
    let dual_sig = correspondence.without_kind(FiberKind::Theta);

    let mut h2_tilde = Vec::with_capacity(k);
    for i in 0..k {
        let rt = GForm::from_scalars(sig, &r_tilde[i]);
        let mut h = base.curvature(i).sub(&pair_wedge(g, &frak_r, &rt).scale(&q(2, 1)));
        for (j, kf) in ks.iter().enumerate() {
            h.add_assign_ref(&kf.form.mul_scalar(&pair_scalars(g, &r_tilde[i], &r_tilde[j])));
        }
        h2_tilde.push(h.restrict(&dual_sig)?);
    }
    let dual_base = BaseData {
        sig: dual_sig.clone(),
        g: g.clone(),
        omega_b: restrict_end(&base.omega_b, &dual_sig)?,
        r: r_tilde.to_vec(),
        h3: base.h3.restrict(&dual_sig)?,
        h2: h2_tilde,
        c: None,
    };
    let dual = dual_base.build()?;

    let th = correspondence.gens_of_kind(FiberKind::Theta);
    let tth = correspondence.gens_of_kind(FiberKind::ThetaTilde);
    let mut phi = GForm::zero(&correspondence, n);
    let mut beta = Form::zero(&correspondence);
    for i in 0..k {
        let theta = Form::gen(&correspondence, th[i]);
        let theta_tilde = Form::gen(&correspondence, tth[i]);
        phi = phi
            .add(&GForm::tensor(&theta_tilde, &r_tilde[i]))
            .sub(&GForm::tensor(&theta, &base.r[i]));
        for (j, &tj) in tth.iter().enumerate() {
            let mut c = pair_scalars(g, &base.r[i], &r_tilde[j]);
            if i == j {
                c.sub_assign_ref(&TrigScalar::one(sig.base_dim()));
            }
            beta.add_assign_ref(&theta.wedge(&Form::gen(&correspondence, tj)).mul_scalar(&c));
        }
    }
    let f = IsoData::new(g, beta, linalg::identity(n), phi)?;

    Ok(DualityPackage {
        source,
        dual,
        correspondence,
        f,
        r: base.r.clone(),
        r_tilde: r_tilde.to_vec(),
        frak_r,
    })
}
