use std::fmt;

use coeff_ring::{TrigScalar, Q};
use exterior::{ExteriorError, Form, FormDoc, Sig, VectorField};
use num_traits::Zero;
use qla::{Mat, QuadraticLieAlgebra};

use crate::CourantError;

/// A `𝔤`-valued invariant form, stored by components in the basis `e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GForm {
    sig: Sig,
    comps: Vec<Form>,
}

impl GForm {
    pub fn zero(sig: &Sig, n: usize) -> Self {
        Self {
            sig: sig.clone(),
            comps: vec![Form::zero(sig); n],
        }
    }

    pub fn from_comps(sig: &Sig, comps: Vec<Form>) -> Self {
        Self {
            sig: sig.clone(),
            comps,
        }
    }

    /// A `𝔤`-valued function.
    pub fn from_scalars(sig: &Sig, v: &[TrigScalar]) -> Self {
        Self::from_comps(sig, v.iter().map(|f| Form::scalar(sig, f.clone())).collect())
    }

    pub fn constant(sig: &Sig, v: &[Q]) -> Self {
        Self::from_comps(sig, v.iter().map(|c| Form::constant(sig, c.clone())).collect())
    }

    /// `ω ⊗ v` for a scalar form and a `𝔤`-valued function.
    pub fn tensor(form: &Form, v: &[TrigScalar]) -> Self {
        Self::from_comps(form.sig(), v.iter().map(|f| form.mul_scalar(f)).collect())
    }

    /// `ω ⊗ v` for a constant vector.
    pub fn tensor_const(form: &Form, v: &[Q]) -> Self {
        Self::from_comps(form.sig(), v.iter().map(|c| form.scale(c)).collect())
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Form] {
        &self.comps
    }

    pub fn comp(&self, k: usize) -> &Form {
        &self.comps[k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.comps.iter().all(|c| c.is_homogeneous(p))
    }

    pub fn is_basic(&self) -> bool {
        self.comps.iter().all(Form::is_basic)
    }

    fn map(&self, op: impl Fn(&Form) -> Form) -> GForm {
        Self::from_comps(&self.sig, self.comps.iter().map(op).collect())
    }

    fn zip(&self, other: &GForm, op: impl Fn(&Form, &Form) -> Form) -> GForm {
        assert_eq!(self.dim(), other.dim());
        Self::from_comps(&self.sig, self.comps.iter().zip(&other.comps).map(|(a, b)| op(a, b)).collect())
    }

    pub fn add(&self, other: &GForm) -> GForm {
        self.zip(other, Form::add)
    }

    pub fn sub(&self, other: &GForm) -> GForm {
        self.zip(other, Form::sub)
    }

    pub fn neg(&self) -> GForm {
        self.map(Form::neg)
    }

    pub fn scale(&self, c: &Q) -> GForm {
        self.map(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, f: &TrigScalar) -> GForm {
        self.map(|x| x.mul_scalar(f))
    }

    pub fn d(&self) -> GForm {
        self.map(Form::d)
    }

    /// `ω ∧ α`.
    pub fn wedge_left(&self, form: &Form) -> GForm {
        self.map(|c| form.wedge(c))
    }

    /// `α ∧ ω`.
    pub fn wedge_right(&self, form: &Form) -> GForm {
        self.map(|c| c.wedge(form))
    }

    pub fn interior(&self, x: &VectorField) -> GForm {
        self.map(|c| c.interior(x))
    }

    pub fn interior_gen(&self, g: usize) -> GForm {
        self.map(|c| c.interior_gen(g))
    }

    /// Degree-zero components as functions.
    pub fn scalar_parts(&self) -> Vec<TrigScalar> {
        self.comps.iter().map(Form::scalar_part).collect()
    }

    /// `M α` for a constant matrix.
    pub fn apply_const(&self, m: &Mat) -> GForm {
        let comps = (0..m.len())
            .map(|i| {
                let mut acc = Form::zero(&self.sig);
                for (j, c) in m[i].iter().enumerate() {
                    if !c.is_zero() {
                        acc.add_assign_ref(&self.comps[j].scale(c));
                    }
                }
                acc
            })
            .collect();
        Self::from_comps(&self.sig, comps)
    }

    pub fn embed(&self, target: &Sig) -> Result<GForm, ExteriorError> {
        let comps = self.comps.iter().map(|c| c.embed(target)).collect::<Result<_, _>>()?;
        Ok(Self::from_comps(target, comps))
    }

    pub fn fiber_split(&self, t: u64) -> GForm {
        self.map(|c| c.split_fibers().remove(&t).unwrap_or_else(|| Form::zero(c.sig())))
    }

    pub fn to_doc(&self) -> Vec<FormDoc> {
        self.comps.iter().map(Form::to_doc).collect()
    }

    pub fn from_doc(sig: &Sig, doc: &[FormDoc]) -> Result<Self, ExteriorError> {
        let comps = doc.iter().map(|d| Form::from_doc(sig, d)).collect::<Result<_, _>>()?;
        Ok(Self::from_comps(sig, comps))
    }
}

impl fmt::Display for GForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `⟨α ∧ β⟩ = Σ g_kl α^k ∧ β^l`.
pub fn pair_wedge(g: &QuadraticLieAlgebra, a: &GForm, b: &GForm) -> Form {
    let mut out = Form::zero(&a.sig);
    for (k, row) in g.gram().iter().enumerate() {
        if a.comps[k].is_zero() {
            continue;
        }
        for (l, gkl) in row.iter().enumerate() {
            if !gkl.is_zero() && !b.comps[l].is_zero() {
                out.add_assign_ref(&a.comps[k].wedge(&b.comps[l]).scale(gkl));
            }
        }
    }
    out
}

/// `⟨α, v⟩ = Σ g_kl α^k v^l` for a `𝔤`-valued function `v`.
pub fn pair_fn(g: &QuadraticLieAlgebra, a: &GForm, v: &[TrigScalar]) -> Form {
    pair_wedge(g, a, &GForm::from_scalars(&a.sig, v))
}

/// Pointwise pairing of two `𝔤`-valued functions.
pub fn pair_scalars(g: &QuadraticLieAlgebra, u: &[TrigScalar], v: &[TrigScalar]) -> TrigScalar {
    let dim = u.first().or(v.first()).map_or(0, TrigScalar::dim);
    let mut out = TrigScalar::zero(dim);
    for (k, row) in g.gram().iter().enumerate() {
        for (l, gkl) in row.iter().enumerate() {
            if !gkl.is_zero() && !u[k].is_zero() && !v[l].is_zero() {
                out.add_assign_ref(&u[k].mul(&v[l]).scale(gkl));
            }
        }
    }
    out
}

/// `Σ_{ij} α^i ∧ β^j [e_i, e_j]`.
pub fn bracket_wedge(g: &QuadraticLieAlgebra, a: &GForm, b: &GForm) -> GForm {
    let n = g.dim();
    let mut out = GForm::zero(&a.sig, n);
    for i in 0..n {
        if a.comps[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if b.comps[j].is_zero() {
                continue;
            }
            let w = a.comps[i].wedge(&b.comps[j]);
            if w.is_zero() {
                continue;
            }
            for k in 0..n {
                let c = g.structure(i, j, k);
                if !c.is_zero() {
                    out.comps[k].add_assign_ref(&w.scale(c));
                }
            }
        }
    }
    out
}

/// Pointwise bracket of two `𝔤`-valued functions.
pub fn bracket_scalars(g: &QuadraticLieAlgebra, u: &[TrigScalar], v: &[TrigScalar]) -> Vec<TrigScalar> {
    let n = g.dim();
    let dim = u.first().or(v.first()).map_or(0, TrigScalar::dim);
    let mut out = vec![TrigScalar::zero(dim); n];
    for i in 0..n {
        for j in 0..n {
            if u[i].is_zero() || v[j].is_zero() {
                continue;
            }
            let p = u[i].mul(&v[j]);
            for (k, o) in out.iter_mut().enumerate() {
                let c = g.structure(i, j, k);
                if !c.is_zero() {
                    o.add_assign_ref(&p.scale(c));
                }
            }
        }
    }
    out
}

/// An `End(𝔤)`-valued invariant form, `entries[i][j]` acting on the `e_j` component.
#[derive(Clone, Debug, PartialEq)]
pub struct EndForm {
    sig: Sig,
    entries: Vec<Vec<Form>>,
}

impl EndForm {
    pub fn zero(sig: &Sig, n: usize) -> Self {
        Self {
            sig: sig.clone(),
            entries: vec![vec![Form::zero(sig); n]; n],
        }
    }

    pub fn from_entries(sig: &Sig, entries: Vec<Vec<Form>>) -> Self {
        Self {
            sig: sig.clone(),
            entries,
        }
    }

    pub fn constant(sig: &Sig, m: &Mat) -> Self {
        Self::tensor(&Form::one(sig), m)
    }

    /// `ω ⊗ M` for a constant matrix.
    pub fn tensor(form: &Form, m: &Mat) -> Self {
        let entries = m.iter().map(|r| r.iter().map(|c| form.scale(c)).collect()).collect();
        Self::from_entries(form.sig(), entries)
    }

    /// A matrix of functions.
    pub fn from_scalars(sig: &Sig, m: &[Vec<TrigScalar>]) -> Self {
        let entries = m
            .iter()
            .map(|r| r.iter().map(|f| Form::scalar(sig, f.clone())).collect())
            .collect();
        Self::from_entries(sig, entries)
    }

    /// `ad_α`, with `(ad_α)_ij = Σ_k α^k c_kj^i`.
    pub fn ad(g: &QuadraticLieAlgebra, a: &GForm) -> Self {
        let n = g.dim();
        let mut out = Self::zero(&a.sig, n);
        for (k, ak) in a.comps.iter().enumerate() {
            if ak.is_zero() {
                continue;
            }
            for j in 0..n {
                for i in 0..n {
                    let c = g.structure(k, j, i);
                    if !c.is_zero() {
                        out.entries[i][j].add_assign_ref(&ak.scale(c));
                    }
                }
            }
        }
        out
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Form>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Form {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Form::is_zero)
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.entries.iter().flatten().all(|c| c.is_homogeneous(p))
    }

    pub fn is_basic(&self) -> bool {
        self.entries.iter().flatten().all(Form::is_basic)
    }

    fn map(&self, op: impl Fn(&Form) -> Form) -> EndForm {
        let entries = self.entries.iter().map(|r| r.iter().map(&op).collect()).collect();
        Self::from_entries(&self.sig, entries)
    }

    fn zip(&self, other: &EndForm, op: impl Fn(&Form, &Form) -> Form) -> EndForm {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| op(a, b)).collect())
            .collect();
        Self::from_entries(&self.sig, entries)
    }

    pub fn add(&self, other: &EndForm) -> EndForm {
        self.zip(other, Form::add)
    }

    pub fn sub(&self, other: &EndForm) -> EndForm {
        self.zip(other, Form::sub)
    }

    pub fn neg(&self) -> EndForm {
        self.map(Form::neg)
    }

    pub fn scale(&self, c: &Q) -> EndForm {
        self.map(|f| f.scale(c))
    }

    pub fn d(&self) -> EndForm {
        self.map(Form::d)
    }

    pub fn graded(&self) -> EndForm {
        self.map(Form::graded)
    }

    /// `ω ∧ A`.
    pub fn wedge_left(&self, form: &Form) -> EndForm {
        self.map(|c| form.wedge(c))
    }

    pub fn interior(&self, x: &VectorField) -> EndForm {
        self.map(|c| c.interior(x))
    }

    pub fn interior_gen(&self, g: usize) -> EndForm {
        self.map(|c| c.interior_gen(g))
    }

    /// `(A ∧ B)_ij = Σ_k A_ik ∧ B_kj`.
    pub fn wedge(&self, other: &EndForm) -> EndForm {
        let n = self.dim();
        let mut out = Self::zero(&self.sig, n);
        for i in 0..n {
            for k in 0..n {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.entries[k][j].is_zero() {
                        let w = self.entries[i][k].wedge(&other.entries[k][j]);
                        out.entries[i][j].add_assign_ref(&w);
                    }
                }
            }
        }
        out
    }

    /// `(A ∧ α)^i = Σ_j A_ij ∧ α^j`.
    pub fn apply(&self, a: &GForm) -> GForm {
        let n = self.dim();
        let comps = (0..n)
            .map(|i| {
                let mut acc = Form::zero(&self.sig);
                for j in 0..n {
                    if !self.entries[i][j].is_zero() && !a.comps[j].is_zero() {
                        acc.add_assign_ref(&self.entries[i][j].wedge(&a.comps[j]));
                    }
                }
                acc
            })
            .collect();
        GForm::from_comps(&self.sig, comps)
    }

    /// Applies a matrix-valued function to a `𝔤`-valued function.
    pub fn apply_scalars(&self, v: &[TrigScalar]) -> Vec<TrigScalar> {
        self.apply(&GForm::from_scalars(&self.sig, v)).scalar_parts()
    }

    pub fn mul_const_left(&self, m: &Mat) -> EndForm {
        EndForm::constant(&self.sig, m).wedge(self)
    }

    pub fn mul_const_right(&self, m: &Mat) -> EndForm {
        self.wedge(&EndForm::constant(&self.sig, m))
    }

    /// Graded commutator `A ∧ B − (−1)^{|A||B|} B ∧ A` for homogeneous `A` of degree `p`.
    pub fn graded_commutator(&self, other: &EndForm, p: usize, q: usize) -> EndForm {
        let ba = other.wedge(self);
        if (p * q) % 2 == 0 {
            self.wedge(other).sub(&ba)
        } else {
            self.wedge(other).add(&ba)
        }
    }

    /// Degree-zero entries as functions.
    pub fn scalar_matrix(&self) -> Vec<Vec<TrigScalar>> {
        self.entries.iter().map(|r| r.iter().map(Form::scalar_part).collect()).collect()
    }

    /// Terms that involve no fiber generator.
    pub fn basic_part(&self) -> EndForm {
        let base = self.sig.base_mask();
        self.map(|c| {
            let mut out = Form::zero(c.sig());
            for (m, f) in c.terms() {
                if m & !base == 0 {
                    out.add_term(*m, f.clone());
                }
            }
            out
        })
    }

    pub fn embed(&self, target: &Sig) -> Result<EndForm, ExteriorError> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|c| c.embed(target)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok(Self::from_entries(target, entries))
    }

    pub fn to_doc(&self) -> Vec<Vec<FormDoc>> {
        self.entries.iter().map(|r| r.iter().map(Form::to_doc).collect()).collect()
    }

    pub fn from_doc(sig: &Sig, doc: &[Vec<FormDoc>]) -> Result<Self, ExteriorError> {
        let entries = doc
            .iter()
            .map(|r| r.iter().map(|d| Form::from_doc(sig, d)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        Ok(Self::from_entries(sig, entries))
    }
}

impl fmt::Display for EndForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, c) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(f, "]")
    }
}

/// Residual matrices of pointwise skewness and the derivation property for a
/// matrix of functions; both vanish iff it is a skew derivation at every point.
pub fn skew_derivation_residual(g: &QuadraticLieAlgebra, m: &[Vec<TrigScalar>]) -> Vec<TrigScalar> {
    let n = g.dim();
    let dim = m.first().and_then(|r| r.first()).map_or(0, TrigScalar::dim);
    let mut out = Vec::new();
    // ⟨M e_i, e_j⟩ + ⟨e_i, M e_j⟩
    for i in 0..n {
        for j in i..n {
            let mut acc = TrigScalar::zero(dim);
            for p in 0..n {
                acc.add_assign_ref(&m[p][i].scale(&g.gram()[p][j]));
                acc.add_assign_ref(&m[p][j].scale(&g.gram()[i][p]));
            }
            out.push(acc);
        }
    }
    // M[e_i,e_j] − [M e_i, e_j] − [e_i, M e_j]
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut acc = TrigScalar::zero(dim);
                for l in 0..n {
                    acc.add_assign_ref(&m[k][l].scale(g.structure(i, j, l)));
                    acc.sub_assign_ref(&m[l][i].scale(g.structure(l, j, k)));
                    acc.sub_assign_ref(&m[l][j].scale(g.structure(i, l, k)));
                }
                out.push(acc);
            }
        }
    }
    out
}

/// The `𝔤`-valued form `a` with `ad_a = e`.
///
/// Fails with [`CourantError::CurvatureNotInner`] when `e` is not in the image of `ad`.
pub fn ad_preimage(g: &QuadraticLieAlgebra, e: &EndForm) -> Result<GForm, CourantError> {
    let n = g.dim();
    let left = g.ad_left_inverse()?;
    let comps = (0..n)
        .map(|k| {
            let mut acc = Form::zero(e.sig());
            for i in 0..n {
                for j in 0..n {
                    let c = &left[k][i * n + j];
                    if !c.is_zero() {
                        acc.add_assign_ref(&e.entry(i, j).scale(c));
                    }
                }
            }
            acc
        })
        .collect();
    let a = GForm::from_comps(e.sig(), comps);
    if EndForm::ad(g, &a) != *e {
        return Err(CourantError::CurvatureNotInner);
    }
    Ok(a)
}
