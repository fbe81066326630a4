use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use coeff_ring::{TrigScalar, Q};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::signature::{FiberKind, Sig, Signature};
use crate::vector::VectorField;
use crate::ExteriorError;

/// Sign of `e_a ∧ e_b = sign · e_{a∪b}` for disjoint generator sets.
pub fn wedge_sign(a: u64, b: u64) -> i32 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of generators in `mask` strictly below `bit`.
pub fn position(mask: u64, bit: usize) -> u32 {
    (mask & ((1u64 << bit) - 1)).count_ones()
}

pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(j)
    })
}

fn signed(f: &TrigScalar, sign: i32) -> TrigScalar {
    if sign > 0 {
        f.clone()
    } else {
        f.neg()
    }
}

/// An element of the invariant complex: a sum of `f · e_S` with `f` a function on the base.
#[derive(Clone, Debug)]
pub struct Form {
    sig: Sig,
    terms: BTreeMap<u64, TrigScalar>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_sig(&self.sig, &other.sig)
    }
}

pub fn same_sig(a: &Sig, b: &Sig) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Form {
    pub fn zero(sig: &Sig) -> Self {
        Self {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(sig: &Sig, f: TrigScalar) -> Self {
        Self::monomial(sig, 0, f)
    }

    pub fn constant(sig: &Sig, c: Q) -> Self {
        Self::scalar(sig, TrigScalar::constant(sig.base_dim(), c))
    }

    pub fn one(sig: &Sig) -> Self {
        Self::constant(sig, Q::one())
    }

    /// `f · e_mask` with generators in increasing order.
    pub fn monomial(sig: &Sig, mask: u64, f: TrigScalar) -> Self {
        let mut out = Self::zero(sig);
        out.add_term(mask, f);
        out
    }

    /// The generator with index `g` (`dx_a` for `g < m`, fibers after).
    pub fn gen(sig: &Sig, g: usize) -> Self {
        Self::monomial(sig, 1 << g, TrigScalar::one(sig.base_dim()))
    }

    pub fn from_terms(sig: &Sig, terms: BTreeMap<u64, TrigScalar>) -> Self {
        let mut out = Self::zero(sig);
        for (m, f) in terms {
            out.add_term(m, f);
        }
        out
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn terms(&self) -> &BTreeMap<u64, TrigScalar> {
        &self.terms
    }

    pub fn coefficient(&self, mask: u64) -> TrigScalar {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| TrigScalar::zero(self.sig.base_dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of a homogeneous form; `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, mask: u64, f: TrigScalar) {
        assert!(mask & !self.sig.full_mask() == 0, "generator outside signature");
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(c) => {
                c.add_assign_ref(&f);
                if c.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, f);
            }
        }
    }

    fn check(&self, other: &Form) {
        assert!(same_sig(&self.sig, &other.sig), "forms live in different complexes");
    }

    pub fn add_assign_ref(&mut self, other: &Form) {
        self.check(other);
        for (m, f) in &other.terms {
            self.add_term(*m, f.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Form) {
        self.check(other);
        for (m, f) in &other.terms {
            self.add_term(*m, f.neg());
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    pub fn neg(&self) -> Form {
        self.map_coeffs(|_, f| f.neg())
    }

    pub fn scale(&self, c: &Q) -> Form {
        self.map_coeffs(|_, f| f.scale(c))
    }

    pub fn mul_scalar(&self, g: &TrigScalar) -> Form {
        self.map_coeffs(|_, f| f.mul(g))
    }

    /// The grading involution `f e_S ↦ (−1)^{|S|} f e_S`.
    pub fn graded(&self) -> Form {
        self.map_coeffs(|m, f| if m.count_ones() % 2 == 0 { f.clone() } else { f.neg() })
    }

    /// Whether every term has degree `p` (the zero form qualifies).
    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.terms.keys().all(|m| m.count_ones() as usize == p)
    }

    fn map_coeffs(&self, op: impl Fn(u64, &TrigScalar) -> TrigScalar) -> Form {
        let mut out = Form::zero(&self.sig);
        for (m, f) in &self.terms {
            out.add_term(*m, op(*m, f));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Form {
        self.check(other);
        let mut out = Form::zero(&self.sig);
        for (ma, fa) in &self.terms {
            for (mb, fb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                out.add_term(ma | mb, signed(&fa.mul(fb), wedge_sign(*ma, *mb)));
            }
        }
        out
    }

    /// Exterior derivative with `d(θ_i) = F_i`.
    pub fn d(&self) -> Form {
        let m = self.sig.base_dim();
        let mut out = Form::zero(&self.sig);
        for (mask, f) in &self.terms {
            for a in 0..m {
                if mask & (1 << a) != 0 {
                    continue;
                }
                let df = f.partial(a);
                if !df.is_zero() {
                    out.add_term(mask | (1 << a), signed(&df, wedge_sign(1 << a, *mask)));
                }
            }
            for g in bits(mask >> m).map(|i| i + m) {
                let rest = mask & !(1 << g);
                let sign = if position(*mask, g) % 2 == 0 { 1 } else { -1 };
                for (cm, cf) in &self.sig.fibers()[g - m].curvature {
                    if cm & rest != 0 {
                        continue;
                    }
                    let s = sign * wedge_sign(*cm, rest);
                    out.add_term(cm | rest, signed(&cf.mul(f), s));
                }
            }
        }
        out
    }

    /// Contraction with the frame field dual to generator `g`.
    pub fn interior_gen(&self, g: usize) -> Form {
        let mut out = Form::zero(&self.sig);
        for (mask, f) in &self.terms {
            if mask & (1 << g) == 0 {
                continue;
            }
            let sign = if position(*mask, g) % 2 == 0 { 1 } else { -1 };
            out.add_term(mask & !(1 << g), signed(f, sign));
        }
        out
    }

    pub fn interior(&self, x: &VectorField) -> Form {
        let mut out = Form::zero(&self.sig);
        for (g, c) in x.comps().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.add_assign_ref(&self.interior_gen(g).mul_scalar(c));
        }
        out
    }

    /// Evaluation on a pair of vector fields, `ω(X, Y) = i_Y i_X ω`.
    pub fn eval2(&self, x: &VectorField, y: &VectorField) -> TrigScalar {
        self.interior(x).interior(y).scalar_part()
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie(&self, x: &VectorField) -> Form {
        self.d().interior(x).add(&self.interior(x).d())
    }

    /// Reverses every wedge word: a degree-`p` term picks up `(-1)^{p(p-1)/2}`.
    pub fn transpose(&self) -> Form {
        self.map_coeffs(|m, f| {
            let p = m.count_ones();
            if (p * (p.saturating_sub(1)) / 2) % 2 == 0 {
                f.clone()
            } else {
                f.neg()
            }
        })
    }

    /// Terms of total degree equal to the number of generators.
    pub fn top(&self) -> Form {
        self.part(self.sig.num_gens())
    }

    /// Coefficient of the top generator word.
    pub fn top_coefficient(&self) -> TrigScalar {
        self.coefficient(self.sig.full_mask())
    }

    pub fn part(&self, degree: usize) -> Form {
        let mut out = Form::zero(&self.sig);
        for (m, f) in &self.terms {
            if m.count_ones() as usize == degree {
                out.add_term(*m, f.clone());
            }
        }
        out
    }

    pub fn scalar_part(&self) -> TrigScalar {
        self.coefficient(0)
    }

    /// True when no fiber generator occurs.
    pub fn is_basic(&self) -> bool {
        let base = self.sig.base_mask();
        self.terms.keys().all(|m| m & !base == 0)
    }

    /// Writes the form as `Σ_t e_t ∧ ω_t` with `t` a set of fiber generators and
    /// `ω_t` basic, returning the map `t ↦ ω_t`.
    pub fn split_fibers(&self) -> BTreeMap<u64, Form> {
        let base = self.sig.base_mask();
        let mut out: BTreeMap<u64, Form> = BTreeMap::new();
        for (m, f) in &self.terms {
            let b = m & base;
            let t = m & !base;
            let sign = if (b.count_ones() * t.count_ones()) % 2 == 0 { 1 } else { -1 };
            out.entry(t)
                .or_insert_with(|| Form::zero(&self.sig))
                .add_term(b, signed(f, sign));
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Integration over the fibers of the given kind, volume normalized to one.
    ///
    /// A term `f e_S` with `S` containing every fiber generator `F` of that kind is
    /// rewritten as `± f e_{S∖F} ∧ e_F` and sent to `± f e_{S∖F}` on the quotient complex.
    pub fn fiber_integrate(&self, kind: FiberKind) -> Form {
        let target = self.sig.without_kind(kind);
        let fmask: u64 = self.sig.gens_of_kind(kind).iter().map(|g| 1u64 << g).sum();
        let keep: Vec<usize> = (0..self.sig.num_gens()).filter(|g| fmask & (1 << g) == 0).collect();
        let mut out = Form::zero(&target);
        for (m, f) in &self.terms {
            if m & fmask != fmask {
                continue;
            }
            let rest = m & !fmask;
            let sign = wedge_sign(rest, fmask);
            let mut new = 0u64;
            for (i, g) in keep.iter().enumerate() {
                if rest & (1 << g) != 0 {
                    new |= 1 << i;
                }
            }
            out.add_term(new, signed(f, sign));
        }
        out
    }

    /// Re-expresses the form in a complex containing all of its generators (matched by name).
    pub fn embed(&self, target: &Sig) -> Result<Form, ExteriorError> {
        if same_sig(&self.sig, target) {
            return Ok(Form {
                sig: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map = gen_map(&self.sig, target)?;
        let mut out = Form::zero(target);
        for (m, f) in &self.terms {
            let (new, sign) = map_mask(*m, &map);
            out.add_term(new, signed(f, sign));
        }
        Ok(out)
    }

    /// Re-expresses the form in a complex that contains every generator it
    /// actually uses (matched by name), such as a quotient by fibers it does not involve.
    pub fn restrict(&self, target: &Sig) -> Result<Form, ExteriorError> {
        if target.base_dim() != self.sig.base_dim() {
            return Err(ExteriorError::SignatureMismatch);
        }
        let map: Vec<Option<usize>> = (0..self.sig.num_gens())
            .map(|g| target.gen_index(&self.sig.gen_name(g)))
            .collect();
        let used = self.terms.keys().fold(0u64, |acc, m| acc | m);
        if let Some(g) = bits(used).find(|&g| map[g].is_none()) {
            return Err(ExteriorError::UnknownGenerator(self.sig.gen_name(g)));
        }
        let map: Vec<usize> = map.into_iter().map(|g| g.unwrap_or(0)).collect();
        let mut out = Form::zero(target);
        for (m, f) in &self.terms {
            let (new, sign) = map_mask(*m, &map);
            out.add_term(new, signed(f, sign));
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> FormDoc {
        FormDoc {
            terms: self
                .terms
                .iter()
                .map(|(m, f)| TermDoc {
                    gens: bits(*m).map(|g| self.sig.gen_name(g)).collect(),
                    coeff: f.clone(),
                })
                .collect(),
        }
    }

    /// Reads a form; generator lists need not be sorted (the wedge sign is applied).
    pub fn from_doc(sig: &Sig, doc: &FormDoc) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(sig);
        for t in &doc.terms {
            let mut acc = Form::scalar(sig, t.coeff.clone());
            if !t.coeff.is_zero() && t.coeff.dim() != sig.base_dim() {
                return Err(ExteriorError::Parse(format!(
                    "coefficient dimension {} does not match base dimension {}",
                    t.coeff.dim(),
                    sig.base_dim()
                )));
            }
            for name in &t.gens {
                let g = sig
                    .gen_index(name)
                    .ok_or_else(|| ExteriorError::UnknownGenerator(name.clone()))?;
                acc = acc.wedge(&Form::gen(sig, g));
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }
}

/// Index map from generators of `from` to generators of `to`, matched by name.
pub fn gen_map(from: &Signature, to: &Signature) -> Result<Vec<usize>, ExteriorError> {
    if from.base_dim() != to.base_dim() {
        return Err(ExteriorError::SignatureMismatch);
    }
    (0..from.num_gens())
        .map(|g| {
            let name = from.gen_name(g);
            to.gen_index(&name).ok_or(ExteriorError::UnknownGenerator(name))
        })
        .collect()
}

/// Image of a generator set under an index map, with the sign of re-sorting.
pub fn map_mask(mask: u64, map: &[usize]) -> (u64, i32) {
    let images: Vec<usize> = bits(mask).map(|g| map[g]).collect();
    let mut inversions = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    let new = images.iter().fold(0u64, |acc, g| acc | (1 << g));
    (new, if inversions % 2 == 0 { 1 } else { -1 })
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{c}]")?;
            let names: Vec<String> = bits(*m).map(|g| self.sig.gen_name(g)).collect();
            if !names.is_empty() {
                write!(f, "{}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub gens: Vec<String>,
    pub coeff: TrigScalar,
}

/// JSON shape of a form; the signature travels separately.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FormDoc {
    pub terms: Vec<TermDoc>,
}
