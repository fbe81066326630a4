use std::fmt;
use std::sync::Arc;

use coeff_ring::{TrigScalar, Q};
use courant::Section;
use exterior::{same_sig, FiberKind, Form, Sig};
use num_traits::Zero;
use qla::{Mat, QuadraticLieAlgebra, SpinorModule};
use serde::{Deserialize, Serialize};

use crate::SpinorError;

/// An invariant spinor `Σ_a ω_a ⊗ s_a` with `s_a` the Fock basis of `𝒮_𝔤`.
///
/// Component `a` holds the form multiplying basis spinor `a`. The total parity
/// of `e_S ⊗ s_a` is `|S| + |a|`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spinor {
    sig: Sig,
    g: Arc<QuadraticLieAlgebra>,
    comps: Vec<Form>,
}

/// One stored term of a spinor: generator names, occupied Fock slots and coefficient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorEntry {
    pub gens: Vec<String>,
    pub fock: Vec<usize>,
    pub coeff: TrigScalar,
}

pub(crate) fn module(g: &QuadraticLieAlgebra) -> &SpinorModule {
    g.spinors().expect("validated algebras carry a Witt basis")
}

/// Sign `(−1)^{r|s| + nr + r(r−1)/2}` of the pushforward over `r` fibers onto an
/// `n`-dimensional target, for Fock parity `|s|`.
pub fn pushforward_sign(r: usize, n: usize, parity: u32) -> i32 {
    let e = r * parity as usize + n * r + r * r.saturating_sub(1) / 2;
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Spinor {
    pub fn zero(sig: &Sig, g: &Arc<QuadraticLieAlgebra>) -> Self {
        Self {
            sig: sig.clone(),
            g: g.clone(),
            comps: vec![Form::zero(sig); module(g).size()],
        }
    }

    /// `e_S ⊗ s_a` with coefficient `f`.
    pub fn basis(sig: &Sig, g: &Arc<QuadraticLieAlgebra>, mask: u64, fock: usize, f: TrigScalar) -> Self {
        let mut out = Self::zero(sig, g);
        out.comps[fock] = Form::monomial(sig, mask, f);
        out
    }

    /// `ω ⊗ s_a`.
    pub fn from_form(form: &Form, g: &Arc<QuadraticLieAlgebra>, fock: usize) -> Self {
        let mut out = Self::zero(form.sig(), g);
        out.comps[fock] = form.clone();
        out
    }

    pub fn from_comps(sig: &Sig, g: &Arc<QuadraticLieAlgebra>, comps: Vec<Form>) -> Result<Self, SpinorError> {
        if comps.len() != module(g).size() {
            return Err(SpinorError::Shape(format!(
                "expected {} Fock components, got {}",
                module(g).size(),
                comps.len()
            )));
        }
        if comps.iter().any(|c| !same_sig(c.sig(), sig)) {
            return Err(SpinorError::Shape("components live in different complexes".into()));
        }
        Ok(Self {
            sig: sig.clone(),
            g: g.clone(),
            comps,
        })
    }

    /// Every `e_S ⊗ s_a`, a basis of invariant spinors over the base functions.
    pub fn spanning_set(sig: &Sig, g: &Arc<QuadraticLieAlgebra>) -> Vec<Spinor> {
        let one = TrigScalar::one(sig.base_dim());
        let mut out = Vec::new();
        for mask in 0..=sig.full_mask() {
            for a in 0..module(g).size() {
                out.push(Self::basis(sig, g, mask, a, one.clone()));
            }
        }
        out
    }

    pub fn sig(&self) -> &Sig {
        &self.sig
    }

    pub fn algebra(&self) -> &Arc<QuadraticLieAlgebra> {
        &self.g
    }

    pub fn comps(&self) -> &[Form] {
        &self.comps
    }

    pub fn comp(&self, a: usize) -> &Form {
        &self.comps[a]
    }

    pub fn size(&self) -> usize {
        self.comps.len()
    }

    pub fn fock_parity(&self, a: usize) -> u32 {
        module(&self.g).parity(a)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    pub fn map_forms(&self, f: impl Fn(&Form) -> Form) -> Spinor {
        Spinor {
            sig: self.sig.clone(),
            g: self.g.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Spinor, f: impl Fn(&Form, &Form) -> Form) -> Spinor {
        assert_eq!(self.size(), other.size(), "spinors over different algebras");
        Spinor {
            sig: self.sig.clone(),
            g: self.g.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Spinor) -> Spinor {
        self.zip(other, Form::add)
    }

    pub fn sub(&self, other: &Spinor) -> Spinor {
        self.zip(other, Form::sub)
    }

    pub fn neg(&self) -> Spinor {
        self.map_forms(Form::neg)
    }

    pub fn scale(&self, c: &Q) -> Spinor {
        self.map_forms(|f| f.scale(c))
    }

    pub fn mul_scalar(&self, f: &TrigScalar) -> Spinor {
        self.map_forms(|w| w.mul_scalar(f))
    }

    /// `α ∧ ω ⊗ s`.
    pub fn wedge_left(&self, alpha: &Form) -> Spinor {
        self.map_forms(|w| alpha.wedge(w))
    }

    /// `ω ⊗ s ↦ (−1)^{|ω|} ω ⊗ s`.
    pub fn graded(&self) -> Spinor {
        self.map_forms(Form::graded)
    }

    /// Total parity part: `|ω| + |s| ≡ p (mod 2)`.
    pub fn parity_part(&self, p: u32) -> Spinor {
        let mut out = Spinor::zero(&self.sig, &self.g);
        for (a, w) in self.comps.iter().enumerate() {
            for (m, f) in w.terms() {
                if (m.count_ones() + self.fock_parity(a)) % 2 == p % 2 {
                    out.comps[a].add_term(*m, f.clone());
                }
            }
        }
        out
    }

    /// `ω ⊗ s ↦ ω ⊗ M s` for a constant Fock operator.
    pub fn fock_apply(&self, m: &Mat) -> Spinor {
        self.fock_wedge(None, m)
    }

    /// `ω ⊗ s ↦ α ∧ ω ⊗ M s`, with `α = 1` when absent.
    pub(crate) fn fock_wedge(&self, alpha: Option<&Form>, m: &Mat) -> Spinor {
        let mut out = Spinor::zero(&self.sig, &self.g);
        for (b, w) in self.comps.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let w = match alpha {
                Some(a) => a.wedge(w),
                None => w.clone(),
            };
            if w.is_zero() {
                continue;
            }
            for (a, row) in m.iter().enumerate() {
                if !row[b].is_zero() {
                    out.comps[a].add_assign_ref(&w.scale(&row[b]));
                }
            }
        }
        out
    }

    /// Clifford action of a `𝔤`-valued function: `ω ⊗ s ↦ (−1)^{|ω|} ω ⊗ r·s`.
    pub fn gamma_algebra(&self, r: &[TrigScalar]) -> Spinor {
        let md = module(&self.g);
        let graded = self.graded();
        let mut out = Spinor::zero(&self.sig, &self.g);
        for (k, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&graded.fock_apply(md.gamma_basis(k)).mul_scalar(c));
        }
        out
    }

    /// `γ_{ξ + r + X}(ω ⊗ s) = (i_X ω + ξ ∧ ω) ⊗ s + (−1)^{|ω|} ω ⊗ r·s`.
    pub fn gamma(&self, u: &Section) -> Spinor {
        let forms = self.map_forms(|w| w.interior(&u.x).add(&u.xi.wedge(w)));
        forms.add(&self.gamma_algebra(&u.r))
    }

    /// The canonical pairing `(−1)^{|s|(|ω|+|ω̃|)} (ωᵗ ∧ ω̃)_top ⟨s, s̃⟩`.
    pub fn pairing(&self, other: &Spinor) -> Form {
        let p = module(&self.g).pairing();
        let top = self.sig.num_gens() as u32;
        let mut out = Form::zero(&self.sig);
        for (a, w) in self.comps.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let wt = w.transpose();
            let sign = if self.fock_parity(a) * top % 2 == 0 { 1 } else { -1 };
            for (b, v) in other.comps.iter().enumerate() {
                if p[a][b].is_zero() || v.is_zero() {
                    continue;
                }
                let c = if sign > 0 { p[a][b].clone() } else { -p[a][b].clone() };
                out.add_assign_ref(&wt.wedge(v).top().scale(&c));
            }
        }
        out
    }

    /// Pullback along a fiber projection: coefficients are kept, generators renamed by name.
    pub fn embed(&self, target: &Sig) -> Result<Spinor, SpinorError> {
        let comps = self.comps.iter().map(|w| w.embed(target)).collect::<Result<Vec<_>, _>>()?;
        Ok(Spinor {
            sig: target.clone(),
            g: self.g.clone(),
            comps,
        })
    }

    /// Pushforward over the fibers of the given kind.
    ///
    /// The total space is oriented by the target's generators followed by the fibers,
    /// which is the orientation under which this is adjoint to [`Spinor::embed`].
    pub fn pushforward(&self, kind: FiberKind) -> Spinor {
        let r = self.sig.gens_of_kind(kind).len();
        let target = self.sig.without_kind(kind);
        let n = target.num_gens();
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(a, w)| {
                let f = w.fiber_integrate(kind);
                if pushforward_sign(r, n, self.fock_parity(a)) > 0 {
                    f
                } else {
                    f.neg()
                }
            })
            .collect();
        Spinor {
            sig: target,
            g: self.g.clone(),
            comps,
        }
    }

    pub fn to_entries(&self) -> Vec<SpinorEntry> {
        let mut out = Vec::new();
        for (a, w) in self.comps.iter().enumerate() {
            for (m, f) in w.terms() {
                out.push(SpinorEntry {
                    gens: exterior::bits(*m).map(|g| self.sig.gen_name(g)).collect(),
                    fock: (0..usize::BITS as usize).filter(|j| a >> j & 1 == 1).collect(),
                    coeff: f.clone(),
                });
            }
        }
        out
    }

    pub fn from_entries(sig: &Sig, g: &Arc<QuadraticLieAlgebra>, entries: &[SpinorEntry]) -> Result<Spinor, SpinorError> {
        let mut out = Spinor::zero(sig, g);
        let h = module(g).half_dim();
        for e in entries {
            let mut a = 0usize;
            for &j in &e.fock {
                if j >= h || a >> j & 1 == 1 {
                    return Err(SpinorError::Parse(format!("bad Fock slot {j}")));
                }
                a |= 1 << j;
            }
            let mut w = Form::scalar(sig, e.coeff.clone());
            for name in e.gens.iter().rev() {
                let gi = sig
                    .gen_index(name)
                    .ok_or_else(|| SpinorError::Parse(format!("unknown generator {name}")))?;
                w = Form::gen(sig, gi).wedge(&w);
            }
            if w.is_zero() && !e.coeff.is_zero() {
                return Err(SpinorError::Parse("repeated generator in a spinor term".into()));
            }
            out.comps[a].add_assign_ref(&w);
        }
        Ok(out)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, w) in self.comps.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({w})⊗|{a:b}⟩")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
