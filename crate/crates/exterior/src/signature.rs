use std::collections::BTreeMap;
use std::sync::Arc;

use coeff_ring::TrigScalar;
use serde::{Deserialize, Serialize};

use crate::form::{Form, FormDoc};
use crate::ExteriorError;

/// Whether a fiber generator belongs to the original torus or to the dual one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FiberKind {
    Theta,
    ThetaTilde,
}

/// One connection-form generator together with its curvature, a closed basic 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberGen {
    pub name: String,
    pub kind: FiberKind,
    /// Curvature terms keyed by base-generator bitmask (bits `< base_dim` only).
    pub curvature: BTreeMap<u64, TrigScalar>,
}

/// The generators of an invariant complex: `dx_1..dx_m` followed by fiber generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    base_dim: usize,
    fibers: Vec<FiberGen>,
}

pub type Sig = Arc<Signature>;

impl Signature {
    /// A complex with no fiber generators.
    pub fn base(base_dim: usize) -> Sig {
        Arc::new(Self {
            base_dim,
            fibers: Vec::new(),
        })
    }

    pub fn new(base_dim: usize, fibers: Vec<FiberGen>) -> Result<Sig, ExteriorError> {
        if base_dim + fibers.len() > 64 {
            return Err(ExteriorError::TooManyGenerators);
        }
        let sig = Self { base_dim, fibers };
        let base = Self::base(base_dim);
        let mut names: Vec<String> = (0..sig.num_gens()).map(|i| sig.gen_name(i)).collect();
        names.sort();
        names.dedup();
        if names.len() != sig.num_gens() {
            return Err(ExteriorError::DuplicateGenerator);
        }
        for g in &sig.fibers {
            if g.curvature.keys().any(|&m| m >> base_dim != 0) {
                return Err(ExteriorError::CurvatureNotBasic(g.name.clone()));
            }
            if g.curvature.keys().any(|m| m.count_ones() != 2) {
                return Err(ExteriorError::CurvatureDegree(g.name.clone()));
            }
            if !Form::from_terms(&base, g.curvature.clone()).d().is_zero() {
                return Err(ExteriorError::CurvatureNotClosed(g.name.clone()));
            }
        }
        Ok(Arc::new(sig))
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fibers(&self) -> &[FiberGen] {
        &self.fibers
    }

    pub fn num_fibers(&self) -> usize {
        self.fibers.len()
    }

    pub fn num_gens(&self) -> usize {
        self.base_dim + self.fibers.len()
    }

    /// Generator index of fiber `i`.
    pub fn fiber_gen(&self, i: usize) -> usize {
        self.base_dim + i
    }

    pub fn gen_name(&self, g: usize) -> String {
        if g < self.base_dim {
            format!("dx{}", g + 1)
        } else {
            self.fibers[g - self.base_dim].name.clone()
        }
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        if let Some(rest) = name.strip_prefix("dx") {
            if let Ok(a) = rest.parse::<usize>() {
                if (1..=self.base_dim).contains(&a) {
                    return Some(a - 1);
                }
            }
        }
        self.fibers
            .iter()
            .position(|f| f.name == name)
            .map(|i| i + self.base_dim)
    }

    /// Generator indices of the fibers of the given kind.
    pub fn gens_of_kind(&self, kind: FiberKind) -> Vec<usize> {
        (0..self.fibers.len())
            .filter(|&i| self.fibers[i].kind == kind)
            .map(|i| i + self.base_dim)
            .collect()
    }

    pub fn base_mask(&self) -> u64 {
        (1u64 << self.base_dim) - 1
    }

    pub fn full_mask(&self) -> u64 {
        if self.num_gens() == 64 {
            u64::MAX
        } else {
            (1u64 << self.num_gens()) - 1
        }
    }

    /// The signature obtained by deleting every fiber of `kind`.
    pub fn without_kind(&self, kind: FiberKind) -> Sig {
        Arc::new(Self {
            base_dim: self.base_dim,
            fibers: self.fibers.iter().filter(|f| f.kind != kind).cloned().collect(),
        })
    }

    /// Appends fibers to a copy of this signature.
    pub fn extended(&self, extra: Vec<FiberGen>) -> Result<Sig, ExteriorError> {
        let mut fibers = self.fibers.clone();
        fibers.extend(extra);
        Self::new(self.base_dim, fibers)
    }

    /// Curvature of fiber generator `g` as a form on `sig`.
    pub fn curvature_form(sig: &Sig, g: usize) -> Form {
        Form::from_terms(sig, sig.fibers[g - sig.base_dim].curvature.clone())
    }

    pub fn to_doc(&self) -> SignatureDoc {
        let base = Self::base(self.base_dim);
        SignatureDoc {
            base_dim: self.base_dim,
            fibers: self
                .fibers
                .iter()
                .map(|f| FiberDoc {
                    name: f.name.clone(),
                    kind: f.kind,
                    curvature: Form::from_terms(&base, f.curvature.clone()).to_doc(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SignatureDoc) -> Result<Sig, ExteriorError> {
        let base = Self::base(doc.base_dim);
        let mut fibers = Vec::new();
        for f in &doc.fibers {
            let curv = Form::from_doc(&base, &f.curvature)?;
            fibers.push(FiberGen {
                name: f.name.clone(),
                kind: f.kind,
                curvature: curv.terms().clone(),
            });
        }
        Self::new(doc.base_dim, fibers)
    }
}

/// JSON shape of a signature.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignatureDoc {
    pub base_dim: usize,
    pub fibers: Vec<FiberDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiberDoc {
    pub name: String,
    pub kind: FiberKind,
    pub curvature: FormDoc,
}

/// Builder for the common shape "torus base with named fibers".
pub fn fiber(name: &str, kind: FiberKind, curvature: &[(u64, TrigScalar)]) -> FiberGen {
    let mut map = BTreeMap::new();
    for (m, c) in curvature {
        if !c.is_zero() {
            map.insert(*m, c.clone());
        }
    }
    FiberGen {
        name: name.to_string(),
        kind,
        curvature: map,
    }
}
