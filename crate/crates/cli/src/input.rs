//! JSON shapes accepted by the commands.

use coeff_ring::TrigScalar;
use courant::{BaseData, BaseDataDoc, CourantData, CourantDataDoc, Section};
use exterior::{Form, FormDoc, Sig, VectorField};
use serde::{Deserialize, Serialize};
use spinor::{Spinor, SpinorEntry};
use tdual::DualityPackageDoc;

use crate::Failure;

/// Either base data, which is built first, or complete Courant data.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataDoc {
    Base(BaseDataDoc),
    Data(CourantDataDoc),
}

impl DataDoc {
    pub fn load(&self) -> Result<CourantData, Failure> {
        match self {
            Self::Base(doc) => Ok(BaseData::from_doc(doc).map_err(Failure::parse)?.build()?),
            Self::Data(doc) => CourantData::from_doc(doc).map_err(Failure::parse),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualizeInput {
    #[serde(flatten)]
    pub base: BaseDataDoc,
    /// The sections `r̃_i`, zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_tilde: Option<Vec<Vec<TrigScalar>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiracInput {
    pub data: DataDoc,
    pub spinor: Vec<SpinorEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TauInput {
    pub package: DualityPackageDoc,
    pub spinor: Vec<SpinorEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoInput {
    pub package: DualityPackageDoc,
    pub section: SectionDoc,
}

/// An invariant section `ξ + r + X`; the vector field lists its nonzero components by generator name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionDoc {
    pub xi: FormDoc,
    pub r: Vec<TrigScalar>,
    pub x: Vec<(String, TrigScalar)>,
}

impl SectionDoc {
    pub fn from_section(u: &Section) -> Self {
        let sig = u.sig();
        Self {
            xi: u.xi.to_doc(),
            r: u.r.clone(),
            x: u
                .x
                .comps()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(g, c)| (sig.gen_name(g), c.clone()))
                .collect(),
        }
    }

    pub fn to_section(&self, sig: &Sig, n: usize) -> Result<Section, Failure> {
        if self.r.len() != n {
            return Err(Failure::Parse(format!("expected {n} algebra components, got {}", self.r.len())));
        }
        let mut x = VectorField::zero(sig);
        for (name, c) in &self.x {
            let g = sig
                .gen_index(name)
                .ok_or_else(|| Failure::Parse(format!("unknown generator {name}")))?;
            x.set_comp(g, c.clone());
        }
        Ok(Section {
            xi: Form::from_doc(sig, &self.xi).map_err(Failure::parse)?,
            r: self.r.clone(),
            x,
        })
    }
}

/// A spinor on the invariant complex of `data`.
pub fn spinor_from(data: &CourantData, entries: &[SpinorEntry]) -> Result<Spinor, Failure> {
    Spinor::from_entries(data.sig(), data.algebra(), entries).map_err(Failure::parse)
}
