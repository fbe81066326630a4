//! JSON documents for Courant data, base data and isomorphisms.

use std::sync::Arc;

use coeff_ring::{parse_rational, TrigScalar, Q};
use exterior::{Form, FormDoc, Sig, Signature, SignatureDoc};
use qla::{QlaDoc, QuadraticLieAlgebra};
use serde::{Deserialize, Serialize};

use crate::build::BaseData;
use crate::data::CourantData;
use crate::gform::{EndForm, GForm};
use crate::iso::IsoData;
use crate::CourantError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CourantDataDoc {
    pub signature: SignatureDoc,
    pub algebra: QlaDoc,
    /// Full connection form `Ω`, row by row.
    pub connection: Vec<Vec<FormDoc>>,
    pub r: Vec<FormDoc>,
    pub h: FormDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BaseDataDoc {
    pub signature: SignatureDoc,
    pub algebra: QlaDoc,
    pub omega_b: Vec<Vec<FormDoc>>,
    pub r: Vec<Vec<TrigScalar>>,
    pub h3: FormDoc,
    pub h2: Vec<FormDoc>,
    /// Nonzero constants `c_ijs` with `i < j < s`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoDoc {
    pub beta: FormDoc,
    pub k: Vec<Vec<String>>,
    pub phi: Vec<FormDoc>,
}

fn rational(s: &str) -> Result<Q, CourantError> {
    parse_rational(s).map_err(|e| CourantError::Parse(e.to_string()))
}

impl CourantData {
    pub fn to_doc(&self) -> CourantDataDoc {
        CourantDataDoc {
            signature: self.sig().to_doc(),
            algebra: self.algebra().to_doc(),
            connection: self.connection().to_doc(),
            r: self.r().to_doc(),
            h: self.h().to_doc(),
        }
    }

    pub fn from_doc(doc: &CourantDataDoc) -> Result<Self, CourantError> {
        let sig = Signature::from_doc(&doc.signature)?;
        let g = Arc::new(QuadraticLieAlgebra::from_doc(&doc.algebra)?);
        let omega = EndForm::from_doc(&sig, &doc.connection)?;
        let r = GForm::from_doc(&sig, &doc.r)?;
        let h = Form::from_doc(&sig, &doc.h)?;
        Self::from_connection(&sig, g, omega, r, h)
    }
}

impl BaseData {
    pub fn to_doc(&self) -> BaseDataDoc {
        let mut c = Vec::new();
        if let Some(cs) = &self.c {
            let k = cs.len();
            for i in 0..k {
                for j in i + 1..k {
                    for s in j + 1..k {
                        if cs[i][j][s] != Q::from_integer(0.into()) {
                            c.push((i, j, s, cs[i][j][s].to_string()));
                        }
                    }
                }
            }
        }
        BaseDataDoc {
            signature: self.sig.to_doc(),
            algebra: self.g.to_doc(),
            omega_b: self.omega_b.to_doc(),
            r: self.r.clone(),
            h3: self.h3.to_doc(),
            h2: self.h2.iter().map(Form::to_doc).collect(),
            c,
        }
    }

    pub fn from_doc(doc: &BaseDataDoc) -> Result<Self, CourantError> {
        let sig = Signature::from_doc(&doc.signature)?;
        let g = Arc::new(QuadraticLieAlgebra::from_doc(&doc.algebra)?);
        let k = sig.num_fibers();
        let n = g.dim();
        let c = if doc.c.is_empty() {
            None
        } else {
            let mut cs = vec![vec![vec![Q::from_integer(0.into()); k]; k]; k];
            for (i, j, s, v) in &doc.c {
                if !(i < j && j < s && *s < k) {
                    return Err(CourantError::Parse(format!("bad constant index ({i},{j},{s})")));
                }
                let v = rational(v)?;
                for (a, b, d, sign) in [
                    (i, j, s, 1),
                    (j, s, i, 1),
                    (s, i, j, 1),
                    (j, i, s, -1),
                    (i, s, j, -1),
                    (s, j, i, -1),
                ] {
                    cs[*a][*b][*d] = if sign > 0 { v.clone() } else { -v.clone() };
                }
            }
            Some(cs)
        };
        for r in &doc.r {
            if r.len() != n || r.iter().any(|f| !f.is_zero() && f.dim() != sig.base_dim()) {
                return Err(CourantError::Parse("section components do not match the algebra or base".into()));
            }
        }
        let r = doc
            .r
            .iter()
            .map(|r| {
                r.iter()
                    .map(|f| if f.is_zero() { TrigScalar::zero(sig.base_dim()) } else { f.clone() })
                    .collect()
            })
            .collect();
        Ok(BaseData {
            omega_b: EndForm::from_doc(&sig, &doc.omega_b)?,
            r,
            h3: Form::from_doc(&sig, &doc.h3)?,
            h2: doc.h2.iter().map(|d| Form::from_doc(&sig, d)).collect::<Result<_, _>>()?,
            c,
            sig,
            g,
        })
    }
}

impl IsoData {
    pub fn to_doc(&self) -> IsoDoc {
        IsoDoc {
            beta: self.beta.to_doc(),
            k: self.k.iter().map(|r| r.iter().map(Q::to_string).collect()).collect(),
            phi: self.phi.to_doc(),
        }
    }

    pub fn from_doc(sig: &Sig, g: &QuadraticLieAlgebra, doc: &IsoDoc) -> Result<Self, CourantError> {
        let k = doc
            .k
            .iter()
            .map(|r| r.iter().map(|s| rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let beta = Form::from_doc(sig, &doc.beta)?;
        let phi = GForm::from_doc(sig, &doc.phi)?;
        IsoData::new(g, beta, k, phi)
    }
}
