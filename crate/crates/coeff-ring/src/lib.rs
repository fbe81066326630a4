//! Exact scalar functions on a flat torus.
//!
//! A [`TrigScalar`] is a finite sum of `cos(2π k·x)` and `sin(2π k·x)` terms
//! whose coefficients are polynomials in a formal symbol `t` standing for 2π.
//! Derivatives therefore stay exact: differentiating multiplies by `t·k`.

mod poly;
mod trig;

#[cfg(feature = "sampling")]
pub mod sample;

use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use poly::{q, qi, TauPoly, Q};
pub use trig::{Mode, TrigScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffError {
    #[error("mean value has positive degree in t")]
    NonConstantTauContent,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Parses a rational such as `"-3/4"`.
pub fn parse_rational(s: &str) -> Result<Q, CoeffError> {
    Q::from_str(s.trim()).map_err(|_| CoeffError::Parse(format!("bad rational {s:?}")))
}

impl Serialize for TauPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TauPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ModeDoc {
    k: Vec<i32>,
    #[serde(default, skip_serializing_if = "TauPoly::is_zero")]
    cos: TauPoly,
    #[serde(default, skip_serializing_if = "TauPoly::is_zero")]
    sin: TauPoly,
}

#[derive(Serialize, Deserialize)]
struct TrigDoc {
    dim: usize,
    modes: Vec<ModeDoc>,
}

impl Serialize for TrigScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let modes = self
            .modes()
            .map(|(k, m)| ModeDoc {
                k: k.clone(),
                cos: m.cos.clone(),
                sin: m.sin.clone(),
            })
            .collect();
        TrigDoc { dim: self.dim(), modes }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TrigScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let doc = TrigDoc::deserialize(de)?;
        let mut out = TrigScalar::zero(doc.dim);
        for m in doc.modes {
            if m.k.len() != doc.dim {
                return Err(D::Error::custom(format!(
                    "frequency {:?} does not match dimension {}",
                    m.k, doc.dim
                )));
            }
            if m.k.iter().all(|&c| c == 0) && !m.sin.is_zero() {
                return Err(D::Error::custom("zero frequency cannot carry a sine coefficient"));
            }
            out.add_cos(&m.k, m.cos);
            out.add_sin(&m.k, m.sin);
        }
        Ok(out)
    }
}
