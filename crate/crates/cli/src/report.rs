use coeff_ring::{TauPoly, TrigScalar};
use courant::{Report, ResidualValue};
use exterior::Form;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Machine-readable summary of one command run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    /// `sha256:<hex>` of the input bytes.
    pub input_digest: String,
    pub residuals: Vec<ResidualEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<NamedValue>,
    pub timings: Vec<Timing>,
    pub exit_status: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// The command's output document when no `--output` file was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artifact: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResidualEntry {
    pub name: String,
    pub is_zero: bool,
    /// The exact value.
    pub value: String,
    /// An upper bound for the absolute value of the residual, for human reading only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub phase: String,
    pub micros: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Sum of the absolute values of all Fourier coefficients, with `τ = 2π`.
fn scalar_bound(f: &TrigScalar) -> f64 {
    f.modes().map(|(_, m)| m.cos.eval_f64().abs() + m.sin.eval_f64().abs()).sum()
}

fn form_bound(w: &Form) -> f64 {
    w.terms().values().map(scalar_bound).sum()
}

fn value_bound(v: &ResidualValue) -> f64 {
    match v {
        ResidualValue::Number(q) => TauPoly::constant(q.clone()).eval_f64().abs(),
        ResidualValue::Scalar(f) => scalar_bound(f),
        ResidualValue::Form(w) => form_bound(w),
        ResidualValue::GForm(a) => a.comps().iter().map(form_bound).sum(),
        ResidualValue::End(e) => e.entries().iter().flatten().map(form_bound).sum(),
        ResidualValue::Scalars(v) => v.iter().map(scalar_bound).sum(),
    }
}

/// Converts a residual report, optionally attaching decimal bounds.
pub fn entries(rep: &Report, float: bool) -> Vec<ResidualEntry> {
    rep.residuals
        .iter()
        .map(|r| ResidualEntry {
            name: r.name.clone(),
            is_zero: r.is_zero(),
            value: r.value.to_string(),
            float: float.then(|| value_bound(&r.value)),
        })
        .collect()
}
