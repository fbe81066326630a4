use courant::BaseData;
use exterior::{bits, Form, Sig};

use crate::TdualError;

/// A dual curvature `𝒦_i = H₂^i + 2⟨𝔯, r_i⟩ − Σ_j ⟨r_i, r_j⟩ F_j` with its checks.
#[derive(Clone, Debug, PartialEq)]
pub struct KForm {
    pub form: Form,
    /// `d𝒦_i`, zero when the form is closed.
    pub differential: Form,
    /// Generator words whose mean coefficient is not an integer, with that coefficient.
    pub non_integral: Vec<(String, String)>,
}

impl KForm {
    pub fn is_closed(&self) -> bool {
        self.differential.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.non_integral.is_empty()
    }
}

fn word(sig: &Sig, mask: u64) -> String {
    bits(mask).map(|g| sig.gen_name(g)).collect::<Vec<_>>().join("∧")
}

/// The mean coefficients of a basic 2-form that fail to be integers.
fn non_integral(form: &Form) -> Vec<(String, String)> {
    let sig = form.sig();
    form.terms()
        .iter()
        .filter_map(|(m, f)| {
            let bad = match f.harmonic_part() {
                Ok(q) if q.is_integer() => return None,
                Ok(q) => q.to_string(),
                Err(_) => f.to_string(),
            };
            Some((word(sig, *m), bad))
        })
        .collect()
}

/// Computes every `𝒦_i` together with its closedness and integrality.
pub fn compute_k_forms(base: &BaseData) -> Result<Vec<KForm>, TdualError> {
    let frak_r = base.inner_curvature()?;
    Ok(base
        .k_forms(&frak_r)
        .into_iter()
        .map(|form| KForm {
            differential: form.d(),
            non_integral: non_integral(&form),
            form,
        })
        .collect())
}

/// Fails on the first `𝒦_i` that is not closed or not integral.
pub fn require_integral(ks: &[KForm]) -> Result<(), TdualError> {
    for (index, k) in ks.iter().enumerate() {
        if !k.is_closed() {
            return Err(TdualError::NotClosed {
                index: index + 1,
                residual: k.differential.to_string(),
            });
        }
        if !k.is_integral() {
            return Err(TdualError::NotIntegral {
                index: index + 1,
                coefficients: k.non_integral.clone(),
            });
        }
    }
    Ok(())
}
