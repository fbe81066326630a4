use coeff_ring::TrigScalar;
use courant::{pair_wedge, Report, ResidualValue};
use exterior::{Form, VectorField};

use crate::package::DualityPackage;
use crate::{par, TdualError};

/// Residuals of the duality relations together with the pairing of the two fiber directions.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub residuals: Report,
    /// `M_ab = β(X̃_a, X_b) − ⟨Φ(X̃_a), Φ(X_b)⟩`.
    pub pairing_matrix: Vec<Vec<TrigScalar>>,
    pub determinant: TrigScalar,
}

impl DualityReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.all_zero()
    }
}

/// The form whose coefficients are the constant parts of those of `form`.
/// Coefficients whose constant part carries `τ` are kept whole.
fn harmonic(form: &Form) -> Form {
    let dim = form.sig().base_dim();
    let mut out = Form::zero(form.sig());
    for (m, f) in form.terms() {
        match f.harmonic_part() {
            Ok(c) => out.add_term(*m, TrigScalar::constant(dim, c)),
            Err(_) => out.add_term(*m, f.clone()),
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub(crate) fn determinant(m: &[Vec<TrigScalar>], dim: usize) -> TrigScalar {
    match m.len() {
        0 => TrigScalar::one(dim),
        1 => m[0][0].clone(),
        n => {
            let mut out = TrigScalar::zero(dim);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<TrigScalar>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&determinant(&minor, dim));
                if j % 2 == 0 {
                    out.add_assign_ref(&term);
                } else {
                    out.sub_assign_ref(&term);
                }
            }
            out
        }
    }
}

/// The pairing between the dual and the original fiber directions induced by `F`.
pub(crate) fn pairing_matrix(pkg: &DualityPackage) -> Vec<Vec<TrigScalar>> {
    let n = &pkg.correspondence;
    let g = pkg.source.algebra();
    let k = pkg.num_fibers();
    let frame = |gen: usize| VectorField::frame(n, gen);
    let phi: Vec<Vec<TrigScalar>> = (0..k).map(|b| pkg.f.phi_of(&frame(pkg.theta(b)))).collect();
    (0..k)
        .map(|a| {
            let xa = frame(pkg.theta_tilde(a));
            let phi_a = pkg.f.phi_of(&xa);
            (0..k)
                .map(|b| {
                    let xb = frame(pkg.theta(b));
                    pkg.f.beta.eval2(&xa, &xb).sub(&courant::pair_scalars(g, &phi_a, &phi[b]))
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Copy)]
enum Check {
    Transport,
    Classes,
}

/// Checks that `F` carries the pulled-back source data to the pulled-back dual data,
/// that the characteristic classes match, and that the fiber pairing is unimodular.
///
/// The residuals are `connection`, `curvature` and `flux` for the three components
/// of the transported data, `characteristic-classes` for the harmonic part of
/// `Σ F_i ∧ 𝒦_i − ⟨𝔯 ∧ 𝔯⟩`, and `nondegeneracy` for `det M − 1`.
pub fn verify_duality(pkg: &DualityPackage) -> Result<DualityReport, TdualError> {
    let n = &pkg.correspondence;
    let g = pkg.source.algebra();
    let dim = n.base_dim();
    let parts = par::map(&[Check::Transport, Check::Classes], |c| -> Result<Report, TdualError> {
        let mut rep = Report::new();
        match c {
            Check::Transport => {
                let moved = pkg.f.transport(&pkg.source.embed(n)?)?;
                let target = pkg.dual.embed(n)?;
                let conn = moved.connection().sub(target.connection());
                rep.push("connection", ResidualValue::End(conn));
                rep.push("curvature", ResidualValue::GForm(moved.r().sub(target.r())));
                rep.push("flux", ResidualValue::Form(moved.h().sub(target.h())));
            }
            Check::Classes => {
                let frak_r = pkg.frak_r.embed(n)?;
                let mut e = pair_wedge(g, &frak_r, &frak_r).neg();
                for (f, kf) in pkg.f_forms().iter().zip(pkg.k_forms()) {
                    e.add_assign_ref(&f.wedge(&kf));
                }
                rep.push("characteristic-classes", ResidualValue::Form(harmonic(&e)));
            }
        }
        Ok(rep)
    });
    let mut residuals = Report::new();
    for p in parts {
        residuals.extend(p?);
    }
    let pairing_matrix = pairing_matrix(pkg);
    let det = determinant(&pairing_matrix, dim);
    residuals.push("nondegeneracy", ResidualValue::Scalar(det.sub(&TrigScalar::one(dim))));
    Ok(DualityReport {
        residuals,
        pairing_matrix,
        determinant: det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualize;
    use coeff_ring::qi;
    use courant::examples::{exact_flux, heisenberg, trivial};

    #[test]
    fn determinant_of_small_matrices() {
        let c = |n: i64| TrigScalar::constant(1, qi(n));
        let m = vec![vec![c(2), c(1), c(0)], vec![c(1), c(3), c(1)], vec![c(0), c(1), c(4)]];
        assert_eq!(determinant(&m, 1), c(18));
        assert_eq!(determinant(&[], 1), c(1));
    }

    #[test]
    fn circle_examples_verify() {
        for base in [trivial(), exact_flux(2), heisenberg(3)] {
            let rep = verify_duality(&dualize(&base, None).unwrap()).unwrap();
            assert!(rep.all_zero(), "{}", rep.residuals);
            assert_eq!(rep.determinant, TrigScalar::one(2));
        }
    }

    #[test]
    fn dropping_the_identity_part_of_beta_is_detected() {
        let mut pkg = dualize(&exact_flux(1), None).unwrap();
        pkg.f.beta = Form::zero(&pkg.correspondence);
        let rep = verify_duality(&pkg).unwrap();
        assert!(rep.determinant.is_zero());
        assert_eq!(rep.residuals.nonzero(), vec!["flux", "nondegeneracy"]);
    }
}
