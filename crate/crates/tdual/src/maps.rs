use coeff_ring::TrigScalar;
use courant::{GForm, Report, ResidualValue, Section};
use exterior::{same_sig, FiberKind, Sig, VectorField};
use qla::linalg;
use spinor::{spin_lift, spinor_action, DiracOperator, SpinLift, Spinor};

use crate::package::DualityPackage;
use crate::{par, TdualError};

/// The maps induced by a duality package, with the spin lift and Dirac operators precomputed.
#[derive(Clone, Debug)]
pub struct Duality {
    pkg: DualityPackage,
    lift: SpinLift,
    source_dirac: DiracOperator,
    dual_dirac: DiracOperator,
}

impl Duality {
    pub fn new(pkg: DualityPackage) -> Result<Self, TdualError> {
        let lift = spin_lift(pkg.source.algebra(), &pkg.f)?;
        let source_dirac = DiracOperator::new(&pkg.source);
        let dual_dirac = DiracOperator::new(&pkg.dual);
        Ok(Self {
            pkg,
            lift,
            source_dirac,
            dual_dirac,
        })
    }

    pub fn package(&self) -> &DualityPackage {
        &self.pkg
    }

    pub fn source_dirac(&self) -> &DiracOperator {
        &self.source_dirac
    }

    pub fn dual_dirac(&self) -> &DiracOperator {
        &self.dual_dirac
    }

    /// `τ(s) = p̃_*(F_𝕊(p*s))` for a spinor invariant under the torus action.
    pub fn tau(&self, s: &Spinor) -> Result<Spinor, TdualError> {
        let source = &self.pkg.source;
        if !same_sig(s.sig(), source.sig()) {
            return Err(TdualError::Unsupported("the spinor lives on a different bundle".into()));
        }
        let invariant = (0..source.sig().num_fibers()).all(|a| spinor_action(source, a, s).is_zero());
        if !invariant {
            return Err(TdualError::NotInvariantInput);
        }
        let up = s.embed(&self.pkg.correspondence)?;
        let pushed = self.lift.apply(&up).pushforward(FiberKind::Theta);
        Ok(pushed.embed(self.pkg.dual.sig())?)
    }

    /// [`Duality::tau`] over many spinors, in parallel when available.
    pub fn tau_all(&self, spinors: &[Spinor]) -> Vec<Result<Spinor, TdualError>> {
        par::map(spinors, |s| self.tau(s))
    }

    /// The section `ũ` of the dual algebroid whose pullback is `F(p*u + Y)` for the
    /// unique vertical `Y` along the dual fibers that makes the image basic.
    pub fn rho(&self, u: &Section) -> Result<Section, TdualError> {
        let pkg = &self.pkg;
        let g = pkg.source.algebra();
        let n = &pkg.correspondence;
        let dim = n.base_dim();
        let k = pkg.num_fibers();
        let alg = g.dim();
        let base = pkg.f.apply(g, &u.embed(n)?);
        let cols: Vec<Section> = (0..k)
            .map(|j| pkg.f.apply(g, &Section::vector(VectorField::frame(n, pkg.theta_tilde(j)), alg)))
            .collect();
        let theta_coeff = |s: &Section, i: usize| s.xi.interior_gen(pkg.theta(i)).scalar_part();
        let a = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| theta_coeff(&cols[j], i).as_rational().ok_or(TdualError::SingularSystem))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let a_inv = linalg::inverse(&a).ok_or(TdualError::SingularSystem)?;
        let mut out = base.clone();
        for (j, col) in cols.iter().enumerate() {
            let mut c = TrigScalar::zero(dim);
            for i in 0..k {
                c.sub_assign_ref(&theta_coeff(&base, i).scale(&a_inv[j][i]));
            }
            out = out.add(&col.mul_scalar(&c));
        }
        let dual_sig = pkg.dual.sig();
        Ok(Section {
            xi: out.xi.restrict(dual_sig)?,
            r: out.r,
            x: push_vector(&out.x, dual_sig)?,
        })
    }

    /// Residuals of `τ ∘ đ = đ̃ ∘ τ` on `s` and of `τ ∘ γ_u = γ_{ρ(u)} ∘ τ` on `s`.
    pub fn intertwining(&self, s: &Spinor, u: &Section) -> Result<Report, TdualError> {
        let ts = self.tau(s)?;
        let mut rep = Report::new();
        let dirac = self.tau(&self.source_dirac.apply(s))?.sub(&self.dual_dirac.apply(&ts));
        rep.push("dirac", ResidualValue::GForm(components(&dirac)));
        let clifford = self.tau(&s.gamma(u))?.sub(&ts.gamma(&self.rho(u)?));
        rep.push("clifford", ResidualValue::GForm(components(&clifford)));
        Ok(rep)
    }
}

/// The Fock components of a spinor, packed as a vector of forms for reporting.
fn components(s: &Spinor) -> GForm {
    GForm::from_comps(s.sig(), s.comps().to_vec())
}

/// Pushes a vector field forward along the projection forgetting the original fibers.
fn push_vector(x: &VectorField, target: &Sig) -> Result<VectorField, TdualError> {
    let sig = x.sig();
    let original = sig.gens_of_kind(FiberKind::Theta);
    let mut comps = vec![TrigScalar::zero(target.base_dim()); target.num_gens()];
    for (g, c) in x.comps().iter().enumerate() {
        if c.is_zero() || original.contains(&g) {
            continue;
        }
        let name = sig.gen_name(g);
        let t = target.gen_index(&name).ok_or(exterior::ExteriorError::UnknownGenerator(name))?;
        comps[t] = c.clone();
    }
    Ok(VectorField::from_comps(target, comps))
}

/// `τ(s)` for a single spinor.
pub fn tau(pkg: &DualityPackage, s: &Spinor) -> Result<Spinor, TdualError> {
    Duality::new(pkg.clone())?.tau(s)
}

/// `ρ(u)` for a single section.
pub fn rho(pkg: &DualityPackage, u: &Section) -> Result<Section, TdualError> {
    Duality::new(pkg.clone())?.rho(u)
}
