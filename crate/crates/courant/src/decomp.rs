use std::collections::BTreeMap;
use std::sync::Arc;

use coeff_ring::q;
use exterior::{Form, Sig, Signature};
use qla::QuadraticLieAlgebra;

use crate::data::CourantData;
use crate::gform::{pair_wedge, EndForm, GForm};
use crate::report::{Report, ResidualValue};

/// The splitting of `H`, `R` and `∇` by degree in the fiber generators.
///
/// With summation over all indices and upper indices antisymmetric,
/// `H = H₃ + θ_i∧H₂^i + θ_iθ_j∧H₁^{ij} + θ_iθ_jθ_s H₀^{ijs}`,
/// `R = R₂ + θ_i∧R₁^i + θ_iθ_j R₀^{ij}` and `∇ = d + ω^B − Σ θ_i ⊗ A_i`.
/// All pieces are basic forms on the same complex as the data.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompRecord {
    pub sig: Sig,
    pub g: Arc<QuadraticLieAlgebra>,
    pub h3: Form,
    pub h2: Vec<Form>,
    pub h1: Vec<Vec<Form>>,
    pub h0: Vec<Vec<Vec<Form>>>,
    pub r2: GForm,
    pub r1: Vec<GForm>,
    pub r0: Vec<Vec<GForm>>,
    pub omega_b: EndForm,
    pub actions: Vec<EndForm>,
}

/// Sign of the permutation sorting three distinct indices, with the sorted triple.
fn sort3(i: usize, j: usize, s: usize) -> ((usize, usize, usize), i32) {
    let mut v = [i, j, s];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    ((v[0], v[1], v[2]), sign)
}

impl DecompRecord {
    /// An all-zero record.
    pub fn zero(sig: &Sig, g: Arc<QuadraticLieAlgebra>) -> Self {
        let k = sig.num_fibers();
        let n = g.dim();
        let z = Form::zero(sig);
        let zg = GForm::zero(sig, n);
        Self {
            sig: sig.clone(),
            h3: z.clone(),
            h2: vec![z.clone(); k],
            h1: vec![vec![z.clone(); k]; k],
            h0: vec![vec![vec![z; k]; k]; k],
            r2: zg.clone(),
            r1: vec![zg.clone(); k],
            r0: vec![vec![zg; k]; k],
            omega_b: EndForm::zero(sig, n),
            actions: vec![EndForm::zero(sig, n); k],
            g,
        }
    }

    pub fn num_fibers(&self) -> usize {
        self.sig.num_fibers()
    }

    fn theta(&self, i: usize) -> Form {
        Form::gen(&self.sig, self.sig.fiber_gen(i))
    }

    fn curvature(&self, i: usize) -> Form {
        Signature::curvature_form(&self.sig, self.sig.fiber_gen(i))
    }

    /// Sets `H₁^{ij} = f` and `H₁^{ji} = −f`.
    pub fn set_h1(&mut self, i: usize, j: usize, f: Form) {
        self.h1[j][i] = f.neg();
        self.h1[i][j] = f;
    }

    /// Sets `H₀` on every permutation of `(i, j, s)` with the matching sign.
    pub fn set_h0(&mut self, i: usize, j: usize, s: usize, f: Form) {
        for (a, b, c) in [(i, j, s), (j, s, i), (s, i, j), (j, i, s), (i, s, j), (s, j, i)] {
            let (_, sign) = sort3(a, b, c);
            let (_, base) = sort3(i, j, s);
            self.h0[a][b][c] = if sign == base { f.clone() } else { f.neg() };
        }
    }

    /// Sets `R₀^{ij} = v` and `R₀^{ji} = −v`.
    pub fn set_r0(&mut self, i: usize, j: usize, v: GForm) {
        self.r0[j][i] = v.neg();
        self.r0[i][j] = v;
    }

    pub fn from_data(data: &CourantData) -> Self {
        let sig = data.sig().clone();
        let k = sig.num_fibers();
        let m = sig.base_dim();
        let bit = |i: usize| 1u64 << (m + i);
        let mut rec = Self::zero(&sig, Arc::clone(data.algebra()));
        let hs = data.h().split_fibers();
        let get = |map: &BTreeMap<u64, Form>, t: u64| map.get(&t).cloned().unwrap_or_else(|| Form::zero(&sig));
        rec.h3 = get(&hs, 0);
        for i in 0..k {
            rec.h2[i] = get(&hs, bit(i));
            for j in i + 1..k {
                rec.set_h1(i, j, get(&hs, bit(i) | bit(j)).scale(&q(1, 2)));
                for s in j + 1..k {
                    rec.set_h0(i, j, s, get(&hs, bit(i) | bit(j) | bit(s)).scale(&q(1, 6)));
                }
            }
        }
        rec.r2 = data.r().fiber_split(0);
        for i in 0..k {
            rec.r1[i] = data.r().fiber_split(bit(i));
            for j in i + 1..k {
                rec.set_r0(i, j, data.r().fiber_split(bit(i) | bit(j)).scale(&q(1, 2)));
            }
        }
        rec.omega_b = data.omega_b();
        rec.actions = (0..k).map(|i| data.action(i)).collect();
        rec
    }

    /// Reassembles `(H, R)` from the pieces.
    pub fn assemble(&self) -> (Form, GForm) {
        let k = self.num_fibers();
        let mut h = self.h3.clone();
        let mut r = self.r2.clone();
        for i in 0..k {
            let ti = self.theta(i);
            h.add_assign_ref(&ti.wedge(&self.h2[i]));
            r = r.add(&self.r1[i].wedge_left(&ti));
            for j in 0..k {
                let tij = ti.wedge(&self.theta(j));
                h.add_assign_ref(&tij.wedge(&self.h1[i][j]));
                r = r.add(&self.r0[i][j].wedge_left(&tij));
                for s in 0..k {
                    h.add_assign_ref(&tij.wedge(&self.theta(s)).wedge(&self.h0[i][j][s]));
                }
            }
        }
        (h, r)
    }

    /// The connection `ω^B − Σ θ_i ⊗ A_i`.
    pub fn connection(&self) -> EndForm {
        let mut omega = self.omega_b.clone();
        for (i, a) in self.actions.iter().enumerate() {
            omega = omega.sub(&a.wedge_left(&self.theta(i)));
        }
        omega
    }

    /// `d^θ α = dα + ω^B ∧ α`.
    fn d_theta(&self, a: &GForm) -> GForm {
        a.d().add(&self.omega_b.apply(a))
    }

    /// Residuals of the twelve structure equations satisfied by the pieces of
    /// compatible invariant data, each slot named after what it constrains.
    pub fn check_equations(&self) -> Report {
        let g = &self.g;
        let k = self.num_fibers();
        let two = q(2, 1);
        let three = q(3, 1);
        let f: Vec<Form> = (0..k).map(|i| self.curvature(i)).collect();
        let mut rep = Report::new();

        let mut e0 = self.h3.d().sub(&pair_wedge(g, &self.r2, &self.r2));
        for i in 0..k {
            e0.add_assign_ref(&self.h2[i].wedge(&f[i]));
        }
        rep.push("h3-closure", ResidualValue::Form(e0));

        for p in 0..k {
            let mut e = self.h2[p].d().add(&pair_wedge(g, &self.r2, &self.r1[p]).scale(&two));
            for i in 0..k {
                e.add_assign_ref(&self.h1[p][i].wedge(&f[i]).scale(&two));
            }
            rep.push(format!("h2-derivative[{}]", p + 1), ResidualValue::Form(e));
        }

        for p in 0..k {
            for qq in p + 1..k {
                let mut e = self.h1[p][qq]
                    .d()
                    .sub(&pair_wedge(g, &self.r0[p][qq], &self.r2).scale(&two))
                    .add(&pair_wedge(g, &self.r1[p], &self.r1[qq]));
                for i in 0..k {
                    e.add_assign_ref(&self.h0[i][p][qq].wedge(&f[i]).scale(&three));
                }
                rep.push(format!("h1-derivative[{},{}]", p + 1, qq + 1), ResidualValue::Form(e));
            }
        }

        for p in 0..k {
            for qq in p + 1..k {
                for s in qq + 1..k {
                    let cyc = pair_wedge(g, &self.r0[p][qq], &self.r1[s])
                        .add(&pair_wedge(g, &self.r0[s][p], &self.r1[qq]))
                        .add(&pair_wedge(g, &self.r0[qq][s], &self.r1[p]));
                    let e = self.h0[p][qq][s].d().scale(&three).add(&cyc.scale(&two));
                    rep.push(
                        format!("h0-derivative[{},{},{}]", p + 1, qq + 1, s + 1),
                        ResidualValue::Form(e),
                    );
                }
            }
        }

        let mut e4 = Form::zero(&self.sig);
        for i in 0..k {
            for j in 0..k {
                for p in 0..k {
                    for qq in 0..k {
                        let c = pair_wedge(g, &self.r0[i][j], &self.r0[p][qq]);
                        if c.is_zero() {
                            continue;
                        }
                        let t = self
                            .theta(i)
                            .wedge(&self.theta(j))
                            .wedge(&self.theta(p))
                            .wedge(&self.theta(qq));
                        e4.add_assign_ref(&t.wedge(&c));
                    }
                }
            }
        }
        rep.push("r0-quartic", ResidualValue::Form(e4));

        let mut e5 = self.d_theta(&self.r2);
        for i in 0..k {
            e5 = e5.add(&self.r1[i].wedge_right(&f[i]));
        }
        rep.push("r2-bianchi", ResidualValue::GForm(e5));

        for p in 0..k {
            let mut e = self.d_theta(&self.r1[p]).add(&self.actions[p].apply(&self.r2));
            for i in 0..k {
                e = e.add(&self.r0[p][i].wedge_right(&f[i]).scale(&two));
            }
            rep.push(format!("r1-bianchi[{}]", p + 1), ResidualValue::GForm(e));
        }

        for p in 0..k {
            for qq in p + 1..k {
                let e = self.actions[p]
                    .apply(&self.r1[qq])
                    .sub(&self.actions[qq].apply(&self.r1[p]))
                    .sub(&self.d_theta(&self.r0[p][qq]).scale(&two));
                rep.push(format!("r0-covariance[{},{}]", p + 1, qq + 1), ResidualValue::GForm(e));
            }
        }

        for p in 0..k {
            for qq in p + 1..k {
                for s in qq + 1..k {
                    let e = self.actions[s]
                        .apply(&self.r0[p][qq])
                        .add(&self.actions[qq].apply(&self.r0[s][p]))
                        .add(&self.actions[p].apply(&self.r0[qq][s]));
                    rep.push(
                        format!("r0-cyclic[{},{},{}]", p + 1, qq + 1, s + 1),
                        ResidualValue::GForm(e),
                    );
                }
            }
        }

        let mut e9 = self
            .omega_b
            .d()
            .add(&self.omega_b.wedge(&self.omega_b))
            .sub(&EndForm::ad(g, &self.r2));
        for i in 0..k {
            e9 = e9.sub(&self.actions[i].wedge_left(&f[i]));
        }
        rep.push("curvature-split", ResidualValue::End(e9));

        let half = q(1, 2);
        for i in 0..k {
            for j in i + 1..k {
                let comm = self.actions[i].graded_commutator(&self.actions[j], 0, 0);
                let e = EndForm::ad(g, &self.r0[i][j]).sub(&comm.scale(&half));
                rep.push(format!("r0-commutator[{},{}]", i + 1, j + 1), ResidualValue::End(e));
            }
        }

        for i in 0..k {
            let a = &self.actions[i];
            let nabla = a
                .d()
                .add(&self.omega_b.wedge(a))
                .sub(&a.wedge(&self.omega_b))
                .sub(&EndForm::ad(g, &self.r1[i]));
            rep.push(format!("action-covariance[{}]", i + 1), ResidualValue::End(nabla));
        }
        rep
    }
}

/// The slot name prefixes of [`DecompRecord::check_equations`], in order.
pub const EQUATION_SLOTS: [&str; 12] = [
    "h3-closure",
    "h2-derivative",
    "h1-derivative",
    "h0-derivative",
    "r0-quartic",
    "r2-bianchi",
    "r1-bianchi",
    "r0-covariance",
    "r0-cyclic",
    "curvature-split",
    "r0-commutator",
    "action-covariance",
];

/// The slot prefix of a residual name such as `h1-derivative[1,2]`.
pub fn slot_of(name: &str) -> &str {
    name.split('[').next().unwrap_or(name)
}

