#![allow(dead_code)]

use std::sync::Arc;

use coeff_ring::sample::{rational, scalar, Shape};
use coeff_ring::{TrigScalar, Q};
use courant::{CourantData, GForm, IsoData, Section};
use exterior::{Form, Sig, VectorField};
use qla::linalg;
use qla::QuadraticLieAlgebra;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spinor::Spinor;

pub use courant::examples::{affine_so3, exact_flux, heisenberg, trivial};

fn small() -> Shape {
    Shape {
        max_freq: 1,
        modes: 1,
        tau_degree: 0,
    }
}

pub fn random_scalar(rng: &mut ChaCha8Rng, dim: usize) -> TrigScalar {
    if rng.gen_bool(0.3) {
        TrigScalar::constant(dim, rational(rng))
    } else {
        scalar(rng, dim, small())
    }
}

pub fn random_mask(rng: &mut ChaCha8Rng, sig: &Sig, degree: usize) -> u64 {
    loop {
        let m = rng.gen_range(0..=sig.full_mask());
        if m.count_ones() as usize == degree {
            return m;
        }
    }
}

pub fn random_form(rng: &mut ChaCha8Rng, sig: &Sig, degree: usize, terms: usize) -> Form {
    let mut out = Form::zero(sig);
    for _ in 0..terms {
        let mask = random_mask(rng, sig, degree);
        out.add_term(mask, random_scalar(rng, sig.base_dim()));
    }
    out
}

pub fn random_gform(rng: &mut ChaCha8Rng, sig: &Sig, n: usize, degree: usize, terms: usize) -> GForm {
    let mut comps = vec![Form::zero(sig); n];
    if n > 0 {
        for _ in 0..terms {
            let k = rng.gen_range(0..n);
            comps[k] = comps[k].add(&random_form(rng, sig, degree, 1));
        }
    }
    GForm::from_comps(sig, comps)
}

pub fn random_section(rng: &mut ChaCha8Rng, sig: &Sig, n: usize) -> Section {
    let dim = sig.base_dim();
    let mut r = vec![TrigScalar::zero(dim); n];
    if n > 0 {
        for _ in 0..2 {
            r[rng.gen_range(0..n)] = random_scalar(rng, dim);
        }
    }
    let mut comps = vec![TrigScalar::zero(dim); sig.num_gens()];
    for _ in 0..2 {
        comps[rng.gen_range(0..sig.num_gens())] = random_scalar(rng, dim);
    }
    Section {
        xi: random_form(rng, sig, 1, 2),
        r,
        x: VectorField::from_comps(sig, comps),
    }
}

/// A spinor with a few random terms of arbitrary degree.
pub fn random_spinor(rng: &mut ChaCha8Rng, sig: &Sig, g: &Arc<QuadraticLieAlgebra>, terms: usize) -> Spinor {
    let size = g.spinors().unwrap().size();
    let mut out = Spinor::zero(sig, g);
    for _ in 0..terms {
        let mask = rng.gen_range(0..=sig.full_mask());
        let a = rng.gen_range(0..size);
        out = out.add(&Spinor::basis(sig, g, mask, a, random_scalar(rng, sig.base_dim())));
    }
    out
}

/// A random homogeneous spinor `ω ⊗ s_a` with `ω` of degree `p`.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, sig: &Sig, g: &Arc<QuadraticLieAlgebra>, p: usize, a: usize) -> Spinor {
    Spinor::from_form(&random_form(rng, sig, p, 2), g, a)
}

/// `exp(ad_f) = 1 + ad_f` for a random `f` in the abelian half of `so(3) ⋉ so(3)*`.
pub fn random_shear(rng: &mut ChaCha8Rng, g: &QuadraticLieAlgebra) -> linalg::Mat {
    if g.dim() != 6 {
        return linalg::identity(g.dim());
    }
    let mut f = vec![Q::from_integer(0.into()); 6];
    for x in f.iter_mut().skip(3) {
        *x = rational(rng);
    }
    linalg::add(&linalg::identity(6), &g.ad(&f))
}

/// A random isomorphism whose `K` is unipotent, so that it has a spin lift.
pub fn random_iso(rng: &mut ChaCha8Rng, data: &CourantData) -> IsoData {
    let sig = data.sig();
    let g = data.algebra();
    let n = g.dim();
    let beta = random_form(rng, sig, 2, 2);
    let phi = random_gform(rng, sig, n, 1, 2);
    IsoData::new(g, beta, random_shear(rng, g), phi).unwrap()
}
