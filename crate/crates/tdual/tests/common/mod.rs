#![allow(dead_code)]

use std::sync::Arc;

use coeff_ring::sample::{rational, scalar, Shape};
use coeff_ring::{TrigScalar, Q};
use courant::{BaseData, CourantData, GForm, IsoData, Section};
use exterior::{Form, Sig, VectorField};
use qla::{linalg, Mat, QuadraticLieAlgebra};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spinor::Spinor;
use tdual::{catalog, dualize, DualityPackage};

pub const EXAMPLES: &[&str] = &["exact-flux-1", "exact-flux-2", "exact-flux-3", "trivial", "heisenberg", "affine-so3"];

pub fn package(name: &str) -> DualityPackage {
    let (base, rt) = catalog::example(name).unwrap();
    dualize(&base, Some(&rt)).unwrap()
}

pub fn base(name: &str) -> BaseData {
    catalog::example(name).unwrap().0
}

pub fn random_scalar(rng: &mut ChaCha8Rng, dim: usize) -> TrigScalar {
    if rng.gen_bool(0.4) {
        TrigScalar::constant(dim, rational(rng))
    } else {
        let shape = Shape {
            max_freq: 1,
            modes: 1,
            tau_degree: 0,
        };
        scalar(rng, dim, shape)
    }
}

pub fn random_form(rng: &mut ChaCha8Rng, sig: &Sig, degree: usize, terms: usize) -> Form {
    let mut out = Form::zero(sig);
    for _ in 0..terms {
        let mask = loop {
            let m = rng.gen_range(0..=sig.full_mask());
            if m.count_ones() as usize == degree {
                break m;
            }
        };
        out.add_term(mask, random_scalar(rng, sig.base_dim()));
    }
    out
}

/// An invariant section with a few random basic coefficients.
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

/// A spinor with a few random terms of arbitrary degree.
pub fn random_spinor(
    rng: &mut ChaCha8Rng,
    sig: &Sig,
    g: &Arc<QuadraticLieAlgebra>,
    terms: usize,
) -> Spinor {
    let size = g.spinors().unwrap().size();
    let mut out = Spinor::zero(sig, g);
    for _ in 0..terms {
        let mask = rng.gen_range(0..=sig.full_mask());
        let a = rng.gen_range(0..size);
        out = out.add(&Spinor::basis(sig, g, mask, a, random_scalar(rng, sig.base_dim())));
    }
    out
}

/// A rational rotation, the Cayley transform of a random skew 3×3 matrix.
pub fn cayley_rotation(rng: &mut ChaCha8Rng) -> Mat {
    let (a, b, c) = (rational(rng), rational(rng), rational(rng));
    let zero = Q::from_integer(0.into());
    let s = vec![
        vec![zero.clone(), a.clone(), b.clone()],
        vec![-a, zero.clone(), c.clone()],
        vec![-b, -c, zero],
    ];
    let id = linalg::identity(3);
    let inv = linalg::inverse(&linalg::sub(&id, &s)).unwrap();
    linalg::mul(&inv, &linalg::add(&id, &s))
}

/// `1 + ad_f` for a random `f` in the abelian half of `so(3) ⋉ so(3)*`, optionally after a rotation.
pub fn random_so3_automorphism(rng: &mut ChaCha8Rng, g: &QuadraticLieAlgebra, rotate: bool) -> Mat {
    let mut k = linalg::identity(6);
    if rotate {
        let rot = cayley_rotation(rng);
        for i in 0..3 {
            for j in 0..3 {
                k[i][j] = rot[i][j].clone();
                k[3 + i][3 + j] = rot[i][j].clone();
            }
        }
    }
    let mut f = vec![Q::from_integer(0.into()); 6];
    for x in f.iter_mut().skip(3) {
        *x = rational(rng);
    }
    linalg::mul(&linalg::add(&linalg::identity(6), &g.ad(&f)), &k)
}

/// A random isomorphism with unipotent `K`, so that it has a spin lift.
pub fn random_iso(rng: &mut ChaCha8Rng, data: &CourantData) -> IsoData {
    let sig = data.sig();
    let g = data.algebra();
    let n = g.dim();
    let k = if n == 6 {
        random_so3_automorphism(rng, g, false)
    } else {
        linalg::identity(n)
    };
    let beta = random_form(rng, sig, 2, 2);
    let phi = random_gform(rng, sig, n, 1, 2);
    IsoData::new(g, beta, k, phi).unwrap()
}
