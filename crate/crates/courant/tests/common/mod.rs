#![allow(dead_code)]

use coeff_ring::sample::{rational, scalar, Shape};
use coeff_ring::{qi, TrigScalar, Q};
use courant::{CourantData, GForm, IsoData, Section};
use exterior::{Form, Sig, VectorField};
use qla::linalg::{self, Mat};
use qla::QuadraticLieAlgebra;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn one(dim: usize) -> TrigScalar {
    TrigScalar::one(dim)
}

pub fn konst(dim: usize, n: i64) -> TrigScalar {
    TrigScalar::constant(dim, qi(n))
}

pub use courant::examples::{affine_so3, exact_flux};

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

/// A rational rotation by the Cayley transform of a random skew 3×3 matrix.
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

/// A random automorphism of `so(3) ⋉ so(3)*`: a rotation acting on both
/// halves, followed by `exp(ad_f)` for a random `f ∈ so(3)*`.
pub fn random_so3_automorphism(rng: &mut ChaCha8Rng, g: &QuadraticLieAlgebra) -> Mat {
    let rot = cayley_rotation(rng);
    let mut k = linalg::zeros(6, 6);
    for i in 0..3 {
        for j in 0..3 {
            k[i][j] = rot[i][j].clone();
            k[3 + i][3 + j] = rot[i][j].clone();
        }
    }
    let mut f = vec![Q::from_integer(0.into()); 6];
    for x in f.iter_mut().skip(3) {
        *x = rational(rng);
    }
    let shear = linalg::add(&linalg::identity(6), &g.ad(&f));
    linalg::mul(&shear, &k)
}

pub fn random_iso(rng: &mut ChaCha8Rng, data: &CourantData) -> IsoData {
    let sig = data.sig();
    let g = data.algebra();
    let n = g.dim();
    let k = if n == 6 {
        random_so3_automorphism(rng, g)
    } else {
        linalg::identity(n)
    };
    let beta = random_form(rng, sig, 2, 2);
    let phi = random_gform(rng, sig, n, 1, 2);
    IsoData::new(g, beta, k, phi).unwrap()
}
