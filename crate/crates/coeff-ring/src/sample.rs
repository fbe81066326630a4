//! Random exact scalars for property tests and randomized sweeps.

use rand::Rng;

use crate::{q, TauPoly, TrigScalar, Q};

/// Shape of randomly drawn scalars.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Largest absolute frequency per axis.
    pub max_freq: i32,
    /// Number of modes drawn (collisions may merge some).
    pub modes: usize,
    /// Largest power of `t` in a coefficient.
    pub tau_degree: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_freq: 1,
            modes: 2,
            tau_degree: 0,
        }
    }
}

/// A small random rational with numerator in `-3..=3` and denominator in `1..=2`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    q(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn poly<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> TauPoly {
    let deg = rng.gen_range(0..=max_degree);
    TauPoly::from_coeffs((0..=deg).map(|_| rational(rng)).collect())
}

pub fn scalar<R: Rng + ?Sized>(rng: &mut R, dim: usize, shape: Shape) -> TrigScalar {
    let mut out = TrigScalar::zero(dim);
    for _ in 0..shape.modes {
        let k: Vec<i32> = (0..dim).map(|_| rng.gen_range(-shape.max_freq..=shape.max_freq)).collect();
        let p = poly(rng, shape.tau_degree);
        if rng.gen_bool(0.5) {
            out.add_cos(&k, p);
        } else {
            out.add_sin(&k, p);
        }
    }
    out
}
