use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use crate::poly::{q, Q, TauPoly};
use crate::CoeffError;

/// Cosine and sine coefficients attached to one frequency vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mode {
    pub cos: TauPoly,
    pub sin: TauPoly,
}

impl Mode {
    fn is_zero(&self) -> bool {
        self.cos.is_zero() && self.sin.is_zero()
    }
}

/// A finite Fourier sum on the torus `[0,1)^dim` with coefficients in `Q[t]`.
///
/// The basis functions are `cos(2π k·x)` and `sin(2π k·x)`. Only frequency
/// vectors that are lexicographically non-negative are stored, and the zero
/// frequency never carries a sine coefficient.
#[derive(Clone, Debug, Default, Eq)]
pub struct TrigScalar {
    dim: usize,
    modes: BTreeMap<Vec<i32>, Mode>,
}

impl PartialEq for TrigScalar {
    fn eq(&self, other: &Self) -> bool {
        // The zero function is the same whatever dimension it was built with.
        self.modes == other.modes && (self.modes.is_empty() || self.dim == other.dim)
    }
}

impl Hash for TrigScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modes.hash(state);
        if !self.modes.is_empty() {
            self.dim.hash(state);
        }
    }
}

fn is_lex_negative(k: &[i32]) -> bool {
    k.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
}

fn negated(k: &[i32]) -> Vec<i32> {
    k.iter().map(|c| -c).collect()
}

impl TrigScalar {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            modes: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut out = Self::zero(dim);
        out.add_cos(&vec![0; dim], TauPoly::constant(c));
        out
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn from_poly(dim: usize, p: TauPoly) -> Self {
        let mut out = Self::zero(dim);
        out.add_cos(&vec![0; dim], p);
        out
    }

    /// `p * cos(2π k·x)`.
    pub fn cos(k: &[i32], p: TauPoly) -> Self {
        let mut out = Self::zero(k.len());
        out.add_cos(k, p);
        out
    }

    /// `p * sin(2π k·x)`.
    pub fn sin(k: &[i32], p: TauPoly) -> Self {
        let mut out = Self::zero(k.len());
        out.add_sin(k, p);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Vec<i32>, &Mode)> {
        self.modes.iter()
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// The value as a plain rational when the function is a `t`-free constant.
    pub fn as_rational(&self) -> Option<Q> {
        match self.modes.len() {
            0 => Some(Q::zero()),
            1 => {
                let (k, m) = self.modes.iter().next()?;
                (k.iter().all(|&c| c == 0) && m.cos.degree() == Some(0)).then(|| m.cos.constant_term())
            }
            _ => None,
        }
    }

    fn check_dim(&mut self, k: &[i32]) {
        if self.modes.is_empty() {
            self.dim = k.len();
        }
        assert_eq!(self.dim, k.len(), "frequency vector has wrong dimension");
    }

    fn entry(&mut self, k: Vec<i32>) -> &mut Mode {
        self.modes.entry(k).or_default()
    }

    fn cleanup(&mut self, k: &[i32]) {
        if self.modes.get(k).is_some_and(Mode::is_zero) {
            self.modes.remove(k);
        }
    }

    /// Adds `p * cos(2π k·x)` for an arbitrary (possibly negative) `k`.
    pub fn add_cos(&mut self, k: &[i32], p: TauPoly) {
        if p.is_zero() {
            return;
        }
        self.check_dim(k);
        let key = if is_lex_negative(k) { negated(k) } else { k.to_vec() };
        self.entry(key.clone()).cos.add_assign_ref(&p);
        self.cleanup(&key);
    }

    /// Adds `p * sin(2π k·x)` for an arbitrary (possibly negative) `k`.
    pub fn add_sin(&mut self, k: &[i32], p: TauPoly) {
        if p.is_zero() || k.iter().all(|&c| c == 0) {
            return;
        }
        self.check_dim(k);
        let (key, p) = if is_lex_negative(k) { (negated(k), p.neg()) } else { (k.to_vec(), p) };
        self.entry(key.clone()).sin.add_assign_ref(&p);
        self.cleanup(&key);
    }

    pub fn add_assign_ref(&mut self, other: &TrigScalar) {
        for (k, m) in &other.modes {
            self.add_cos(k, m.cos.clone());
            self.add_sin(k, m.sin.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &TrigScalar) {
        for (k, m) in &other.modes {
            self.add_cos(k, m.cos.neg());
            self.add_sin(k, m.sin.neg());
        }
    }

    pub fn add(&self, other: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    pub fn neg(&self) -> TrigScalar {
        let modes = self
            .modes
            .iter()
            .map(|(k, m)| {
                (k.clone(), Mode { cos: m.cos.neg(), sin: m.sin.neg() })
            })
            .collect();
        Self { dim: self.dim, modes }
    }

    pub fn scale(&self, c: &Q) -> TrigScalar {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let modes = self
            .modes
            .iter()
            .map(|(k, m)| (k.clone(), Mode { cos: m.cos.scale(c), sin: m.sin.scale(c) }))
            .collect();
        Self { dim: self.dim, modes }
    }

    pub fn scale_poly(&self, p: &TauPoly) -> TrigScalar {
        let mut out = Self::zero(self.dim);
        for (k, m) in &self.modes {
            out.add_cos(k, m.cos.mul(p));
            out.add_sin(k, m.sin.mul(p));
        }
        out
    }

    /// Product, re-expanded with the product-to-sum identities.
    pub fn mul(&self, other: &TrigScalar) -> TrigScalar {
        let dim = self.dim.max(other.dim);
        let mut out = Self::zero(dim);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        assert_eq!(self.dim, other.dim, "multiplying functions on different tori");
        let half = q(1, 2);
        for (ka, a) in &self.modes {
            for (kb, b) in &other.modes {
                let sum: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let diff: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x - y).collect();
                if !a.cos.is_zero() && !b.cos.is_zero() {
                    let p = a.cos.mul(&b.cos).scale(&half);
                    out.add_cos(&diff, p.clone());
                    out.add_cos(&sum, p);
                }
                if !a.sin.is_zero() && !b.sin.is_zero() {
                    let p = a.sin.mul(&b.sin).scale(&half);
                    out.add_cos(&diff, p.clone());
                    out.add_cos(&sum, p.neg());
                }
                if !a.sin.is_zero() && !b.cos.is_zero() {
                    let p = a.sin.mul(&b.cos).scale(&half);
                    out.add_sin(&sum, p.clone());
                    out.add_sin(&diff, p);
                }
                if !a.cos.is_zero() && !b.sin.is_zero() {
                    let p = a.cos.mul(&b.sin).scale(&half);
                    out.add_sin(&sum, p.clone());
                    out.add_sin(&diff, p.neg());
                }
            }
        }
        out
    }

    /// Partial derivative along coordinate `axis`.
    pub fn partial(&self, axis: usize) -> TrigScalar {
        let mut out = Self::zero(self.dim);
        if self.is_zero() {
            return out;
        }
        assert!(axis < self.dim, "axis {axis} out of range for dimension {}", self.dim);
        for (k, m) in &self.modes {
            let kappa = Q::from_integer(k[axis].into());
            if kappa.is_zero() {
                continue;
            }
            out.add_cos(k, m.sin.mul_tau().scale(&kappa));
            out.add_sin(k, m.cos.mul_tau().scale(&-kappa));
        }
        out
    }

    /// Mean value over the unit torus.
    pub fn harmonic_part(&self) -> Result<Q, CoeffError> {
        let Some(m) = self.modes.get(&vec![0; self.dim]) else {
            return Ok(Q::zero());
        };
        match m.cos.degree() {
            Some(d) if d > 0 => Err(CoeffError::NonConstantTauContent),
            _ => Ok(m.cos.constant_term()),
        }
    }

    /// Evaluates at a point with `t = 2π`. Only meant for floating-point test oracles.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let tau = std::f64::consts::TAU;
        self.modes
            .iter()
            .map(|(k, m)| {
                let phase: f64 = k.iter().zip(x).map(|(&c, &xi)| c as f64 * xi).sum::<f64>() * tau;
                m.cos.eval_f64() * phase.cos() + m.sin.eval_f64() * phase.sin()
            })
            .sum()
    }
}

impl fmt::Display for TrigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::replace(&mut first, false) {
                write!(f, " + ")?;
            }
            Ok(())
        };
        for (k, m) in &self.modes {
            let ks: Vec<String> = k.iter().map(ToString::to_string).collect();
            let ks = ks.join(",");
            if k.iter().all(|&c| c == 0) {
                sep(f)?;
                write!(f, "({})", m.cos)?;
                continue;
            }
            if !m.cos.is_zero() {
                sep(f)?;
                write!(f, "({})*cos[{ks}]", m.cos)?;
            }
            if !m.sin.is_zero() {
                sep(f)?;
                write!(f, "({})*sin[{ks}]", m.sin)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&TrigScalar> for &TrigScalar {
            type Output = TrigScalar;
            fn $method(self, rhs: &TrigScalar) -> TrigScalar {
                TrigScalar::$inner(self, rhs)
            }
        }
        impl std::ops::$tr<TrigScalar> for TrigScalar {
            type Output = TrigScalar;
            fn $method(self, rhs: TrigScalar) -> TrigScalar {
                TrigScalar::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        TrigScalar::neg(self)
    }
}

impl std::ops::AddAssign<&TrigScalar> for TrigScalar {
    fn add_assign(&mut self, rhs: &TrigScalar) {
        self.add_assign_ref(rhs);
    }
}

impl std::ops::SubAssign<&TrigScalar> for TrigScalar {
    fn sub_assign(&mut self, rhs: &TrigScalar) {
        self.sub_assign_ref(rhs);
    }
}
