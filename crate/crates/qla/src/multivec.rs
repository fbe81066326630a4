use std::collections::BTreeMap;
use std::fmt;

use coeff_ring::Q;
use num_traits::Zero;

/// Sign of moving the basis word `b` past `a` when forming `a ∧ b`.
pub(crate) fn wedge_sign(a: u64, b: u64) -> i32 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of `Λ𝔤` in the basis `e_{i_1} ∧ … ∧ e_{i_p}` (`i_1 < … < i_p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivec {
    dim: usize,
    terms: BTreeMap<u64, Q>,
}

impl Multivec {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Q) -> Self {
        let mut out = Self::zero(dim);
        out.add_term(0, c);
        out
    }

    pub fn vector(v: &[Q]) -> Self {
        let mut out = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        out
    }

    pub fn basis(dim: usize, mask: u64) -> Self {
        let mut out = Self::zero(dim);
        out.add_term(mask, Q::from_integer(1.into()));
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<u64, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u64, c: Q) {
        assert!(mask >> self.dim == 0, "multivector index out of range");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Multivec) -> Multivec {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Multivec) -> Multivec {
        self.add(&other.scale(&-Q::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Q) -> Multivec {
        let mut out = Self::zero(self.dim);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn wedge(&self, other: &Multivec) -> Multivec {
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a & b == 0 {
                    out.add_term(a | b, x * y * Q::from_integer(wedge_sign(*a, *b).into()));
                }
            }
        }
        out
    }

    /// The degree-`p` component.
    pub fn part(&self, p: u32) -> Multivec {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            if m.count_ones() == p {
                out.add_term(*m, c.clone());
            }
        }
        out
    }
}

impl fmt::Display for Multivec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            let mut rest = *m;
            while rest != 0 {
                write!(f, "e{}", rest.trailing_zeros() + 1)?;
                rest &= rest - 1;
                if rest != 0 {
                    write!(f, "^")?;
                }
            }
        }
        Ok(())
    }
}
