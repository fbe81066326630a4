use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::CoeffError;

/// Exact rational number used throughout the workspace.
pub type Q = BigRational;

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Polynomial in the formal symbol `t`, which stands for 2π.
///
/// Coefficients are stored lowest degree first, with trailing zeros trimmed,
/// so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TauPoly {
    coeffs: Vec<Q>,
}

impl TauPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    /// The monomial `c * t^deg`.
    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut coeffs = vec![Q::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> Q {
        self.coeffs.first().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_assign_ref(&mut self, other: &TauPoly) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, other: &TauPoly) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Q::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        self.trim();
    }

    pub fn add(&self, other: &TauPoly) -> TauPoly {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &TauPoly) -> TauPoly {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    pub fn neg(&self) -> TauPoly {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &TauPoly) -> TauPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Q) -> TauPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t`.
    pub fn mul_tau(&self) -> TauPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Q::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Evaluates with `t = 2π`. Only meant for floating-point test oracles.
    pub fn eval_f64(&self) -> f64 {
        let tau = std::f64::consts::TAU;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * tau + c.to_f64().unwrap_or(f64::NAN))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl From<Q> for TauPoly {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*t")?,
                _ => write!(f, "{mag}*t^{deg}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for TauPoly {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(CoeffError::Parse(format!("empty polynomial {s:?}")));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut out = TauPoly::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'+') => (Q::one(), &term[1..]),
                Some(b'-') => (-Q::one(), &term[1..]),
                _ => (Q::one(), term),
            };
            let (coef_str, deg) = split_power(body)
                .ok_or_else(|| CoeffError::Parse(format!("bad polynomial term {term:?}")))?;
            let coef = if coef_str.is_empty() {
                Q::one()
            } else {
                Q::from_str(coef_str)
                    .map_err(|_| CoeffError::Parse(format!("bad rational {coef_str:?}")))?
            };
            out.add_assign_ref(&TauPoly::monomial(sign * coef, deg));
        }
        Ok(out)
    }
}

/// Splits `"3/2*t^2"` into `("3/2", 2)`, `"t"` into `("", 1)` and `"5"` into `("5", 0)`.
fn split_power(body: &str) -> Option<(&str, usize)> {
    let Some(tpos) = body.find('t') else {
        return (!body.is_empty()).then_some((body, 0));
    };
    let coef = body[..tpos].strip_suffix('*').unwrap_or(&body[..tpos]);
    if tpos > 0 && !body[..tpos].ends_with('*') {
        return None;
    }
    let rest = &body[tpos + 1..];
    let deg = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')?.parse().ok()?
    };
    Some((coef, deg))
}
