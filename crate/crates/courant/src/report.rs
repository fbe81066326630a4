use std::fmt;

use coeff_ring::{TrigScalar, Q};
use exterior::Form;
use num_traits::Zero;

use crate::gform::{EndForm, GForm};

/// The value of a single residual.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidualValue {
    Number(Q),
    Scalar(TrigScalar),
    Form(Form),
    GForm(GForm),
    End(EndForm),
    Scalars(Vec<TrigScalar>),
}

impl ResidualValue {
    pub fn is_zero(&self) -> bool {
        match self {
            Self::Number(q) => q.is_zero(),
            Self::Scalar(f) => f.is_zero(),
            Self::Form(f) => f.is_zero(),
            Self::GForm(f) => f.is_zero(),
            Self::End(f) => f.is_zero(),
            Self::Scalars(v) => v.iter().all(TrigScalar::is_zero),
        }
    }
}

impl fmt::Display for ResidualValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Number(q) => write!(f, "{q}"),
            Self::Scalar(s) => write!(f, "{s}"),
            Self::Form(x) => write!(f, "{x}"),
            Self::GForm(x) => write!(f, "{x}"),
            Self::End(x) => write!(f, "{x}"),
            Self::Scalars(v) => {
                let parts: Vec<String> = v.iter().filter(|s| !s.is_zero()).map(|s| s.to_string()).collect();
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "[{}]", parts.join(", "))
                }
            }
        }
    }
}

/// A named residual; the identity it checks holds iff the value is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: ResidualValue,
}

impl Residual {
    pub fn new(name: impl Into<String>, value: ResidualValue) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// An ordered collection of residuals.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub residuals: Vec<Residual>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, value: ResidualValue) {
        self.residuals.push(Residual::new(name, value));
    }

    pub fn extend(&mut self, other: Report) {
        self.residuals.extend(other.residuals);
    }

    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(Residual::is_zero)
    }

    pub fn get(&self, name: &str) -> Option<&Residual> {
        self.residuals.iter().find(|r| r.name == name)
    }

    /// Names of the residuals that are not zero.
    pub fn nonzero(&self) -> Vec<&str> {
        self.residuals.iter().filter(|r| !r.is_zero()).map(|r| r.name.as_str()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.residuals {
            let status = if r.is_zero() { "zero" } else { "NONZERO" };
            writeln!(f, "{}: {status}", r.name)?;
        }
        Ok(())
    }
}
