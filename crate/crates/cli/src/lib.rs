//! Command-line front end: loads JSON documents, runs the checks and duality
//! maps of the library crates, and emits a machine-readable [`RunReport`].

mod commands;
pub mod input;
pub mod report;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use courant::{CourantError, Report};
use spinor::SpinorError;
use tdual::TdualError;

pub use commands::{run, Outcome};
pub use report::{digest, NamedValue, ResidualEntry, RunReport, Timing};

#[derive(Debug, Parser)]
#[command(name = "courant-tdual", version, about = "Checks and T-dualizes invariant Courant algebroids over torus bundles")]
pub struct Cli {
    /// Input document; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the command's artifact; it is embedded in the report when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Attach decimal bounds to residuals for human reading.
    #[arg(long, global = true)]
    pub float: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Compatibility and action-compatibility residuals of Courant or base data.
    Check,
    /// Splits the data by fiber degree and checks the equations between the pieces.
    Decompose,
    /// Builds the duality package from base data and an optional `rTilde`.
    Dualize,
    /// Checks the duality relations of a package.
    Verify,
    /// Applies the Dirac generating operator to a spinor.
    Dirac,
    /// Maps a source spinor to the dual side.
    Tau,
    /// Maps a source section to the dual side.
    Rho,
    /// Runs a built-in example end to end.
    Demo {
        /// `exact-flux-<n>`, `heisenberg`, `heisenberg-<n>`, `trivial` or `affine-so3`.
        name: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Check => "check",
            Self::Decompose => "decompose",
            Self::Dualize => "dualize",
            Self::Verify => "verify",
            Self::Dirac => "dirac",
            Self::Tau => "tau",
            Self::Rho => "rho",
            Self::Demo { .. } => "demo",
        }
    }

    pub fn needs_input(&self) -> bool {
        !matches!(self, Self::Demo { .. })
    }
}

/// Exit code for unreadable or invalid input.
pub const EXIT_PARSE: i32 = 1;
/// Exit code when a required residual is nonzero.
pub const EXIT_RESIDUAL: i32 = 2;
/// Exit code when a dual curvature is not closed or not integral.
pub const EXIT_INTEGRALITY: i32 = 3;
/// Exit code when an isomorphism has no supported spin lift.
pub const EXIT_UNSUPPORTED_LIFT: i32 = 4;

/// Why a command stopped before producing its artifact.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    /// A relation that must hold failed; its residuals are reported.
    Residuals(String, Report),
    Residual(String),
    Integrality(String),
    UnsupportedLift(String),
}

impl Failure {
    pub fn parse(e: impl fmt::Display) -> Self {
        Self::Parse(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) => EXIT_PARSE,
            Self::Residuals(..) | Self::Residual(_) => EXIT_RESIDUAL,
            Self::Integrality(_) => EXIT_INTEGRALITY,
            Self::UnsupportedLift(_) => EXIT_UNSUPPORTED_LIFT,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse(m) | Self::Residuals(m, _) | Self::Residual(m) | Self::Integrality(m) | Self::UnsupportedLift(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<CourantError> for Failure {
    fn from(e: CourantError) -> Self {
        match e {
            CourantError::ReducedRelationsViolated(rep) => {
                Self::Residuals(CourantError::ReducedRelationsViolated(rep.clone()).to_string(), rep)
            }
            e => Self::Parse(e.to_string()),
        }
    }
}

impl From<SpinorError> for Failure {
    fn from(e: SpinorError) -> Self {
        match e {
            SpinorError::UnsupportedK => Self::UnsupportedLift(e.to_string()),
            SpinorError::Courant(c) => c.into(),
            e => Self::Parse(e.to_string()),
        }
    }
}

impl From<TdualError> for Failure {
    fn from(e: TdualError) -> Self {
        match e {
            TdualError::NotClosed { .. } | TdualError::NotIntegral { .. } => Self::Integrality(e.to_string()),
            TdualError::SingularSystem => Self::Residual(e.to_string()),
            TdualError::Courant(c) => c.into(),
            TdualError::Spinor(s) => s.into(),
            e => Self::Parse(e.to_string()),
        }
    }
}
