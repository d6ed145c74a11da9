use std::fmt;

use thiserror::Error;

use crate::asc::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong across the library.
///
/// Variants that carry a `witness` name one concrete offending item so that
/// callers (and the CLI) can print it without recomputing anything.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("space mismatch: {0}")]
    Space(String),

    #[error("complex is not closed under subfaces; missing {}", DisplayFaces(.missing))]
    Closure { missing: Vec<Simplex> },

    #[error("invalid simplex: {0}")]
    Simplex(String),

    #[error("{law} violated: {witness}")]
    Violation { law: String, witness: String },

    #[error("a finite window is required to enumerate {0}")]
    WindowRequired(String),

    #[error("malformed interval [{lo}, {hi}]")]
    Interval { lo: String, hi: String },

    #[error("square does not commute at {witness}")]
    Commutation { witness: String },

    #[error("functor {functor}: {reason}")]
    Functor { functor: String, reason: String },

    #[error("bound exceeded: {what} needs {needed}, limit is {limit}")]
    Bound {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("incomplete sheaf: {0}")]
    IncompleteSheaf(String),

    #[error("incomplete assignment: {0}")]
    IncompleteAssignment(String),

    #[error("no analytic for sensor {sensor} and variable {variable}")]
    AnalyticMissing { sensor: String, variable: String },

    #[error("payload does not match sensor {sensor}: {reason}")]
    Payload { sensor: String, reason: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("invalid object: {0}")]
    Invalid(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn violation(law: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Violation {
            law: law.into(),
            witness: witness.into(),
        }
    }

    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with all context layers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}

struct DisplayFaces<'a>(&'a [Simplex]);

impl fmt::Display for DisplayFaces<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, face) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{face}")?;
        }
        Ok(())
    }
}
