//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Two values belong to different algebras.
    #[error("algebra spec mismatch: {0}")]
    SpecMismatch(String),

    /// An algebra spec fails its own invariants.
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),

    /// A morphism's data does not define a map of local algebras.
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    /// An instantiated generator assignment is not bijective on the quotient.
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    /// Evaluation left the domain of an elementary function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Vector or variable arity does not match the declared one.
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    /// Jet base points that were required to coincide do not.
    #[error("point mismatch: {0}")]
    PointMismatch(String),

    /// Jet truncation orders that were required to coincide do not.
    #[error("order mismatch: {0}")]
    OrderMismatch(String),

    /// The morphism-jet is valued in an algebra with extra relations, so it
    /// does not correspond to a jet of a map.
    #[error("algebra is not of jet type: {0}")]
    AlgebraNotJetType(String),

    /// Textual expression could not be parsed; `position` is a character
    /// offset into the input.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    /// A numeric routine (Newton inversion) failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI's structured errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SpecMismatch(_) => "spec_mismatch",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::InvalidMorphism(_) => "invalid_morphism",
            Error::NotAutomorphism(_) => "not_automorphism",
            Error::Domain(_) => "domain_error",
            Error::ArityMismatch(_) => "arity_mismatch",
            Error::PointMismatch(_) => "point_mismatch",
            Error::OrderMismatch(_) => "order_mismatch",
            Error::AlgebraNotJetType(_) => "algebra_not_jet_type",
            Error::Parse { .. } => "parse_error",
            Error::NoConvergence(_) => "no_convergence",
        }
    }
}
