//! Error type shared across the crate.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraError {
    /// Field characteristic is neither 0 nor prime.
    NonPrimeCharacteristic(u64),
    /// A generator or relation that must be homogeneous is not.
    NotHomogeneous(String),
    /// Polynomial built over the wrong number of variables.
    ArityMismatch { expected: usize, found: usize },
    /// Parse failure in a polynomial or description file.
    Parse(String),
    /// The ideal contains a unit; the quotient would be the zero ring.
    UnitIdeal,
    /// An element required to be regular is a zerodivisor.
    ZeroDivisor { element: String, witness: String },
    /// Operation needs a Cohen-Macaulay ring.
    NotCohenMacaulay(String),
    /// A criterion's hypotheses are not met (refused, not failed).
    HypothesisNotMet(String),
    /// Malformed input outside the other categories.
    InvalidInput(String),
    /// Two independent computations of the same value disagree.
    CrossCheck(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NonPrimeCharacteristic(p) => {
                write!(f, "characteristic {} is neither 0 nor prime", p)
            }
            AlgebraError::NotHomogeneous(what) => write!(f, "not homogeneous: {}", what),
            AlgebraError::ArityMismatch { expected, found } => {
                write!(f, "expected {} variables, found {}", expected, found)
            }
            AlgebraError::Parse(msg) => write!(f, "parse error: {}", msg),
            AlgebraError::UnitIdeal => write!(f, "ideal contains a unit; quotient is the zero ring"),
            AlgebraError::ZeroDivisor { element, witness } => {
                write!(f, "{} is a zerodivisor (annihilated by {})", element, witness)
            }
            AlgebraError::NotCohenMacaulay(what) => {
                write!(f, "requires a Cohen-Macaulay ring: {}", what)
            }
            AlgebraError::HypothesisNotMet(msg) => write!(f, "hypothesis not met: {}", msg),
            AlgebraError::InvalidInput(msg) => write!(f, "invalid input: {}", msg),
            AlgebraError::CrossCheck(msg) => write!(f, "cross-check disagreement: {}", msg),
        }
    }
}

impl std::error::Error for AlgebraError {}

pub type Result<T> = std::result::Result<T, AlgebraError>;
