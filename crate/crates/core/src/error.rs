//! Error type shared by every module in this crate.

use alloc::string::String;
use core::fmt;

/// Failure cases of the geometric and metric operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input violates a structural precondition: too few sites, collinear
    /// point sets, empty masks, zero reference features.
    DegenerateInput(String),
    /// A parameter is outside its admissible range.
    InvalidArgument(String),
    /// A curve was evaluated outside its knot domain.
    OutOfDomain { t: f64, lo: f64, hi: f64 },
    /// The rational denominator vanished at the evaluation parameter.
    SingularWeight { t: f64 },
    /// A projective map sent a control point to infinity.
    ProjectiveDegenerate,
    /// An index refers outside the structure it addresses.
    OutOfBounds(String),
    /// The graph splits into more than one component where a connected
    /// graph is required.
    DisconnectedGraph { components: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateInput(msg) => write!(f, "degenerate input: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::OutOfDomain { t, lo, hi } => {
                write!(f, "parameter {t} outside curve domain [{lo}, {hi}]")
            }
            Error::SingularWeight { t } => {
                write!(f, "rational denominator vanished at t = {t}")
            }
            Error::ProjectiveDegenerate => {
                write!(f, "projective map sends a control point to infinity")
            }
            Error::OutOfBounds(msg) => write!(f, "index out of bounds: {msg}"),
            Error::DisconnectedGraph { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
        }
    }
}
