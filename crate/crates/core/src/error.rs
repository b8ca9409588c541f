use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names double as the stable diagnostic identifiers printed by the
/// command line front end (see [`Error::name`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of the element is negative, it has no residue")]
    NegativeValuation,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("expansion base must be monic of positive degree")]
    NonMonicPhi,
    #[error("polynomial has a coefficient of negative valuation")]
    NonIntegralPhi,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial has a coefficient of negative valuation")]
    NonIntegral,
    #[error("not a key polynomial over the given valuation")]
    NotAKeyPolynomial,
    #[error("augmentation value {0} does not exceed the current value {1}")]
    LambdaTooSmall(String, String),
    #[error("value groups are not nested")]
    IncompatibleValueGroups,
    #[error("polynomial splits over the completion")]
    NotIrreducibleOverCompletion,
    #[error("a residual factor of degree {0} needs an unramified extension of the residue field")]
    UnramifiedExtensionRequired(usize),
    #[error("key polynomial degree exceeds the degree of the polynomial")]
    DegreeMismatch,
    #[error("endpoints must satisfy from > to >= 0")]
    InvalidEndpoints,
    #[error("last augmentation value lies in the value group of the truncation")]
    LambdaInValueGroup,
    #[error("vertex set violates the fiber relation")]
    FiberRelationViolated,
    #[error("valuation set is not part of the full resolution")]
    NotASubset,
    #[error("contraction is not one of the canonical types")]
    UnsupportedContraction,
    #[error("a linear polynomial already defines a regular divisor")]
    DegreeTooSmall,
    #[error("the root does not have positive valuation")]
    RootNotPositive,
    #[error("base field mismatch: {0}")]
    BaseMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier, with the payload for errors that carry a number.
    pub fn name(&self) -> String {
        match self {
            Error::NegativeValuation => "NegativeValuation".into(),
            Error::ZeroPolynomial => "ZeroPolynomial".into(),
            Error::DivisionByZeroPoly => "DivisionByZeroPoly".into(),
            Error::NonMonicPhi => "NonMonicPhi".into(),
            Error::NonIntegralPhi => "NonIntegralPhi".into(),
            Error::NonMonic => "NonMonic".into(),
            Error::NonIntegral => "NonIntegral".into(),
            Error::NotAKeyPolynomial => "NotAKeyPolynomial".into(),
            Error::LambdaTooSmall(..) => "LambdaTooSmall".into(),
            Error::IncompatibleValueGroups => "IncompatibleValueGroups".into(),
            Error::NotIrreducibleOverCompletion => "NotIrreducibleOverCompletion".into(),
            Error::UnramifiedExtensionRequired(d) => format!("UnramifiedExtensionRequired({d})"),
            Error::DegreeMismatch => "DegreeMismatch".into(),
            Error::InvalidEndpoints => "InvalidEndpoints".into(),
            Error::LambdaInValueGroup => "LambdaInValueGroup".into(),
            Error::FiberRelationViolated => "FiberRelationViolated".into(),
            Error::NotASubset => "NotASubset".into(),
            Error::UnsupportedContraction => "UnsupportedContraction".into(),
            Error::DegreeTooSmall => "DegreeTooSmall".into(),
            Error::RootNotPositive => "RootNotPositive".into(),
            Error::BaseMismatch(_) => "BaseMismatch".into(),
            Error::Parse(_) => "ParseError".into(),
        }
    }

    /// Input that could not be read, as opposed to a mathematical obstruction.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::BaseMismatch(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
