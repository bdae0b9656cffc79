//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while configuring, typing, evaluating, or
/// comparing programs. Every variant carries enough context to print a
/// useful one-line message; machine-readable codes come from [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two quantale elements (or a config pair) from different quantales.
    QuantaleMismatch { expected: String, found: String },
    /// A CBE application or combination that leaves the scalar family.
    CbeUnsupported(String),
    /// Lexical or syntactic error with 1-based position.
    Parse { line: usize, col: usize, msg: String },
    /// Reference to a variable not in scope.
    UnboundVariable(String),
    /// The subject does not have the required type.
    TypeMismatch { expected: String, found: String, context: String },
    /// A sensitivity annotation is below the inferred demand.
    SensitivityTooLow { var: String, declared: String, demanded: String },
    /// Operation symbol unknown, wrong arity, or not interpretable on the monad.
    BadOperation(String),
    /// A monadic value of the wrong monad for the requested operation.
    MonadMismatch { expected: String, found: String },
    /// Transport problem with unequal total masses.
    UnbalancedTransport { left: String, right: String },
    /// V-relation composition or relator application over mismatched carriers.
    CarrierMismatch(String),
    /// `lub` called on a non-ascending list.
    NotAChain,
    /// Invalid flag/config combination.
    InvalidConfig(String),
    /// Derived-form name not recognised.
    UnknownDerived(String),
}

impl Error {
    /// Stable machine-readable code for CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::QuantaleMismatch { .. } => "quantale-mismatch",
            Error::CbeUnsupported(_) => "cbe-unsupported",
            Error::Parse { .. } => "parse-error",
            Error::UnboundVariable(_) => "unbound-variable",
            Error::TypeMismatch { .. } => "type-mismatch",
            Error::SensitivityTooLow { .. } => "sensitivity-too-low",
            Error::BadOperation(_) => "bad-operation",
            Error::MonadMismatch { .. } => "monad-mismatch",
            Error::UnbalancedTransport { .. } => "unbalanced-transport",
            Error::CarrierMismatch(_) => "carrier-mismatch",
            Error::NotAChain => "not-a-chain",
            Error::InvalidConfig(_) => "invalid-config",
            Error::UnknownDerived(_) => "unknown-derived",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::QuantaleMismatch { expected, found } => {
                write!(f, "quantale mismatch: expected {expected}, found {found}")
            }
            Error::CbeUnsupported(msg) => write!(f, "unsupported CBE: {msg}"),
            Error::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            Error::UnboundVariable(x) => write!(f, "unbound variable '{x}'"),
            Error::TypeMismatch { expected, found, context } => {
                write!(f, "type mismatch in {context}: expected {expected}, found {found}")
            }
            Error::SensitivityTooLow { var, declared, demanded } => write!(
                f,
                "variable '{var}' declared with sensitivity {declared} but at least {demanded} is demanded"
            ),
            Error::BadOperation(msg) => write!(f, "bad operation: {msg}"),
            Error::MonadMismatch { expected, found } => {
                write!(f, "monad mismatch: expected {expected}, found {found}")
            }
            Error::UnbalancedTransport { left, right } => {
                write!(f, "unbalanced transport problem: masses {left} vs {right}")
            }
            Error::CarrierMismatch(msg) => write!(f, "carrier mismatch: {msg}"),
            Error::NotAChain => write!(f, "input list is not an ascending chain"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::UnknownDerived(name) => write!(f, "unknown derived form '{name}'"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
