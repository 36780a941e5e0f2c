use thiserror::Error;

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ErrorClass {
    /// The input is well formed but outside the domain of the operation.
    Domain,
    /// Syntax or typing problems in the input.
    Input,
    /// The evaluator ran out of steps.
    Budget,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound variable `{name}`")]
    UnboundVariable { name: String },

    #[error("type mismatch in `{term}`: expected {expected}, found {actual}")]
    TypeMismatch {
        term: String,
        expected: String,
        actual: String,
    },

    #[error("expected {expected} term(s), got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("formula is not ∃-free: offending subformula `{subformula}`")]
    NotExistsFree { subformula: String },

    #[error("formula is not in Γ1: offending subformula `{subformula}`")]
    NotGamma1 { subformula: String },

    #[error("expected a sentence of the form !x. ?y. A, found `{found}` at {position}")]
    NotForallExists { position: String, found: String },

    #[error("formula is not quantifier-free: `{subformula}`")]
    NotQuantifierFree { subformula: String },

    #[error("expected a closed {what}, free variables: {vars}")]
    NotClosed { what: &'static str, vars: String },

    #[error("step budget of {budget} exhausted; partial result: {partial}")]
    StepBudgetExceeded { budget: u64, partial: String },

    #[error("unsupported shape: {reason}")]
    ShapeUnsupported { reason: String },

    #[error("{count} instances exceed the cap of {cap}")]
    InstanceCapExceeded { count: u128, cap: u64 },

    /// An elaboration error tied to a source position.
    #[error("{line}:{column}: {inner}")]
    Located {
        line: usize,
        column: usize,
        inner: Box<Error>,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Located { inner, .. } => inner.class(),
            Error::Syntax { .. } | Error::UnboundVariable { .. } | Error::TypeMismatch { .. } => {
                ErrorClass::Input
            }
            Error::StepBudgetExceeded { .. } => ErrorClass::Budget,
            _ => ErrorClass::Domain,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Located { inner, .. } => inner.kind(),
            Error::Syntax { .. } => "SyntaxError",
            Error::UnboundVariable { .. } => "UnboundVariable",
            Error::TypeMismatch { .. } => "TypeMismatch",
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::NotExistsFree { .. } => "NotExistsFree",
            Error::NotGamma1 { .. } => "NotGamma1",
            Error::NotForallExists { .. } => "NotForallExists",
            Error::NotQuantifierFree { .. } => "NotQuantifierFree",
            Error::NotClosed { .. } => "NotClosed",
            Error::StepBudgetExceeded { .. } => "StepBudgetExceeded",
            Error::ShapeUnsupported { .. } => "ShapeUnsupported",
            Error::InstanceCapExceeded { .. } => "InstanceCapExceeded",
        }
    }

    /// Strips any position wrapper.
    pub fn unlocated(&self) -> &Error {
        match self {
            Error::Located { inner, .. } => inner.unlocated(),
            other => other,
        }
    }

    pub(crate) fn mismatch(
        term: impl ToString,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Error {
        Error::TypeMismatch {
            term: term.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
