use thiserror::Error;

pub type Result<T, E = SimalError> = std::result::Result<T, E>;

/// Coarse failure category, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input or a structure that fails validation.
    Input,
    /// An internal cross-check disagreed: a property that must hold did not.
    Property,
    /// A size budget was exceeded.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimalError {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("malformed table for operation `{op}`: {detail}")]
    MalformedTable { op: String, detail: String },
    #[error("term parse error: {0}")]
    TermParse(String),
    #[error("not a Mal'tsev term: {identity} fails at (x, y) = ({x}, {y}): got {got}, expected {expected}")]
    NotMaltsev {
        identity: &'static str,
        x: usize,
        y: usize,
        got: usize,
        expected: usize,
    },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a congruence: {0}")]
    NotCongruence(String),
    #[error("relational composite is not the join: {0}")]
    JoinNotComposite(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("image relation is not transitive: {0}")]
    NotTransitive(String),
    #[error("square does not commute: {0}")]
    NotCommuting(String),
    #[error("square edge is not a regular epimorphism: {0}")]
    NotRegularEpi(String),
    #[error("limit is empty although the signature has constants: {0}")]
    InconsistentConstants(String),
    #[error(
        "simplicial identity violated at level {level}: {identity} (witness element {witness})"
    )]
    IdentityViolated {
        level: usize,
        identity: String,
        witness: usize,
    },
    #[error("malformed simplicial data: {0}")]
    MalformedSimplicial(String),
    #[error("level {level} would have {size} elements, above the budget of {budget}")]
    LevelTooLarge {
        level: usize,
        size: usize,
        budget: usize,
    },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported variety: {0}")]
    UnsupportedVariety(String),
    #[error("not an internal groupoid: {0}")]
    NotAGroupoid(String),
    #[error("H1 candidates disagree: {0}")]
    TripleEqualityViolated(String),
    #[error("induced composition is ill-defined: {0}")]
    CompositionIllDefined(String),
    #[error("morphism is not levelwise surjective (level {level})")]
    NotLevelwiseSurjective { level: usize },
    #[error("homotopy relation differs from H1: {0}")]
    HomotopyMismatch(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("no central quotient found: {0}")]
    NoCentralQuotient(String),
    #[error("property violated: {0}")]
    PropertyViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl SimalError {
    pub fn kind(&self) -> ErrorKind {
        use SimalError::*;
        match self {
            LevelTooLarge { .. } | BudgetExceeded(_) => ErrorKind::Budget,
            JoinNotComposite(_)
            | NotTransitive(_)
            | TripleEqualityViolated(_)
            | CompositionIllDefined(_)
            | HomotopyMismatch(_)
            | NoCentralQuotient(_)
            | PropertyViolation(_) => ErrorKind::Property,
            _ => ErrorKind::Input,
        }
    }
}

impl From<serde_json::Error> for SimalError {
    fn from(e: serde_json::Error) -> Self {
        SimalError::Parse(e.to_string())
    }
}

impl From<std::io::Error> for SimalError {
    fn from(e: std::io::Error) -> Self {
        SimalError::Io(e.to_string())
    }
}
