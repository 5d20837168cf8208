//! Error types shared across the crate.

use thiserror::Error;

/// Witness for a span that fails the two-sided discrete fibration conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TsdfWitness {
    /// No lift, or more than one lift, of `arrow` (in the codomain-side
    /// category) against `object` with identity image on the other leg.
    RightLift { object: String, arrow: String, count: usize },
    /// Dual failure for an arrow of the domain-side category.
    LeftLift { object: String, arrow: String, count: usize },
    /// `morphism` of the total category is not the composite of the
    /// canonical lifts of its two images.
    Factorization { morphism: String },
}

impl std::fmt::Display for TsdfWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TsdfWitness::RightLift { object, arrow, count } => write!(
                f,
                "arrow {arrow} has {count} lifts against {object} with identity left image (expected 1)"
            ),
            TsdfWitness::LeftLift { object, arrow, count } => write!(
                f,
                "arrow {arrow} has {count} lifts from {object} with identity right image (expected 1)"
            ),
            TsdfWitness::Factorization { morphism } => write!(
                f,
                "morphism {morphism} is not the composite of the lifts of its images"
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    // Category validation
    #[error("dangling reference: {0}")]
    DanglingRef(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("missing composite for composable pair: {second} after {first}")]
    MissingComposite { second: String, first: String },
    #[error("composition table entry ({second} o {first}) = {value} is not composable or has wrong endpoints")]
    BadComposite { second: String, first: String, value: String },
    #[error("associativity violated on triple ({h}, {g}, {f}): ({h} o {g}) o {f} != {h} o ({g} o {f})")]
    AssocViolation { h: String, g: String, f: String },
    #[error("identity law violated at morphism {0}")]
    IdentityViolation(String),

    // Functors and naturals
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("functors are not parallel: {0}")]
    NotParallel(String),
    #[error("naturality violated at morphism {0}")]
    NaturalityViolation(String),

    // Modules and cells
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("middle category mismatch: {0}")]
    MiddleMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("action table not total: {0}")]
    ActionNotTotal(String),
    #[error("action law violated: {0}")]
    ActionLawViolation(String),
    #[error("span is not a two-sided discrete fibration: {0}")]
    NotDiscreteFibration(TsdfWitness),
    #[error("cell does not have identity vertical boundary: {0}")]
    NonIdentityBoundary(String),
    #[error("boundary shape does not admit this transposition: {0}")]
    ShapeMismatch(String),

    // Kan machinery
    #[error("internal oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),

    // Enumeration and IO
    #[error("enumeration budget exceeded (limit {limit}) in {operation}")]
    EnumerationBudgetExceeded { operation: String, limit: u64 },
    #[error("parse error in {path}: {message}")]
    ParseError { path: String, message: String },
    #[error("validation error for {name} in {path}: {source}")]
    ValidationError {
        name: String,
        path: String,
        #[source]
        source: Box<Error>,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code contract: 2 for input/validation errors, 3 for budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EnumerationBudgetExceeded { .. } => 3,
            _ => 2,
        }
    }
}
