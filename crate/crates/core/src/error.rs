use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base field order {0} is not prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("extension degree {degree} exceeds the configured cap of {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("modulus must have {expected} coefficients (degree {degree}), found {found}")]
    ModulusLength {
        expected: usize,
        degree: usize,
        found: usize,
    },

    #[error("modulus is not monic")]
    ModulusNotMonic,

    #[error("modulus is reducible: divisible by {factor:?}")]
    ModulusReducible { factor: Vec<u32> },

    #[error("coefficient {value} is not an element of F_{q}")]
    CoefficientOutOfRange { value: u32, q: u32 },

    #[error("value {value} is not an element of a field of order {order}")]
    NotInField { value: u64, order: u64 },

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("basis elements are linearly dependent over the base field")]
    DependentBasis,

    #[error("no normal element found; the field tables are inconsistent")]
    NoNormalElement,

    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    ShapeMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("defining vector has rank {rank} over the base field, need {needed}")]
    DependentDefiningVector { rank: usize, needed: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error(
        "field-size restriction violated: need degree s >= {required}, field has s = {actual}"
    )]
    FieldTooSmall { required: usize, actual: usize },

    #[error("rate restriction violated: {0}")]
    RateRestriction(String),

    #[error("generator existence precondition violated: {0}")]
    GeneratorPrecondition(String),

    #[error(
        "no full-rank generator selection found (row kernel dimension {kernel_dim}, \
         bottom kernel dimension {bottom_dim})"
    )]
    NoFullRankSelection {
        kernel_dim: usize,
        bottom_dim: usize,
    },

    #[error("construction check failed: {0}")]
    Verification(String),

    #[error("enumeration of {required} items exceeds the limit of {limit}")]
    EnumerationTooLarge { required: u128, limit: u128 },

    #[error("trellis budget exceeded: {what} needs {required}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
    },

    #[error("order must be at least 1")]
    InvalidOrder,

    #[error("no codeword paths exist for any computed order")]
    EmptyProfile,

    #[error("window [{start}, {end}] is unusable: {reason}")]
    InvalidWindow {
        start: usize,
        end: usize,
        reason: String,
    },

    #[error("record error: {0}")]
    Record(String),
}

pub(crate) fn shape(context: &'static str, expected: impl ToString, found: impl ToString) -> Error {
    Error::ShapeMismatch {
        context,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
