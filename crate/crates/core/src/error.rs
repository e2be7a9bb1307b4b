use thiserror::Error;

/// Errors surfaced by group construction, linear algebra and cohomology layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u32),

    #[error("prime {0} exceeds the supported bound {1} for this operation")]
    PrimeTooLarge(u32, u32),

    #[error("enumeration cap {cap} exceeded while generating group closure")]
    CapExceeded { cap: usize },

    #[error("element is not central: does not commute with generator #{witness_gen}")]
    NonCentral { witness_gen: usize },

    #[error("element does not lie in the group")]
    NotInGroup,

    #[error("generator images do not extend to a homomorphism; witness: generator words {word_a:?} and {word_b:?} agree in the source but not in the target")]
    HomRelationViolated {
        word_a: Vec<usize>,
        word_b: Vec<usize>,
    },

    #[error("expected one image per generator: {expected} generators, {got} images")]
    HomImageCountMismatch { expected: usize, got: usize },

    #[error("operands belong to different rings or groups")]
    ContextMismatch,

    #[error("resolution resource cap exceeded: {0}")]
    ResolutionCap(String),

    #[error("bar-complex budget exceeded: {0}")]
    BarBudget(String),

    #[error("degree {0} out of range for table truncated at {1}")]
    DegreeOutOfRange(usize, usize),

    #[error("group is not elementary abelian")]
    NotElementaryAbelian,

    #[error("symbolic ring has the wrong shape: {0}")]
    RingShape(String),

    #[error("spectral sequence position ({0},{1}) is not certified stable")]
    Uncertified(i64, i64),

    #[error("spectral sequence configuration inconsistent: {0}")]
    SsConfig(String),

    #[error("character is not constant on central cosets of the stored quotient")]
    CharacterNotInvariant,

    #[error("inner product is not an exact integer (signals a bug)")]
    NonIntegralInnerProduct,

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
