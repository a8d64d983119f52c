use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a supported prime (2 <= p <= 251)")]
    InvalidPrime(u32),

    #[error("value {value} is out of range for modulus {p}")]
    ValueOutOfRange { value: u32, p: u32 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrix is not alternating at ({i}, {j})")]
    NotAlternating { i: usize, j: usize },

    #[error("vectors are linearly dependent")]
    DependentBasis,

    #[error("matrix is not an extension of the given prefix")]
    PrefixMismatch,

    #[error("vector is not in the kernel of the form")]
    NotInKernel,

    #[error("operation requires characteristic 2 (got p = {0})")]
    RequiresCharacteristicTwo(u32),

    #[error("dimension {dim} exceeds the configured bound {bound}")]
    SizeBound { dim: u128, bound: u128 },

    #[error("kernel dimension {dim} exceeds the enumeration bound {bound}")]
    KernelTooLarge { dim: usize, bound: usize },

    #[error("invariant constraint violated: {0}")]
    InvariantConstraint(String),

    #[error("reducible representation: kernel word {index} is not scalar, invariant undefined")]
    Reducible { index: usize },

    #[error("kernel bases differ")]
    BasisMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
