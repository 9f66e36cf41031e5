use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    InvalidModulus,

    #[error("residue {residue} is out of range for modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },

    /// An exceptional element at or above the threshold breaks the periodic
    /// rule; the caller has to raise the threshold first.
    #[error("element {element} lies at or above the threshold but is outside the periodic rule")]
    HoleAboveThreshold { element: i64 },

    #[error("operand is empty")]
    EmptyOperand,

    #[error("set is empty")]
    EmptySet,

    #[error("set is finite")]
    FiniteSet,

    #[error("invalid window [{lo}, {hi}]")]
    InvalidWindow { lo: i64, hi: i64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("set is not saturable: residue {residue} of an exceptional element is missing from the periodic part")]
    NotSaturable { residue: u64 },

    #[error("not a basis: {0}")]
    NotABasis(String),

    #[error("order exceeds cap {0}")]
    CapExceeded(u64),

    #[error("{element} is not an element of the basis")]
    XNotSubset { element: i64 },
}
