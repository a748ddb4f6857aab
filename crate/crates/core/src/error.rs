//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong in the computation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Attempted to invert the zero element of a field.
    #[error("cannot invert zero")]
    ZeroInversion,

    /// A square-class or squareness query was made on zero.
    #[error("zero has no square class")]
    ZeroInput,

    /// A field characteristic that is not 0 and not an odd prime.
    #[error("field characteristic must be 0 or an odd prime, got {0}")]
    EvenCharacteristic(u64),

    /// Operands live over different coefficient fields.
    #[error("operands belong to different fields")]
    FieldMismatch,

    /// Operands disagree on the number of ambient variables.
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// More variables than the dense monomial representation supports.
    #[error("at most {max} variables supported, got {got}")]
    TooManyVariables { max: usize, got: usize },

    /// An S-polynomial of a zero polynomial was requested.
    #[error("S-polynomial of the zero polynomial")]
    ZeroPolynomial,

    /// A map component does not vanish at the origin.
    #[error("component {0} has a nonzero constant term")]
    ConstantTermNonzero(usize),

    /// Quotient dimensions did not stabilize below the cap: the zero is
    /// either not isolated or the cap is too small.
    #[error("quotient dimension did not stabilize below K = {k_cap}; zero may not be isolated")]
    NotIsolatedOrCapExceeded { k_cap: u32 },

    /// Congruence diagonalization was handed a singular matrix.
    #[error("matrix is singular")]
    SingularInput,

    /// A linear change of coordinates must be invertible.
    #[error("linear map is singular")]
    SingularMatrix,

    /// A row operation referenced an index out of range or i = j.
    #[error("invalid component indices")]
    IndexError,

    /// Dimension reduction needs some component with a linear term.
    #[error("ideal is contained in the square of the maximal ideal; no variable can be eliminated")]
    NoLinearPart,

    /// Dimension reduction needs at least two variables.
    #[error("cannot eliminate a variable from a one-variable map")]
    DimensionTooSmall,

    /// Rejection sampling gave up.
    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: u32 },

    /// A condition the theory guarantees failed to hold; indicates a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInvariantViolation(msg.into())
    }
}
