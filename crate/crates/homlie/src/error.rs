use thiserror::Error;

/// Library-wide error type. Mathematical *verdicts* (an axiom failing on
/// otherwise well-formed data) are not errors; they are reported through the
/// various report structs. Errors mean the requested computation is not
/// defined for the given input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("mode error: {0}")]
    Mode(String),

    /// The twist map is not invertible, so inverse-twist constructions
    /// (induced bracket, coboundaries, derivation identity) are undefined.
    #[error("twist map is not invertible")]
    NotRegular,

    /// The twist fails to preserve the bracket; witness is the first basis
    /// pair where multiplicativity breaks.
    #[error("twist does not preserve the bracket (witness pair ({i}, {j}))")]
    NotMultiplicative { i: usize, j: usize },

    #[error("map is not an automorphism (witness pair ({i}, {j}))")]
    NotAutomorphism { i: usize, j: usize },

    #[error("matrix is not a derivation (witness pair ({i}, {j}))")]
    NotDerivation { i: usize, j: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    /// The coboundary operators failed d∘d = 0; this indicates inconsistent
    /// input (e.g. a representation that only looks valid) and is surfaced
    /// instead of silently reporting dimensions.
    #[error("coboundary square is nonzero entering degree {k}")]
    DSquaredNonzero { k: usize },

    #[error("schema: {0}")]
    Schema(String),
}

impl Error {
    pub fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn mode(msg: impl Into<String>) -> Self {
        Error::Mode(msg.into())
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
}
