use thiserror::Error;

use crate::scalar::{Field, Scalar};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error(
        "associativity fails at (b{i} b{j}) b{k}: {} != {}",
        fmt_coords(.left),
        fmt_coords(.right)
    )]
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    },

    #[error("unit law fails for basis element b{0}")]
    UnitViolation(usize),

    #[error("element or tensor does not belong to this algebra")]
    AlgebraMismatch,

    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,

    #[error("map does not send the unit to the unit")]
    NotUnital,

    #[error("map is not multiplicative on b{i} * b{j}")]
    NotMultiplicative { i: usize, j: usize },

    #[error("morphism is not a verified isomorphism")]
    NotAnIsomorphism,

    #[error("tensor is not an invariant of the algebra (fails for b{0})")]
    NotInvariant(usize),

    #[error("path algebra is infinite dimensional: {0}")]
    InfiniteDimensional(String),

    #[error("unsupported field {0} for this operation")]
    UnsupportedField(Field),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: {source}")]
    Located {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Strips file positions.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn at(self, line: usize) -> Error {
        match self {
            e @ (Error::Syntax { .. } | Error::Located { .. }) => e,
            e => Error::Located {
                line,
                source: Box::new(e),
            },
        }
    }
}

fn fmt_coords(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(", "))
}
