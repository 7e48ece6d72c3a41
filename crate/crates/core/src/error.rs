use thiserror::Error;

use crate::roots::Weight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group configuration: {0}")]
    InvalidConfig(String),

    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WrongLength {
        weight: String,
        got: usize,
        expected: usize,
    },

    #[error("cannot parse weight {0:?}")]
    ParseWeight(String),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is not restricted")]
    NotRestricted(Weight),

    #[error("weight {lower} is not below {upper} in dominance order")]
    NotBelow { lower: Weight, upper: Weight },

    #[error("no simple character available for restricted weight {0}")]
    MissingRow(Weight),

    #[error("decomposition of {lambda} has negative multiplicity {value} at {nu}")]
    NegativeMultiplicity {
        lambda: Weight,
        nu: Weight,
        value: i64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("golden data {table}: row {row}, column {col}: {msg}")]
    GoldenFormat {
        table: String,
        row: usize,
        col: usize,
        msg: String,
    },

    #[error("golden data {0}: {1}")]
    GoldenParse(String, serde_json::Error),

    #[error("resource guard: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
