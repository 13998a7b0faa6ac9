use num_bigint::BigUint;
use thiserror::Error;

use crate::forge::FlagStats;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: String },
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    #[error("invalid point configuration: {0}")]
    InvalidConfig(String),
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("point does not lie on {0}")]
    NotOnVariety(&'static str),
    /// The rational map is undefined at the given point.
    #[error("indeterminate point: {0}")]
    Indeterminate(&'static str),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(&'static str),
    #[error("degenerate twist: f vanishes at the base node")]
    DegenerateTwist,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("no usable witness after {attempts} attempts ({stats})")]
    ConstructionFailure { attempts: usize, stats: FlagStats },
    #[error("search box holds {estimate} candidates, above the ceiling of {ceiling}")]
    SearchTooLarge { estimate: BigUint, ceiling: u64 },
}
