use thiserror::Error;

use crate::rootsystem::{Basis, LieType};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("type {0} has no classical coordinates")]
    NoClassicalCoords(LieType),
    #[error("expected {expected} coordinates for {lie_type} in the {basis} basis, got {got}")]
    BadLength {
        lie_type: LieType,
        basis: Basis,
        expected: usize,
        got: usize,
    },
    #[error("type A classical coordinates must sum to zero: {0:?}")]
    NonzeroSum(Vec<i64>),
    #[error("not integral in the {basis} basis: {witness}")]
    NonIntegral { basis: Basis, witness: String },
    #[error("mixed types {0} and {1}")]
    TypeMismatch(LieType, LieType),
    #[error("{0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not small")]
    NotSmall(String),
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("unknown orbit {0}")]
    UnknownOrbit(String),
    #[error("{0} is not supported for type {1}")]
    Unsupported(&'static str, LieType),
    #[error("rank {rank} exceeds the bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inverse support exceeds truncation bound {0}")]
    Truncation(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("table data, line {line}: {msg}")]
    Data { line: usize, msg: String },
    #[error("table data failed to load: {0}")]
    Load(String),
    #[error("missing table record: {0}")]
    MissingRecord(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
