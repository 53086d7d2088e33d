//! Error type shared by every module of the crate.

use crate::object::ObjectList;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("type mismatch: expected boundary {expected}, found {found}")]
    TypeMismatch { expected: ObjectList, found: ObjectList },

    #[error("theory mismatch: {0} vs {1}")]
    TheoryMismatch(&'static str, &'static str),

    #[error("theory is not symmetric: no braiding available")]
    NotSymmetric,

    #[error("theory is not cartesian: {0}")]
    NotCartesian(&'static str),

    #[error("hom set is not enumerable here: {0}")]
    NotEnumerable(String),

    #[error("equality of free terms is undecided without an interpretation")]
    FreeEqualityUndecided,

    #[error("missing generator `{0}` in interpretation")]
    MissingGenerator(String),

    #[error("generator `{name}` arity mismatch: declared {declared}, interpreted {interpreted}")]
    ArityMismatch { name: String, declared: String, interpreted: String },

    #[error("hole index {index} out of range (element has {holes} holes)")]
    HoleIndex { index: usize, holes: usize },

    #[error("element has shape {found}, operation expects {expected}")]
    ShapeMismatch { expected: String, found: String },

    #[error("supplied factorization does not recompose to the context")]
    BadFactorization,

    #[error("stochastic row {row} sums to {sum}, expected 1")]
    RowSum { row: usize, sum: String },

    #[error("table entry {entry} at position {position} exceeds codomain carrier {carrier}")]
    TableEntry { entry: usize, position: usize, carrier: usize },

    #[error("party `{party}` stage {stage}: {reason}")]
    StageBoundary { party: String, stage: usize, reason: String },

    #[error("stage count mismatch: {0} vs {1}")]
    StageCount(usize, usize),

    #[error("channel for stage {stage} has type {found}, hole expects {expected}")]
    ChannelType { stage: usize, expected: String, found: String },

    #[error("protocol file: {0}")]
    Protocol(String),

    #[error("presentation: {0}")]
    Presentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
