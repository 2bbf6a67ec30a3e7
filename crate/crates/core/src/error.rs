use thiserror::Error;

use crate::segment::{Multisegment, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid segment [{a};{b}]: right endpoint must be at least a - 1")]
    InvalidSegment { a: i64, b: i64 },

    #[error("degenerate segment {0}: operation needs a nonempty segment")]
    DegenerateSegment(Segment),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not regular: {kind} endpoint {value} is repeated")]
    NotRegular { kind: &'static str, value: i64 },

    #[error("not a permutation of 1..{n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("enumeration bound exceeded: N = {n} > {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("permutation {sigma} contains pattern {pattern} at positions {positions:?}")]
    PatternViolation {
        sigma: String,
        pattern: String,
        positions: Vec<usize>,
    },

    #[error("sigma_0 undefined: no free row at or below {bound} for column {column}")]
    Sigma0Undefined { column: usize, bound: usize },

    #[error("formula not certified for this multisegment: {0}")]
    NotCertified(Multisegment),

    #[error("segment Delta_N unlinked; use the split Z(m) = Z(m\\Delta_N) x Z(Delta_N)")]
    UnlinkedBottom,

    #[error("segment Delta_1 unlinked; use the split Z(m) = Z(Delta_1) x Z(m\\Delta_1)")]
    UnlinkedTop,

    #[error("segments of the index set do not form a ladder: {0}")]
    IndexSetNotLadder(Multisegment),

    #[error("degenerate neighbor segments {segments:?} (b < a - 1) for source {source_m}")]
    DegenerateNeighbor {
        source_m: Multisegment,
        segments: Vec<(i64, i64)>,
    },

    #[error("identical_line_side: neither lines coincide, 3412 witness present")]
    NoIdenticalLines,

    #[error("Y_{{{i},{p}}} is not a valid loop-weight variable: {reason}")]
    InvalidLoopVariable {
        i: i64,
        p: i64,
        reason: &'static str,
    },

    #[error("invalid rank {0}: need k >= 2")]
    InvalidRank(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
