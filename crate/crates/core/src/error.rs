use alloc::string::String;

use crate::exactq::Rat;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("fixed point index {0} is out of range (expected 0, 1 or 2)")]
    FixedPointOutOfRange(usize),
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at t = {0}")]
    Pole(Rat),
    #[error("cannot parse rational {0:?}")]
    ParseRat(String),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("malformed localisation graph: {0}")]
    MalformedGraph(String),
    #[error("invalid multi-degree: {0}")]
    InvalidMultiDegree(String),
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: usize, edge: usize },
    #[error("ψ-integral needs at least three markings, got n = {0}")]
    UnstableModuli(usize),
    #[error("exponent vector has {len} entries but only {n} markings")]
    TooManyExponents { len: usize, n: usize },
    #[error("flag weight is zero")]
    ZeroFlagWeight,
    #[error("{op} needs at least {min} flags, got {got}")]
    TooFewFlags {
        op: &'static str,
        min: usize,
        got: usize,
    },
    #[error("adjacent vertices carry the same fixed point p{0}")]
    LabelClash(usize),
    #[error("sum for multi-degree {mdeg} is not constant in the torus weights")]
    NotConstant { mdeg: String },
    #[error("degeneration pictures are only solved in degrees 2 and 3, got {0}")]
    UnsupportedDegree(u32),
    #[error("degeneration balance is unsolvable: {0}")]
    InconsistentTable(String),
}
