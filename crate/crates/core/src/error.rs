use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at t = 0")]
    NonUnitConstant,
    #[error("no rational function with numerator degree <= {num_bound} and denominator degree <= {den_bound} matches the series")]
    NoSolution { num_bound: usize, den_bound: usize },
    #[error("series of order {order} cannot determine a rational function with degree bounds ({num_bound}, {den_bound}); need order >= {needed}")]
    AmbiguousData {
        order: usize,
        num_bound: usize,
        den_bound: usize,
        needed: usize,
    },
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("group of order {order} is too large for subgroup enumeration (limit {limit})")]
    TooLarge { order: usize, limit: usize },
    #[error("Molien sum is not rational: {0}")]
    NonRationalResult(String),
    #[error("trace vanishes at infinity to order {found}, expected AS index {expected}")]
    IndexMismatch { expected: i64, found: i64 },
    #[error("normal element {index} is not normal: {detail}")]
    NotNormal { index: usize, detail: String },
    #[error("regularity violated at degree {degree} (normal element {index})")]
    NotRegular { index: usize, degree: usize },
    #[error("matrix does not induce an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
