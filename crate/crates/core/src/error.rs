use thiserror::Error;

/// Errors raised across the toolkit. Job and machine indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sizes not sorted: p_{index} < p_{}", index + 1)]
    SortOrderViolation { index: usize },

    #[error("negative size at job {index}")]
    NegativeSize { index: usize },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("machine index {machine} outside 1..={m}")]
    BadMachineIndex { machine: usize, m: usize },

    #[error("residue map has no machine for residue {residue}")]
    IncompleteResidueMap { residue: usize },

    #[error("operation defined for two machines only, got m = {0}")]
    NotTwoMachines(usize),

    #[error("no built-in solution pair for m = {0} (supported: 2..=5)")]
    UnsupportedM(usize),

    #[error("{n} positive jobs exceed the search limit {limit}")]
    SearchLimitExceeded { n: usize, limit: usize },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("n = {n} is not divisible by {divisor}")]
    DivisibilityViolation { n: u64, divisor: u64 },

    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("invalid machine count m = {0}")]
    BadM(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
