use alloc::string::String;

/// Errors produced by the core estimators and simulators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("rule number {0} is outside 0..=255")]
    RuleOutOfRange(u32),

    #[error("grid needs width >= 3 and steps >= 1 (got width {width}, steps {steps})")]
    GridShape { width: usize, steps: usize },

    #[error("history length must be at least 1")]
    ZeroHistory,

    #[error("a history of length {k} ending at index {t} is not available")]
    InsufficientHistory { k: usize, t: usize },

    #[error("joint state space does not fit in 128 bits")]
    StateSpaceOverflow,

    #[error("variable `{name}` needs arity >= 2 (got {arity})")]
    ArityTooSmall { name: String, arity: u64 },

    #[error("symbol {value} is out of range for variable `{name}` (arity {arity})")]
    SymbolOutOfRange {
        name: String,
        value: u64,
        arity: u64,
    },

    #[error("sample has {got} values but {expected} variables are declared")]
    TupleLength { expected: usize, got: usize },

    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("variable specifications differ")]
    SpecMismatch,

    #[error("cannot mix counted and analytic distributions")]
    WeightingMismatch,

    #[error("configuration has zero probability")]
    ZeroProbability,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable index {0} is out of range")]
    VariableIndex(usize),

    #[error("variable `{0}` is used in more than one role")]
    OverlappingVariables(String),

    #[error("variable set must not be empty")]
    EmptyVariableSet,

    #[error("invalid dynamics configuration: {0}")]
    InvalidConfig(String),

    #[error("source count {0} is outside the supported range 1..=5")]
    SourceCount(usize),

    #[error("invalid antichain: {0}")]
    InvalidAntichain(String),

    #[error("invalid probability table: {0}")]
    InvalidProbabilities(String),
}

pub type Result<T> = core::result::Result<T, Error>;
