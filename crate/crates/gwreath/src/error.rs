//! Error type shared by every module, with stable machine-readable codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("{what}: size {actual} exceeds guard {limit}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("degree cap {cap} exceeded: {detail}")]
    DegreeCap { cap: usize, detail: String },

    #[error("memory budget {budget} bytes exceeded: {context} needs {required} more bytes")]
    MemoryBudget {
        budget: u64,
        required: u64,
        context: String,
    },

    #[error("group order {order} exceeds oracle cap {cap}")]
    OrderGuard { cap: u64, order: String },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("tree is not prefix-closed: missing node {missing}")]
    NotPrefixClosed { missing: String },

    #[error("unknown builtin group {0:?}")]
    UnknownGroup(String),

    #[error("poset is not a linear order")]
    NotLinear,

    #[error("subset is not downward closed: contains {above} but not {below} <= {above}")]
    NotDownwardClosed { below: usize, above: usize },

    #[error(
        "quotient action not well defined for gamma {gamma:?}: generator {generator} maps \
         configs {config_a} and {config_b} of one class into different classes"
    )]
    WellDefinednessViolation {
        gamma: Vec<usize>,
        generator: String,
        config_a: usize,
        config_b: usize,
    },

    #[error("given elements do not generate the group")]
    GeneratorsDoNotGenerate,

    #[error("{what}: index {index} out of bounds {bound}")]
    BadIndex {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("truncated tree has no declared branch")]
    BranchMissing,

    #[error("declared branch leaves the tree at prefix {prefix:?}")]
    BranchLeavesTree { prefix: Vec<u32> },

    #[error("output format {format:?} is not supported by `{command}`")]
    FormatUnsupported { format: String, command: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// How a failure maps onto a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: exit 2.
    Validation,
    /// A cap or resource budget was hit: exit 3.
    Resource,
}

impl Error {
    /// Stable identifier for machine-parseable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPoset(_) => "invalid-poset",
            Error::SizeGuard { .. } => "size-guard",
            Error::DegreeCap { .. } => "degree-cap",
            Error::MemoryBudget { .. } => "memory-budget",
            Error::OrderGuard { .. } => "order-guard",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::Parse(_) => "parse",
            Error::NotPrefixClosed { .. } => "not-prefix-closed",
            Error::UnknownGroup(_) => "unknown-group",
            Error::NotLinear => "not-linear",
            Error::NotDownwardClosed { .. } => "not-downward-closed",
            Error::WellDefinednessViolation { .. } => "well-definedness-violation",
            Error::GeneratorsDoNotGenerate => "generators-do-not-generate",
            Error::BadIndex { .. } => "bad-index",
            Error::BranchMissing => "branch-missing",
            Error::BranchLeavesTree { .. } => "branch-leaves-tree",
            Error::FormatUnsupported { .. } => "format-unsupported",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::SizeGuard { .. }
            | Error::DegreeCap { .. }
            | Error::MemoryBudget { .. }
            | Error::OrderGuard { .. } => ErrorClass::Resource,
            _ => ErrorClass::Validation,
        }
    }
}
