use thiserror::Error;

use crate::transform::BadEvent;
use crate::verify::PropertyReport;

#[derive(Debug, Error)]
pub enum SpgError {
    #[error("duplicate symbol label `{0}`")]
    DuplicateSymbol(String),
    #[error("symbol table must contain at least one symbol")]
    EmptySymbolTable,
    #[error("unknown symbol label `{0}`")]
    UnknownSymbol(String),
    #[error("facet set contains duplicate symbol index {0}")]
    DuplicateElement(u32),
    #[error("invalid subset partition graph: {0}")]
    Invalid(Box<PropertyReport>),
    #[error("restriction facet has {facet} symbols but dimension is {dimension}")]
    FacetTooLarge { facet: usize, dimension: usize },
    #[error("vertex index {index} out of range (graph has {len} vertices)")]
    VertexOutOfRange { index: usize, len: usize },
    #[error("vertex {0} is unreachable from vertex {1}")]
    Unreachable(usize, usize),
    #[error("enumeration needs {needed} restriction checks, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("row multiplier r = {0} is below the minimum of 2")]
    MultiplierTooSmall(usize),
    #[error("localization check requires r >= 4, got r = {0}")]
    LocalizationPrecondition(usize),
    #[error("input must satisfy the singleton property")]
    NotSingleton,
    #[error("endpoint sets of an edge are identical")]
    IdenticalEndpoints,
    #[error("sets have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("permutation assignment covers {got} edges, graph has {expected}")]
    MissingPermutation { expected: usize, got: usize },
    #[error("permutation for edge {edge} is not a bijection on {r} rows")]
    NotAPermutation { edge: usize, r: usize },
    #[error("no bad-event-free assignment after {rounds} resampling rounds ({} bad events remain)", last.len())]
    BudgetExhausted { rounds: usize, last: Vec<BadEvent> },
    #[error("constructed graph fails verification: {0}")]
    Verification(Box<PropertyReport>),
    #[error("trial count must be positive")]
    NoTrials,
    #[error(transparent)]
    Spg(#[from] SpgError),
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {found} (expected {expected})")]
    Version { found: u64, expected: u64 },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("document violates subset partition graph invariants: {0}")]
    Invariant(Box<PropertyReport>),
}

pub type Result<T, E = SpgError> = std::result::Result<T, E>;
