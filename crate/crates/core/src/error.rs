use thiserror::Error;

use crate::lattice::Vertex;

/// Errors raised while building or validating a universe.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        vertex: Vertex,
        expected: usize,
        found: usize,
    },
    #[error("edge {from} -> {to} violates the downward condition (max {from_max} <= {to_max})")]
    DownwardViolation {
        from: Vertex,
        to: Vertex,
        from_max: u32,
        to_max: u32,
    },
    #[error("edge {from} -> {to} has an endpoint outside the vertex list")]
    DanglingEdge { from: Vertex, to: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("vertex {0} is not in the universe")]
    VertexNotInUniverse(Vertex),
    #[error("oracle is capped at {cap} vertices, universe has {size}")]
    OracleCapExceeded { cap: usize, size: usize },
    #[error("lower label missing for {neighbor} while labeling {vertex}")]
    MissingLowerLabel { vertex: Vertex, neighbor: Vertex },
    #[error(transparent)]
    Rules(#[from] RuleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule arity {arity} exceeds arity cap {cap}")]
    ArityAboveCap { arity: usize, cap: usize },
    #[error("rule arity must be at least 1")]
    ZeroArity,
    #[error("arity cap must be at least 1")]
    ZeroArityCap,
    #[error("index {index} is out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("coordinate {coord} is out of range for dimension {k}")]
    CoordinateOutOfRange { coord: usize, k: usize },
    #[error("cannot parse rule expression `{0}`")]
    Syntax(String),
    #[error("unknown rule preset `{0}`")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error("scope vertex {0} is not in the labeling's domain")]
    ScopeNotInDomain(Vertex),
    #[error("cube point {0} is not in the labeling's domain")]
    CubeNotInDomain(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("cube axis must be nonempty")]
    EmptyAxis,
    #[error("cube dimension must be at least 1")]
    ZeroDimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("time limit of {0:?} exceeded")]
    BudgetExceeded(std::time::Duration),
    #[error("dimension {k} is above the supported cap {cap}")]
    UnsupportedDimension { k: usize, cap: usize },
    #[error("domain of {size} vertices exceeds the budget of {cap}")]
    DomainTooLarge { size: usize, cap: usize },
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Label(#[from] LabelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}
