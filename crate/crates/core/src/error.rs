use thiserror::Error;

use crate::forest::ValidationReport;
use crate::labeler::Phase;

/// Structural defects that prevent a graph from being a forest.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("a forest needs at least one vertex")]
    Empty,
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) closes a cycle")]
    Cycle(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Failures while reading a labeling back against a forest.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("malformed labeling: {0}")]
    Syntax(String),
    #[error("edge ({0}, {1}) has no label")]
    MissingEdge(usize, usize),
    #[error("labeling mentions ({0}, {1}), which is not an edge of the forest")]
    UnknownEdge(usize, usize),
    #[error("edge ({0}, {1}) is labeled twice")]
    DuplicateEdge(usize, usize),
    #[error("expected {expected} vertex labels, found {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("expected {expected} edge labels, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("forest is outside the construction's scope: {0}")]
    OutOfScope(ValidationReport),
    #[error("construction infeasible in phase {phase}: {detail}")]
    Infeasible { phase: Phase, detail: String },
}

impl ConstructionError {
    pub(crate) fn infeasible(phase: Phase, detail: impl Into<String>) -> Self {
        ConstructionError::Infeasible {
            phase,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("instance has {n} vertices, above the search guard of {guard}")]
    TooLarge { n: usize, guard: usize },
    #[error("no irregular weighting with labels up to {cap}")]
    CapExceeded { cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("tree size {n} outside the supported range {min}..={max}")]
    SizeGuard { n: usize, min: usize, max: usize },
    #[error("malformed Prüfer sequence: {0}")]
    Prufer(String),
    #[error("invalid generator spec: {0}")]
    Spec(String),
    #[error("no forest satisfying the constraints after {0} attempts")]
    RetryBudget(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("strength target needs at least two pendant vertices, found {0}")]
    TooFewPendants(usize),
    #[error("expected a tree on at least two vertices")]
    NotATree,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
