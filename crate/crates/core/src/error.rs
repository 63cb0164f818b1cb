//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("preference order is cyclic at `{name}`")]
    CyclicOrder { name: String },
    #[error("rule is not a constraint")]
    NotAConstraint,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{origin}:{line}:{column}: reserved predicate `{predicate}` in user input")]
    Reserved {
        origin: String,
        line: usize,
        column: usize,
        predicate: String,
    },
    #[error("{origin}:{line}:{column}: duplicate rule name `{name}`")]
    DuplicateName {
        origin: String,
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{origin}:{line}:{column}: disjunctive heads are not supported")]
    DisjunctiveHead {
        origin: String,
        line: usize,
        column: usize,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroundError {
    #[error("instantiation guard tripped: {count} ground rules exceed the limit of {limit}")]
    TooManyInstances { count: usize, limit: usize },
    #[error("rule name `{name}` collides across instances")]
    NameCollision { name: String },
    #[error("flattening `{term}` collides with existing constant `{constant}`")]
    FlattenCollision { term: String, constant: String },
    #[error("program must be ground, found variable in `{context}`")]
    NotGround { context: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("brute-force bound exceeded: {heads} distinct head literals > {bound}")]
    BruteForceBound { heads: usize, bound: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("program is not statically ordered")]
    NotStatic,
    #[error("invalid ordered program: {report}")]
    Invalid { report: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("candidate is not an answer set of the checked program")]
    NotAnAnswerSet,
    #[error("candidate must be consistent")]
    InconsistentCandidate,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("rule universe of {size} rules exceeds the limit of {limit}")]
    UniverseTooLarge { size: usize, limit: usize },
    #[error("search budget of {budget} nodes exhausted; result undecided")]
    Undecided { budget: usize },
    #[error("too many linear extensions: {count} exceed the limit of {limit}")]
    TooManyExtensions { count: usize, limit: usize },
    #[error("operator input must be prerequisite free")]
    NotPrerequisiteFree,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmitError {
    #[error("cannot emit non-ground program: variable in `{context}`")]
    NotGround { context: String },
}
