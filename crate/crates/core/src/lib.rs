//! Compiler and verification toolkit for ordered logic programs.
//!
//! An ordered logic program is an extended logic program whose rules may
//! carry names and whose language includes preference atoms `(s < t)`
//! between rule names. This crate parses such programs, instantiates
//! variables, compiles the preferences away under several strategies,
//! solves the result with a built-in answer set engine, and checks each
//! strategy against independent order-preservation oracles.

pub mod emit;
pub mod error;
pub mod ground;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod semantics;
pub mod transform;

pub use emit::{emit, nice_filter, Dialect};
pub use ground::{flatten_terms, ground, herbrand_constants, instantiate, GroundingConfig};
pub use model::{
    defeated, desugar_constraint, desugar_constraints, validate_ordered, Atom, FreshAtoms, Literal,
    LiteralSet, OrderedProgram, PreferenceOrder, Rule, Sign, Term, ValidationReport,
};
pub use oracle::{
    be_c_operator, be_characterisation, be_preferred, check_be_preserving,
    check_dynamic_preserving, check_static_preserving, check_wzl_preserving, total_extensions,
    CriterionKind, EnumerationWitness, OracleLimits, TotalOrder,
};
pub use parser::{format_program, parse_program, parse_program_with, ParseOptions, SourceProgram};
pub use semantics::{
    answer_sets_bruteforce, answer_sets_search, generating_rules, is_answer_set, reduct, stage_of,
    th_closure, tp_trace, BasicProgram, DerivationTrace,
};
pub use transform::{
    ta_closure, transform, transform_s, transform_t, transform_t_static, transform_u, transform_v,
    transform_w, transform_wta, CompiledProgram, StrategyId,
};
