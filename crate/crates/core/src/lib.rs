//! Computational paths: equality proof objects over an extended lambda
//! calculus, and the rewrite system that normalizes them.
//!
//! A path witnesses that two terms are equal; it is built from atomic
//! steps (reflexivity, one-step beta/eta contraction, the circle's loop
//! generator) closed under symmetry, transitivity, congruences, and
//! subterm substitution. Redundant proofs collapse under a catalog of 42
//! rewrite rules; the engine decides rw-equality by reduction to normal
//! form.
//!
//! On top of the engine:
//!
//! - [`lambda`] constructs beta-eta equality certificates between terms;
//! - [`nat`] realizes the path space of the naturals through the
//!   code/encode/decode family;
//! - [`circle`] computes winding numbers and the group structure of
//!   loops at the circle's base point.

pub mod circle;
pub mod engine;
pub mod lambda;
pub mod nat;
pub mod path;
pub mod rules;
pub mod sexpr;
pub mod term;

pub use circle::{
    circle_normalize, group_identity, group_inverse, group_op, to_integer, to_path,
    winding_by_letters, CircleError, LoopExpr, Winding,
};
pub use engine::{
    contract_once, normal_form, normalize, reduce_rho_generated, rw_equal, EngineConfig,
    NormalizeError, RhoReduceError, RwEqualError, RwStep, RwTrace, Strategy, StepRecord,
    TraceRecord,
};
pub use lambda::{
    find_path, normalize_sequence, path_from_sequence, Direction, FindPathError,
    ReductionSequence, SeqStep, SequenceError, Side,
};
pub use nat::{code, decode, encode, nat_path_normalizes_to_rho, rfun, transport_code, CodeTag,
    CodeWitness, NatError};
pub use path::{
    parse_path, parse_path_unchecked, CoherenceError, OpaqueTag, ParsePathError, Path, PathError,
    PathFun,
};
pub use rules::{rule_catalog, try_apply, RuleEntry, RuleId, ALL_RULES};
pub use sexpr::ParseError;
pub use term::{
    alpha_eq, contract_at, find_redexes, parse_term, substitute, RedexKind, RedexLocation, Term,
    TermError,
};
