//! currycomb: a rewrite engine for a FlatCurry-style intermediate
//! representation.
//!
//! Transformation rules are written as partial, possibly non-deterministic
//! operations on expressions ([`transforms`]), composed serially and in
//! parallel, and driven to a fixpoint by one of three strategies
//! ([`strategy`]). The [`nondet`] module supplies the lazy choice engine
//! that emulates functional-logic style, [`patterns`] the functional-pattern
//! matchers built on it, [`eval`] a small reference evaluator used for
//! differential testing, and [`cli`] the command-line front end.

pub mod cli;
pub mod corpus;
pub mod eval;
pub mod ir;
pub mod nondet;
pub mod patterns;
pub mod pretty;
pub mod strategy;
pub mod transforms;

pub use ir::{CombKind, Expr, Program};
pub use nondet::Choices;
