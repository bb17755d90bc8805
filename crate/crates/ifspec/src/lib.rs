//! Interface-model based testing toolkit.
//!
//! `ifspec` turns rule-table interface models into executable conformance
//! tests. The pipeline:
//!
//! 1. [`text`] parses the `.ifm` DSL into an [`model::InterfaceModel`]
//!    (and serializes back, and draws DOT diagrams).
//! 2. [`model`] validates completeness/determinism and defines the
//!    single-step semantics.
//! 3. [`testgen`] transforms a model into an explicit-state test model,
//!    expands parameter domains, explores the state graph, and generates
//!    test suites under the `shorttests`, `longtests`, and `random`
//!    strategies.
//! 4. [`compose`] builds synchronized products of several models so whole
//!    systems can be tested at once.
//! 5. [`harness`] executes a suite against a live system under test over a
//!    line-oriented wire protocol and reports step-accurate verdicts.
//! 6. [`sut`] provides reference implementations (an alarm system and a
//!    container-terminal controller) plus seeded-fault mutants for
//!    measuring suite effectiveness.
//!
//! The `ifspec` binary (see [`cli`]) wires these together as subcommands.

pub mod cli;
pub mod compose;
pub mod harness;
pub mod model;
pub mod sut;
pub mod testgen;
pub mod text;

pub use model::{InterfaceModel, StepOutcome, ValidationReport};
// testgen re-exports added with the module
