//! Exact checking of Bell-Kochen-Specker style colorability arguments built
//! from qubit POVMs.
//!
//! - [`operator`]: rational Bloch-form operators and their predicates.
//! - [`ensemble`]: POVMs, validation, builtin ensembles, file format.
//! - [`coloring`]: identification semantics, solver, brute-force oracle,
//!   parity shortcut.
//! - [`minimality`]: canonical pattern enumeration, sweeps, theorem checks.
//! - [`cli`]: the `bks` command-line front end.

pub mod cli;
pub mod coloring;
pub mod ensemble;
pub mod minimality;
pub mod operator;
pub mod report;

pub use coloring::{
    admissibility, brute_force, decide, identify, identify_with, parity_witness, solve,
    ColoringError, ColoringProblem, IdentifyOptions, ParityArgument, Semantics, Verdict, Witness,
};
pub use ensemble::{Ensemble, ParseError, Povm, ValidationIssue, ValidationReport, BUILTIN_NAMES};
pub use minimality::{
    enumerate_patterns, pattern_verdict, sweep, verify_theorem, MinimalityError, Pattern,
    SweepReport, TheoremId, TheoremReport,
};
pub use operator::{rational, OperatorError, QubitOperator, QubitState, Rational};
