//! Solvers and analysis tools for NAE-k-SAT and MAX-(NAE-)k-SAT.
//!
//! The crate is organised bottom-up:
//!
//! * [`formula`]: literals, clauses, instances, DIMACS I/O and statistics.
//! * [`transform`]: conjugate pairs and partial-assignment simplification.
//! * [`oracle`]: brute-force ground truth and an exact symmetric LP solver.
//! * [`williams`]: exact MAX-2-SAT / MAX-NAE-{2,3}-SAT via max-weight triangles.
//! * [`naesolve`]: the deterministic NAE-k-SAT solver (branching + covering-code local search).
//! * [`approx`]: RandomWalk and ReduceSolve approximation algorithms.
//! * [`bounds`]: closed-form running-time bounds and equation systems.
//!
//! Numeric code is written against the traits in [`scalar`]; the aliases
//! [`Rational`], [`Real`] and [`Weight`] are the concrete types used throughout.

pub mod approx;
pub mod bounds;
pub mod formula;
pub mod linalg;
pub mod matmul;
pub mod naesolve;
pub mod oracle;
pub mod scalar;
pub mod transform;
pub mod williams;

/// Exact rational scalar used for all combinatorial quantities.
pub type Rational = num_rational::BigRational;

/// Floating-point scalar used at the bound-evaluation boundary.
pub type Real = f64;

/// Integer scalar for clause-weight matrices.
pub type Weight = i64;

pub use formula::{Assignment, Clause, Instance, Literal, Mode, PartialAssignment};
