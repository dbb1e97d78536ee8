//! A desk-scale implementation of effect-theoretic process theories.
//!
//! The crate is organised in layers:
//!
//! * [`algebra`] — finite effect algebras, effect monoids, weight modules,
//!   and exhaustive law suites over them.
//! * [`category`] — the abstract interface shared by the three concrete
//!   process theories, together with instance-independent constructions
//!   (validity, predicate/state transformers, partial tuples, total-form
//!   round trips).
//! * [`pfn`], [`prob`], [`quantum`] — the deterministic, probabilistic and
//!   quantum instances: finite sets with partial functions, exact-rational
//!   subdistribution kernels, and block matrix algebras with subunital CP
//!   maps carried as Choi matrices.
//! * [`logic`] — kernels, images, comprehension, quotients, floor/ceiling,
//!   sharp predicates and their orthomodular lattice, and the
//!   quotient/comprehension factorization of arbitrary maps.
//! * [`measurement`] — tests, instruments, experiments with joint outcome
//!   tables, the repeatability/ideality/side-effect-freeness checkers, and
//!   assert-map instruments.
//! * [`duality`] — state-effect models, convex operational models, base
//!   norms and the canonical state-space metric.
//! * [`totalization`] — matrix categories over the rigs ℕ and ℚ≥0, their
//!   ground structure, and recovery of the instances as subcausal parts.
//! * [`laws`] — the instance-generic law suites used by the test and CLI
//!   front ends.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so everything here can be used from
//! multiple threads without coordination. Law suites fan out independent
//! checks through [`exec`], which uses a work-stealing pool when the
//! `parallel` feature (default) is enabled and plain iteration otherwise.

pub mod algebra;
pub mod category;
pub mod duality;
pub mod error;
pub mod exec;
pub mod io;
pub mod laws;
pub mod logic;
pub mod measurement;
pub mod pfn;
pub mod prob;
pub mod quantum;
pub mod report;
pub mod scalar;
pub mod totalization;

pub use error::Error;
pub use report::{LawReport, LawResult, Regime};
pub use scalar::{Rat, Real, Scalar};
