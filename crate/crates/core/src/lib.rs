//! Projective Reed-Muller codes over small finite fields and their hull
//! dimensions.
//!
//! The crate computes hull dimensions of `PRM(q, m, v)` from exact
//! combinatorial formulas ([`formulas`]) and checks them against brute-force
//! linear algebra over GF(q) ([`oracle`], [`linalg`]). The structured Gram
//! blocks behind the interval recursion (top pairing matrix, working block,
//! reduction matrix, recursive principal blocks) are exposed so each step
//! can be replayed numerically.
//!
//! Sweeps over parameter points run on rayon when the `parallel` feature is
//! enabled (the default) and sequentially otherwise.

pub mod error;
pub mod formulas;
pub mod gf;
pub mod linalg;
pub mod monomial;
pub mod oracle;
mod parallel;
pub mod projspace;
pub mod sweep;

pub use error::{Error, Result};
pub use formulas::{CaseTag, HullReport};
pub use gf::{FieldElement, FiniteField};
pub use linalg::MatrixFq;
pub use monomial::{ExponentVector, IntervalIndex, IntervalParams};
pub use projspace::ProjectivePoint;
