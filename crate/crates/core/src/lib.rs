//! Numerical verification of Wirtinger- and Alzer-type inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`expr`]: closed-form functions of `x`, parsed from text and
//!   differentiated symbolically.
//! - [`quad`]: adaptive integration, sup-norm search and mean-zero shifts.
//! - [`ineq`]: one checker per inequality, each producing an [`IneqReport`],
//!   plus the sharpness auditor.
//! - [`apps`]: trapezoid-rule error bounds and mean-inequality chains.
//! - [`search`]: seeded generation of hypothesis-satisfying corpora and
//!   counterexample mining.

pub mod apps;
mod error;
pub mod expr;
pub mod ineq;
pub mod quad;
pub mod search;

pub use error::{Error, Result};

pub use expr::{parse, Expr, Interval};
pub use ineq::{IneqReport, TheoremId};
pub use quad::{QuadResult, SupNormResult};
pub use search::{CounterexampleRecord, Family, GeneratorSpec, Hypothesis};
