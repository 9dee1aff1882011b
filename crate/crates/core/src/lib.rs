//! Exact weight combinatorics for untwisted affine Kac-Moody algebras and
//! affine superalgebras: finite root data, affine weights and their orders,
//! weight sets of integrable highest weight modules, Casimir bookkeeping, and
//! a refutation engine for integrable supports over superalgebras whose even
//! part has two simple components.

pub mod affine_weights;
pub mod casimir_audit;
pub mod error;
pub mod module_weights;
pub mod rational;
pub mod reports;
pub mod root_core;
pub mod super_affine;

pub use error::{Error, Result};
