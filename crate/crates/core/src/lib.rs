//! Cohomology algebras at infinity of ladder manifolds.
//!
//! Closed cross-sections are built from a small manifold vocabulary
//! ([`catalog`]), assembled into ladder graphs ([`ladder`]), and reduced to
//! proper-homotopy invariants ([`invariants`]). The [`oracle`] module
//! recomputes the same algebras as truncated direct limits.

pub mod algebra;
pub mod catalog;
mod error;
pub mod invariants;
pub mod ladder;
pub mod oracle;

pub use error::{Error, Result};
