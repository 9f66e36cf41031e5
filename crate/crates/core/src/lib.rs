//! Exact toolkit for additive bases of integers.
//!
//! Sets are eventually periodic ([`EventuallyPeriodicSet`]); on top of them
//! the crate computes sumsets, exact basis orders `G(A)` and `G(A \ X)`, the
//! removal parameters `d`, `η`, `μ`, and every closed-form bound on
//! `G(A \ X)` in [`bounds`]. [`residue`] holds the cyclic-group machinery and
//! [`harness`] the corpus runner behind the `addbasis` CLI.

pub mod basis;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod intset;
pub mod residue;

pub use basis::{OrderResult, RemovalParameters};
pub use bounds::{BoundName, BoundValue};
pub use error::{Error, Result};
pub use intset::{EventuallyPeriodicSet, FiniteIntSet, SetLiteral};
pub use residue::{ResidueSet, StabilizerSubgroup};
