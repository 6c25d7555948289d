//! Ramification invariants of type (II) extensions of K = F_p(x)((t)).
//!
//! The crate computes Galois groups of monogenic extensions by Newton
//! polygon lifting, the ramification data attached to a generator, Kato's
//! Swan conductors with differential values, the closed-form refined Swan
//! conductor and characteristic cycle, and compares the two characteristic
//! cycles. A small calculator for the nearby-cycles dimension formula sits
//! on top.

pub mod abbes_saito;
pub mod algebra;
pub mod corpus;
pub mod error;
pub mod galois;
pub mod kato;
pub mod local;
pub mod nearby;

pub use error::{Error, Result};
