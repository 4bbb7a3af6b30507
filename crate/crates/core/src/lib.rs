//! Classification of bilinear and quadratic forms over finite fields and
//! explicit computation with the associated orthogonal and symplectic groups.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: exact arithmetic in GF(p^k), square classes, Artin-Schreier.
//! - [`linalg`]: dense vectors and matrices over a field.
//! - [`forms`]: bilinear/quadratic forms, Witt index, Arf invariant,
//!   classification and equivalence witnesses.
//! - [`clifford`]: the Clifford algebra of a quadratic form.
//! - [`groups`]: isometry groups, generators, invariants, enumeration.
//! - [`atlas`] and [`verify`]: tables and self-checking suites built on top.
//! - [`io`]: JSON descriptors for fields, forms, elements and reports.

pub mod atlas;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod forms;
pub mod gf;
pub mod groups;
pub mod io;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};
