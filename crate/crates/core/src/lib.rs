//! Group-graded upper block triangular matrix algebras as endomorphism
//! rings of graded flags over graded division algebras, with exact
//! decision procedures for graded isomorphism and equivalence.
//!
//! All arithmetic is exact: groups are Cayley tables and scalars are
//! roots of unity stored as exponents.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod cocycle;
pub mod division;
pub mod error;
pub mod flag;
pub mod group;
pub mod io;
pub mod iso;
pub mod modlin;
pub mod roots;

pub use error::{Error, Result};
