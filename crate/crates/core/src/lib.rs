//! Exact verification toolkit for formal deformations of algebras and their
//! splittings: tridendriform and post-Poisson structures, O-operators,
//! quasiclassical limits and Yang-Baxter solutions, all over exact rationals
//! and truncated power series in `h`.

pub mod deform;
pub mod error;
pub mod io;
pub mod kernel;
pub mod operators;
pub mod structures;
pub mod yangbaxter;

pub use error::{Error, Result};
