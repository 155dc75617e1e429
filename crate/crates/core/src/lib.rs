//! Lattice surgery on qudit Kitaev-model patches, with the ZX-style calculus
//! of the Hopf algebras `ℂZ_d` and `ℂ(Z_d)`.

pub mod algebra;
pub mod closure;
pub mod commands;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod sim;
pub mod surgery;
pub mod zx;

pub use error::{Error, Result};

/// Largest supported qudit dimension.
pub const MAX_DIM: usize = 64;
