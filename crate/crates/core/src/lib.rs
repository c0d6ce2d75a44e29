//! Infinite co-minimal pairs in ℤ and ℤ^d, checked exactly on finite windows.

pub mod cli;
pub mod constructions;
pub mod error;
pub mod lattice_lift;
pub mod oracle;
pub mod refinement;
pub mod sumset;
pub mod verifiers;
pub mod window;

pub use error::{Error, Result};
