//! Desk-scale computations for Floer homology of integral link surgeries:
//! truncated coefficient rings and finite homology, songs and symphonies,
//! hyperboxes of chain complexes, grid complexes, and surgery complexes.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod grid;
pub mod half;
pub mod hyperbox;
pub mod songs;
pub mod surgery;

pub use error::{HflError, Result};
