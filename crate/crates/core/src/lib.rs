//! Level-`k` fusion rings of compact simple simply connected groups, the
//! affine Weyl combinatorics behind them, and a verifier for the resolution of
//! the fusion ring by anti-invariants over affine Weyl orbits.

pub mod affine;
pub mod criteria;
pub mod error;
pub mod fusion;
pub mod group_ring;
pub mod lie;
pub mod linalg;
pub mod prequant;
pub mod rational;
pub mod resolution;

pub use error::{Error, Result};
