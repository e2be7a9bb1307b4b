//! Exact dense and sparse linear algebra over Z/p and Z/p^2.

pub mod dense;
pub mod echelon;
pub mod sparse;
pub mod vecops;
pub mod zp2;

pub use dense::{FpMatrix, RankKernelImage};
pub use echelon::{Echelon, Inserted};
pub use zp2::{LocalSolve, Zp2Matrix};
