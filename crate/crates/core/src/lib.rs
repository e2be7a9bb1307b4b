//! Exact computational algebra for the mod-p cohomology of finite monomial
//! p-groups: group construction, minimal resolutions, cup products and
//! Bockstein operations, central-extension spectral sequences, symbolic
//! Milnor-operation calculus, and character/Chern-class computations.

pub mod bar;
pub mod catalog;
pub mod error;
pub mod fp;
pub mod group;
pub mod hom;
pub mod linalg;
pub mod cyclic;
pub mod monomial;
pub mod symbolic;

pub use error::{Error, Result};
