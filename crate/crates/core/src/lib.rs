//! Finite-dimensional semisimple Hopf algebras at desk scale.
//!
//! The crate builds group algebras, their duals, Drinfeld doubles and
//! bicharacter twists as explicit structure tensors, decomposes the
//! resulting semisimple algebras into matrix blocks, and verifies the
//! structural identities of the representation categories: modularity of
//! the double, the Verlinde eigenvalue statement, dimension divisibility,
//! and the triangular normalization with trivial Drinfeld element.

pub mod double;
pub mod eigen;
mod error;
pub mod groups;
pub mod hopf;
pub mod json;
pub mod mat;
pub mod modular;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod triangular;

pub use error::{Error, Result};
pub use scalar::{C64, Rat, Scalar, ToleranceConfig};
