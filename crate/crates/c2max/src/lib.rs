//! Deciding Maximality and Galois-Maximality of finite C2-spaces, and
//! verifying that symmetric products preserve Galois-Maximality, by exact
//! linear algebra over F2.
//!
//! The pipeline: model a space as a simplicial complex with involution or a
//! simplicial set with involution (`complex`, `sset`), extract normalized
//! chains (`chain`), optionally shrink them by equivariant elimination
//! (`reduce`), and compute cohomology with its involution (`cohomology`),
//! the Borel F2[z]-module with its barcode and spectral pages (`borel`),
//! the three-route classifier (`classify`) and the symmetric-product tower
//! checks (`tower`). `expr` is the CLI expression language.

pub mod borel;
pub mod chain;
pub mod classify;
pub mod cohomology;
pub mod complex;
pub mod errors;
pub mod expr;
pub mod f2;
pub mod par;
pub mod reduce;
pub mod sset;
pub mod tower;
pub mod words;

pub use classify::{classify, Method, Verdict};
pub use complex::C2Complex;
pub use errors::{Error, Result};
pub use sset::C2SimplicialSet;
