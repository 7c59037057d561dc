//! Exact combinatorics of cube complexes and their non-cubical isometries.

pub mod complex;
pub mod constructions;
pub mod cone;
pub mod develop;
pub mod isometry;
pub mod par;
pub mod rational;
pub mod simplicial;

pub use complex::{CubeComplex, ComplexError};
pub use isometry::RationalOrthoAffine;
pub use rational::{QMatrix, Q};
pub use simplicial::SimplicialComplex;
