//! Flat tori with non-cubical isometries and branched covers of them.

mod cover;
mod doubles;
mod lift;
mod torus;

use thiserror::Error;

use crate::cone::ConeError;

pub use cover::{branched_cover, commutator, cycle_lengths, BranchedCover, CoverSpec, Perm};
pub use doubles::{find_pythagorean_doubles, swap_isometry, verify_descends, PythagoreanPair};
pub use lift::{is_automorphism, lift_check, parse_word, Word};
pub use torus::{build_torus, TorusComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("lattice vectors {0:?} and {1:?} are linearly dependent")]
    Dependent([i64; 2], [i64; 2]),
    #[error("not a distinct Pythagorean double: {0}")]
    NotADouble(String),
    #[error("bad cover: {0}")]
    BadCover(String),
    #[error("cover is not connected: the permutations do not act transitively")]
    NotTransitive,
    #[error("bad word `{0}` (letters a, A, b, B)")]
    BadWord(String),
    #[error("the words do not define an automorphism of the free group")]
    NotAutomorphism,
    #[error(transparent)]
    Surface(#[from] ConeError),
}
