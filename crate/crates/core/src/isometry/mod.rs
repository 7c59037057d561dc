//! Exact Euclidean isometries `x ↦ Ax + b` of the standard cubulation of `R^n`.

mod hypersurface;
mod lattice;
mod normal_form;
mod transverse;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{
    common_denominator, is_integral, round_half_toward_zero, serde_qvec, QMatrix, RationalError, Q,
};

pub use hypersurface::{pattern_components, preserves_proper_hypersurface, HypersurfaceSpec, HypersurfaceSplit};
pub use lattice::{enumerate_integral_points, integral_points_on_sphere};
pub use normal_form::{normal_form, Block, BlockDecomposition, BlockKind};
pub use transverse::{
    general_transverse, image_meets_open_top_cube, transverse_witness, CubeSpec, GeneralTransverse,
    WITNESS_SEARCH_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsometryError {
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("not orthogonal: AᵀA ≠ I")]
    NotOrthogonal,
    #[error("translation has length {got}, expected {expected}")]
    TranslationLength { got: usize, expected: usize },
    #[error("map preserves a proper hypersurface (free coordinates {0:?})")]
    PreservesHypersurface(Vec<usize>),
    #[error("cube dimension {d} outside 1..={max}")]
    CubeDimension { d: usize, max: usize },
    #[error("bad cube: {0}")]
    BadCube(String),
    #[error("map is not in normal form: {0}")]
    NotNormalForm(String),
    #[error("no witness among {tried} grid points")]
    SearchExhausted { tried: usize },
    #[error("malformed isometry JSON: {0}")]
    Json(String),
}

/// `check_orthogonal`: `AᵀA = I` exactly. Non-square input is an error.
pub fn check_orthogonal(a: &QMatrix) -> Result<bool, IsometryError> {
    if !a.is_square() {
        return Err(RationalError::NotSquare { rows: a.rows(), cols: a.cols() }.into());
    }
    Ok(a.transpose().mul(a)?.is_identity())
}

/// Orthogonal from a skew-symmetric `S`: `(I - S)(I + S)^{-1}`.
pub fn cayley(skew: &QMatrix) -> Option<QMatrix> {
    let n = skew.rows();
    let mut minus = QMatrix::identity(n);
    let mut plus = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            minus[(i, j)] -= &skew[(i, j)];
            plus[(i, j)] += &skew[(i, j)];
        }
    }
    minus.mul(&plus.inverse()?).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AffineJson", into = "AffineJson")]
pub struct RationalOrthoAffine {
    a: QMatrix,
    b: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct AffineJson {
    n: usize,
    #[serde(rename = "A")]
    a: QMatrix,
    #[serde(with = "serde_qvec")]
    b: Vec<Q>,
}

impl TryFrom<AffineJson> for RationalOrthoAffine {
    type Error = IsometryError;
    fn try_from(j: AffineJson) -> Result<Self, Self::Error> {
        if j.a.rows() != j.n {
            return Err(IsometryError::Json(format!("n = {} but A has {} rows", j.n, j.a.rows())));
        }
        RationalOrthoAffine::new(j.a, j.b)
    }
}

impl From<RationalOrthoAffine> for AffineJson {
    fn from(t: RationalOrthoAffine) -> Self {
        AffineJson { n: t.dim(), a: t.a, b: t.b }
    }
}

impl RationalOrthoAffine {
    pub fn new(a: QMatrix, b: Vec<Q>) -> Result<Self, IsometryError> {
        if !check_orthogonal(&a)? {
            return Err(IsometryError::NotOrthogonal);
        }
        if b.len() != a.rows() {
            return Err(IsometryError::TranslationLength { got: b.len(), expected: a.rows() });
        }
        Ok(Self { a, b })
    }

    pub fn linear(a: QMatrix) -> Result<Self, IsometryError> {
        let n = a.rows();
        Self::new(a, vec![Q::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        Self { a: QMatrix::identity(n), b: vec![Q::zero(); n] }
    }

    pub fn from_json(text: &str) -> Result<Self, IsometryError> {
        let j: AffineJson = serde_json::from_str(text).map_err(|e| IsometryError::Json(e.to_string()))?;
        Self::try_from(j)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.a
    }

    pub fn translation(&self) -> &[Q] {
        &self.b
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.a.apply(x).into_iter().zip(&self.b).map(|(y, c)| y + c).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalOrthoAffine) -> RationalOrthoAffine {
        let a = self.a.mul(&other.a).expect("same dimension");
        let b = self.apply(&other.b);
        RationalOrthoAffine { a, b }
    }

    pub fn inverse(&self) -> RationalOrthoAffine {
        let at = self.a.transpose();
        let b = at.apply(&self.b).into_iter().map(|x| -x).collect();
        RationalOrthoAffine { a: at, b }
    }

    /// `x ↦ Ax + b + v`.
    pub fn translated(&self, v: &[Q]) -> RationalOrthoAffine {
        let b = self.b.iter().zip(v).map(|(x, y)| x + y).collect();
        RationalOrthoAffine { a: self.a.clone(), b }
    }

    /// Common denominator of every entry of `A` and `b`.
    pub fn denominator(&self) -> BigInt {
        common_denominator(self.a.entries().chain(self.b.iter()))
    }

    /// Signed permutation part and integral translation.
    pub fn is_cubical(&self) -> bool {
        self.a.is_signed_permutation() && self.b.iter().all(is_integral)
    }
}

/// Alias matching the operation name used throughout the docs.
pub fn is_cubical_map(t: &RationalOrthoAffine) -> bool {
    t.is_cubical()
}

/// Subtracts the nearest integer (ties toward zero) from each translation
/// component. Returns the reduced map and the subtracted shift, so that
/// `T = T' + shift`.
pub fn reduce_translation(t: &RationalOrthoAffine) -> (RationalOrthoAffine, Vec<BigInt>) {
    let shift: Vec<BigInt> = t.b.iter().map(round_half_toward_zero).collect();
    let b = t.b.iter().zip(&shift).map(|(x, s)| x - Q::from_integer(s.clone())).collect();
    (RationalOrthoAffine { a: t.a.clone(), b }, shift)
}

/// `|x| < √2/2`, decided as `2x² < 1`.
pub fn below_half_diagonal(x: &Q) -> bool {
    let two = Q::from_integer(BigInt::from(2));
    two * x * x < Q::one()
}
