use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{pattern_components, reduce_translation, RationalOrthoAffine};
use crate::rational::{serde_ints, serde_qvec, QMatrix, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BlockKind {
    Lambda,
    B0,
    BStrict,
}

fn one_based<S: Serializer>(xs: &[usize], s: S) -> Result<S::Ok, S::Error> {
    xs.iter().map(|x| x + 1).collect::<Vec<_>>().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Original coordinates (0-based; 1-based in JSON), in block order.
    #[serde(serialize_with = "one_based")]
    pub coordinates: Vec<usize>,
    pub matrix: QMatrix,
    #[serde(with = "serde_qvec")]
    pub translation: Vec<Q>,
}

/// `T(x) = s + P⁻¹Q⁻¹(N(Px) + c)` where `P` reorders coordinates so blocks
/// are contiguous, `Q` is a permutation of the LAMBDA positions that makes
/// the cubical part diagonal, `N = ⊕ blocks` and `c` their translations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub n: usize,
    /// Position `i` of the normal form holds original coordinate `permutation[i]`.
    #[serde(serialize_with = "one_based")]
    pub permutation: Vec<usize>,
    /// `(Qy)_j = y_{post[j]}`.
    #[serde(serialize_with = "one_based")]
    pub post: Vec<usize>,
    #[serde(serialize_with = "serde_ints::serialize")]
    pub integer_shift: Vec<BigInt>,
    pub blocks: Vec<Block>,
}

fn permutation_matrix(p: &[usize]) -> QMatrix {
    let mut m = QMatrix::zeros(p.len(), p.len());
    for (i, &j) in p.iter().enumerate() {
        m[(i, j)] = Q::one();
    }
    m
}

impl BlockDecomposition {
    pub fn lambda_rank(&self) -> usize {
        self.blocks.iter().filter(|b| b.kind == BlockKind::Lambda).count()
    }

    pub fn b0(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.kind == BlockKind::B0)
    }

    pub fn strict_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.kind == BlockKind::BStrict)
    }

    pub fn is_all_lambda(&self) -> bool {
        self.blocks.iter().all(|b| b.kind == BlockKind::Lambda)
    }

    /// Original coordinates carrying a LAMBDA block.
    pub fn lambda_coordinates(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Lambda)
            .flat_map(|b| b.coordinates.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// The normal-form map `y ↦ Ny + c`.
    pub fn normal_map(&self) -> RationalOrthoAffine {
        let n = QMatrix::direct_sum(&self.blocks.iter().map(|b| b.matrix.clone()).collect::<Vec<_>>());
        let c = self.blocks.iter().flat_map(|b| b.translation.iter().cloned()).collect();
        RationalOrthoAffine::new(n, c).expect("blocks are orthogonal")
    }

    /// Recovers the original map from the recorded chart changes.
    pub fn reconstruct(&self) -> RationalOrthoAffine {
        let nm = self.normal_map();
        let p = permutation_matrix(&self.permutation);
        let qm = permutation_matrix(&self.post);
        let back = p.transpose().mul(&qm.transpose()).expect("square");
        let a = back.mul(nm.matrix()).and_then(|m| m.mul(&p)).expect("square");
        let b: Vec<Q> = back
            .apply(nm.translation())
            .into_iter()
            .zip(&self.integer_shift)
            .map(|(x, s)| x + Q::from_integer(s.clone()))
            .collect();
        RationalOrthoAffine::new(a, b).expect("orthogonal")
    }
}

/// Splits `T` into LAMBDA, B0 and B_STRICT blocks (in that order).
///
/// Components of the nonzero pattern with integral translation become LAMBDA
/// blocks (one per coordinate) when they are signed permutations and
/// B_STRICT blocks otherwise. All components with a non-integral translation
/// are grouped into the single B0 block, which can therefore be a direct sum
/// of several components.
pub fn normal_form(t: &RationalOrthoAffine) -> BlockDecomposition {
    let n = t.dim();
    let (reduced, shift) = reduce_translation(t);
    let a = reduced.matrix();
    let b = reduced.translation();
    let mut lambda = Vec::new();
    let mut b0 = Vec::new();
    let mut strict = Vec::new();
    for c in pattern_components(a) {
        let integral = c.iter().all(|&i| b[i].is_zero());
        if !integral {
            b0.extend(c);
        } else if a.submatrix(&c, &c).is_signed_permutation() {
            lambda.push(c);
        } else {
            strict.push(c);
        }
    }
    b0.sort_unstable();
    let mut perm: Vec<usize> = lambda.iter().flatten().copied().collect();
    let l = perm.len();
    perm.extend(&b0);
    perm.extend(strict.iter().flatten());

    let mut ap = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            ap[(i, j)] = a[(perm[i], perm[j])].clone();
        }
    }
    let bp: Vec<Q> = perm.iter().map(|&i| b[i].clone()).collect();
    // move the unique nonzero of each LAMBDA column onto the diagonal
    let mut post: Vec<usize> = (0..n).collect();
    for (j, slot) in post.iter_mut().enumerate().take(l) {
        *slot = (0..l).find(|&r| !ap[(r, j)].is_zero()).expect("signed permutation column");
    }
    let mut nm = QMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            nm[(j, k)] = ap[(post[j], k)].clone();
        }
    }
    let c: Vec<Q> = post.iter().map(|&r| bp[r].clone()).collect();

    let block = |kind, range: std::ops::Range<usize>| {
        let idx: Vec<usize> = range.collect();
        Block {
            kind,
            coordinates: idx.iter().map(|&i| perm[i]).collect(),
            matrix: nm.submatrix(&idx, &idx),
            translation: idx.iter().map(|&i| c[i].clone()).collect(),
        }
    };
    let mut blocks: Vec<Block> = (0..l).map(|j| block(BlockKind::Lambda, j..j + 1)).collect();
    let mut at = l;
    if !b0.is_empty() {
        blocks.push(block(BlockKind::B0, at..at + b0.len()));
        at += b0.len();
    }
    for s in &strict {
        blocks.push(block(BlockKind::BStrict, at..at + s.len()));
        at += s.len();
    }
    BlockDecomposition { n, permutation: perm, post, integer_shift: shift, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn rot() -> QMatrix {
        QMatrix::from_fracs(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])
    }

    #[test]
    fn quarter_turn_is_all_lambda() {
        let t = RationalOrthoAffine::linear(QMatrix::from_ints(&[&[0, -1], &[1, 0]])).unwrap();
        let nf = normal_form(&t);
        assert!(nf.is_all_lambda());
        assert_eq!(nf.lambda_rank(), 2);
        for b in &nf.blocks {
            assert!(b.matrix[(0, 0)] == q(1) || b.matrix[(0, 0)] == q(-1));
        }
        assert_eq!(nf.reconstruct(), t);
    }

    #[test]
    fn swap_reflection_is_one_strict_block() {
        let a = QMatrix::from_fracs(&[&[(-5, 13), (12, 13)], &[(12, 13), (5, 13)]]);
        let nf = normal_form(&RationalOrthoAffine::linear(a.clone()).unwrap());
        assert_eq!(nf.blocks.len(), 1);
        assert_eq!(nf.blocks[0].kind, BlockKind::BStrict);
        assert_eq!(nf.blocks[0].matrix, a);
    }

    #[test]
    fn fractional_fixed_axis_goes_to_b0() {
        let a = QMatrix::direct_sum(&[QMatrix::identity(1), rot()]);
        let t = RationalOrthoAffine::new(a, vec![frac(1, 2), q(0), q(0)]).unwrap();
        let nf = normal_form(&t);
        let kinds: Vec<BlockKind> = nf.blocks.iter().map(|b| b.kind).collect();
        assert_eq!(kinds, [BlockKind::B0, BlockKind::BStrict]);
        assert_eq!(nf.blocks[0].coordinates, vec![0]);
        assert_eq!(nf.blocks[0].translation, vec![frac(1, 2)]);
        assert_eq!(nf.blocks[1].matrix, rot());
        assert_eq!(nf.reconstruct(), t);
    }

    #[test]
    fn shift_and_scrambled_coordinates_round_trip() {
        // rotation on coordinates {0, 2}, a reflected axis 1 moved by 5, 7/4 on axis 3
        let mut a = QMatrix::zeros(4, 4);
        a[(0, 0)] = frac(3, 5);
        a[(0, 2)] = frac(-4, 5);
        a[(2, 0)] = frac(4, 5);
        a[(2, 2)] = frac(3, 5);
        a[(1, 1)] = q(-1);
        a[(3, 3)] = q(1);
        let t = RationalOrthoAffine::new(a, vec![q(2), q(5), q(-1), frac(7, 4)]).unwrap();
        let nf = normal_form(&t);
        assert_eq!(nf.permutation, vec![1, 3, 0, 2]);
        assert_eq!(nf.integer_shift, [2, 5, -1, 2].map(BigInt::from).to_vec());
        assert_eq!(nf.b0().unwrap().translation, vec![frac(-1, 4)]);
        assert_eq!(nf.reconstruct(), t);
        let json = serde_json::to_value(&nf).unwrap();
        assert_eq!(json["blocks"][0]["kind"], "LAMBDA");
        assert_eq!(json["blocks"][0]["coordinates"][0], 2);
    }
}
