use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::RationalOrthoAffine;
use crate::rational::{is_integral, serde_ints, serde_qvec, QMatrix, Q};

/// An integer translate of the coordinate subspace spanned by `free`.
/// Coordinates are 0-based; `offset` lists the values on the complement, in
/// increasing coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceSpec {
    pub free: Vec<usize>,
    #[serde(serialize_with = "serde_ints::serialize")]
    pub offset: Vec<BigInt>,
}

/// A witness `A = A₁ ⊕ A₂` (on `hypersurface.free` and its complement) with
/// `b₂` integral. The hypersurface through the origin is carried to
/// `image`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceSplit {
    pub hypersurface: HypersurfaceSpec,
    pub image: HypersurfaceSpec,
    pub a1: QMatrix,
    #[serde(with = "serde_qvec")]
    pub b1: Vec<Q>,
    pub a2: QMatrix,
    #[serde(with = "serde_qvec")]
    pub b2: Vec<Q>,
}

/// Connected components of the graph on coordinates with an edge `i -- j`
/// whenever `A_ij ≠ 0`, each sorted, ordered by least coordinate.
pub fn pattern_components(a: &QMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        comp[s] = id;
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if comp[j] == usize::MAX && (!a[(i, j)].is_zero() || !a[(j, i)].is_zero()) {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Finds a splitting `A = A₁ ⊕ A₂` with `b₂` integral, if one exists.
///
/// Any coordinate-aligned splitting is a union of pattern components, so a
/// split exists iff there are at least two components and one of them has
/// integral translation. The last such component (by least coordinate) is
/// taken as `A₂`.
pub fn preserves_proper_hypersurface(t: &RationalOrthoAffine) -> Option<HypersurfaceSplit> {
    let a = t.matrix();
    let b = t.translation();
    let comps = pattern_components(a);
    if comps.len() < 2 {
        return None;
    }
    let fixed = comps
        .iter()
        .rev()
        .find(|c| c.iter().all(|&i| is_integral(&b[i])))?
        .clone();
    let free: Vec<usize> = (0..t.dim()).filter(|i| !fixed.contains(i)).collect();
    let pick = |idx: &[usize]| idx.iter().map(|&i| b[i].clone()).collect::<Vec<Q>>();
    let b2 = pick(&fixed);
    Some(HypersurfaceSplit {
        hypersurface: HypersurfaceSpec {
            free: free.clone(),
            offset: vec![BigInt::zero(); fixed.len()],
        },
        image: HypersurfaceSpec {
            free: free.clone(),
            offset: b2.iter().map(|x| x.to_integer()).collect(),
        },
        a1: a.submatrix(&free, &free),
        b1: pick(&free),
        a2: a.submatrix(&fixed, &fixed),
        b2,
    })
}
