use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::ConstructionError;
use crate::isometry::RationalOrthoAffine;
use crate::rational::{is_integral, QMatrix, Q};

/// A pair of integral vectors of the same length whose coordinates do not
/// differ by a signed permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PythagoreanPair {
    pub a: [i64; 2],
    pub b: [i64; 2],
    pub norm_sq: i64,
}

fn norm_sq(v: [i64; 2]) -> i64 {
    v[0] * v[0] + v[1] * v[1]
}

/// `(min |v_i|, max |v_i|)`: the signed-permutation class of `v`.
fn class(v: [i64; 2]) -> (i64, i64) {
    let (x, y) = (v[0].abs(), v[1].abs());
    (x.min(y), x.max(y))
}

impl PythagoreanPair {
    pub fn new(a: [i64; 2], b: [i64; 2]) -> Result<Self, ConstructionError> {
        let bad = |why: &str| Err(ConstructionError::NotADouble(format!("{a:?}, {b:?}: {why}")));
        if norm_sq(a) != norm_sq(b) {
            return bad("different lengths");
        }
        if class(a) == class(b) {
            return bad("coordinates differ by a signed permutation");
        }
        if a[0] * b[1] - a[1] * b[0] == 0 {
            return bad("linearly dependent");
        }
        Ok(PythagoreanPair { a, b, norm_sq: norm_sq(a) })
    }

    /// Same pair up to signed permutations of each vector and `a ↔ b`.
    pub fn equivalent(&self, other: &PythagoreanPair) -> bool {
        let mine = [class(self.a), class(self.b)];
        let theirs = [class(other.a), class(other.b)];
        mine == theirs || mine == [theirs[1], theirs[0]]
    }
}

/// Every distinct Pythagorean double with coordinates of magnitude at most
/// `limit`. Each class is reported once, as `a = (p, q)` with `p ≤ q` and
/// `b = (s, r)` with `r ≤ s`, `a` having the smaller minimal coordinate.
pub fn find_pythagorean_doubles(limit: u32) -> Vec<PythagoreanPair> {
    let l = i64::from(limit);
    let mut by_norm: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for p in 0..=l {
        for q in p.max(1)..=l {
            by_norm.entry(p * p + q * q).or_default().push((p, q));
        }
    }
    let mut out = Vec::new();
    for classes in by_norm.values() {
        for (i, &(p, q)) in classes.iter().enumerate() {
            for &(r, s) in &classes[i + 1..] {
                out.push(PythagoreanPair::new([p, q], [s, r]).expect("distinct classes of equal norm"));
            }
        }
    }
    out
}

/// The reflection exchanging `a` and `b`: `I - 2uuᵀ/|u|²` with `u = a - b`.
pub fn swap_isometry(p: &PythagoreanPair) -> RationalOrthoAffine {
    let u = [p.a[0] - p.b[0], p.a[1] - p.b[1]];
    let n = Q::from_integer(BigInt::from(norm_sq(u)));
    let mut m = QMatrix::identity(2);
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] -= Q::from_integer(BigInt::from(2 * u[i] * u[j])) / &n;
        }
    }
    RationalOrthoAffine::linear(m).expect("reflections are orthogonal")
}

/// Whether the linear part of `t` maps the lattice `⟨a, b⟩` onto itself, so
/// that `t` descends to the torus `R² / ⟨a, b⟩`.
pub fn verify_descends(t: &RationalOrthoAffine, a: [i64; 2], b: [i64; 2]) -> bool {
    if t.dim() != 2 {
        return false;
    }
    let basis = QMatrix::from_ints(&[&[a[0], b[0]], &[a[1], b[1]]]);
    let Some(inv) = basis.inverse() else { return false };
    // coordinates of A·a and A·b in the basis (a, b)
    let m = inv.mul(&t.matrix().mul(&basis).expect("2×2")).expect("2×2");
    if !m.entries().all(is_integral) {
        return false;
    }
    let det = m.determinant().expect("square");
    det.abs() == Q::one()
}
