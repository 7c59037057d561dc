use serde::{Deserialize, Serialize};

use crate::complex::{Coord, CubeComplex, Embedding, Pattern, SignedAxis};
use crate::isometry::CubeSpec;

/// Isometry of the model cube of an `n`-cell onto an integral unit cube of
/// `R^n`: `u ↦ origin + Σ_i ±u_i e_{axes[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    pub cube: String,
    pub origin: Vec<i64>,
    #[serde(with = "axes_serde")]
    pub axes: Vec<SignedAxis>,
}

mod axes_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(axes: &[SignedAxis], s: S) -> Result<S::Ok, S::Error> {
        axes.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<SignedAxis>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

fn sign(b: bool) -> i64 {
    if b {
        1
    } else {
        -1
    }
}

fn negate(a: SignedAxis) -> SignedAxis {
    SignedAxis { axis: a.axis, positive: !a.positive }
}

impl Chart {
    /// The chart placing the model cube on `[0,1]^n` unchanged.
    pub fn identity(cube: impl Into<String>, n: usize) -> Self {
        Chart { cube: cube.into(), origin: vec![0; n], axes: (0..n).map(SignedAxis::plus).collect() }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Whether the axes form a signed permutation of the right size.
    pub fn is_well_formed(&self) -> bool {
        let n = self.origin.len();
        let mut seen = vec![false; n];
        self.axes.len() == n
            && self.axes.iter().all(|a| a.axis < n && !std::mem::replace(&mut seen[a.axis], true))
    }

    /// Image of an integral model point.
    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        let mut p = self.origin.clone();
        for (i, a) in self.axes.iter().enumerate() {
            p[a.axis] += sign(a.positive) * w[i];
        }
        p
    }

    /// Image of the model corner at `bits`.
    pub fn corner(&self, bits: &[bool]) -> Vec<i64> {
        self.apply(&bits.iter().map(|&b| i64::from(b)).collect::<Vec<_>>())
    }

    /// Image of a face of the model cube, as a box with minimal corner.
    pub fn face_box(&self, p: &Pattern) -> CubeSpec {
        let w: Vec<i64> = p
            .0
            .iter()
            .zip(&self.axes)
            .map(|(c, a)| match c {
                Some(b) => i64::from(*b),
                None => i64::from(!a.positive),
            })
            .collect();
        let mut dirs: Vec<usize> = p.free_axes().iter().map(|&i| self.axes[i].axis).collect();
        dirs.sort_unstable();
        CubeSpec::new(dirs, self.apply(&w))
    }

    /// Chart of the cell on the other side of the facet at `pattern` of this
    /// cube, where that cell meets the facet at `other_pattern`. The two
    /// charts agree on the facet and the cells lie on opposite sides.
    pub fn across(
        &self,
        cx: &CubeComplex,
        pattern: &Pattern,
        other: usize,
        other_pattern: &Pattern,
    ) -> Option<Chart> {
        let me = cx.lookup(&self.cube).ok()?;
        let emb = &cx.face(me, pattern)?.emb;
        let emb2 = &cx.face(other, other_pattern)?.emb;
        let n = self.dim();
        let (inward_axis, inward_val) = fixed_coordinate(emb)?;
        let (axis2, val2) = fixed_coordinate(emb2)?;

        let mut axes = vec![SignedAxis::plus(0); n];
        let mut filled = vec![false; n];
        // derivative of chart ∘ embedding along each facet coordinate
        for (i, c) in emb.coords.iter().enumerate() {
            let Coord::Var { src, flip } = *c else { continue };
            let d = if flip { negate(self.axes[i]) } else { self.axes[i] };
            let (j, flip2) = var_target(emb2, src)?;
            axes[j] = if flip2 { negate(d) } else { d };
            filled[j] = true;
        }
        // E's inward normal at the facet, then reversed for the other cell
        let inward = if inward_val { negate(self.axes[inward_axis]) } else { self.axes[inward_axis] };
        let outward = negate(inward);
        axes[axis2] = if val2 { negate(outward) } else { outward };
        filled[axis2] = true;
        if !filled.iter().all(|&f| f) {
            return None;
        }

        // both charts send the facet's origin to the same point
        let start = self.apply(&embedding_origin(emb));
        let w0 = embedding_origin(emb2);
        let mut origin = start;
        for (i, a) in axes.iter().enumerate() {
            origin[a.axis] -= sign(a.positive) * w0[i];
        }
        Some(Chart { cube: cx.id(other).to_string(), origin, axes })
    }
}

fn fixed_coordinate(e: &Embedding) -> Option<(usize, bool)> {
    let mut found = None;
    for (i, c) in e.coords.iter().enumerate() {
        if let Coord::Const(b) = c {
            if found.is_some() {
                return None;
            }
            found = Some((i, *b));
        }
    }
    found
}

fn var_target(e: &Embedding, src: usize) -> Option<(usize, bool)> {
    e.coords.iter().enumerate().find_map(|(i, c)| match *c {
        Coord::Var { src: s, flip } if s == src => Some((i, flip)),
        _ => None,
    })
}

/// Parent-cube point hit by the facet's origin.
fn embedding_origin(e: &Embedding) -> Vec<i64> {
    e.coords
        .iter()
        .map(|c| match *c {
            Coord::Const(b) => i64::from(b),
            Coord::Var { flip, .. } => i64::from(flip),
        })
        .collect()
}
