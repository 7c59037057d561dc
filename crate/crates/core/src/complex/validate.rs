use std::fmt;

use serde::Serialize;

use super::{CubeComplex, SignedAxis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    FacetCount,
    FacetDimension,
    DuplicateFace,
    FaceOutOfRange,
    BadFacetMap,
    CornerInconsistency,
    DimensionExceeded,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::FacetCount => "facet count",
            ViolationKind::FacetDimension => "facet dimension",
            ViolationKind::DuplicateFace => "duplicate face",
            ViolationKind::FaceOutOfRange => "face out of range",
            ViolationKind::BadFacetMap => "bad facet map",
            ViolationKind::CornerInconsistency => "corner inconsistency",
            ViolationKind::DimensionExceeded => "dimension exceeded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub cell: String,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at `{}` ({})", v.kind, v.cell, v.detail))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks every structural invariant and reports all failures.
pub fn validate(cx: &CubeComplex) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |cell: &str, kind, detail: String| {
        out.push(Violation { cell: cell.to_string(), kind, detail })
    };
    for c in cx.cells() {
        let k = c.dim;
        if k > cx.dimension() {
            push(&c.id, ViolationKind::DimensionExceeded, format!("dim {k} > {}", cx.dimension()));
        }
        if c.facets.len() != 2 * k {
            push(
                &c.id,
                ViolationKind::FacetCount,
                format!("{} facets, expected {}", c.facets.len(), 2 * k),
            );
        }
        let mut seen = vec![false; 2 * k];
        for f in &c.facets {
            let fc = cx.cell(f.cell);
            if fc.dim + 1 != k {
                push(
                    &c.id,
                    ViolationKind::FacetDimension,
                    format!("facet `{}` has dim {}, expected {}", fc.id, fc.dim, k.saturating_sub(1)),
                );
            }
            if f.face.axis >= k {
                push(&c.id, ViolationKind::FaceOutOfRange, format!("face {}", f.face));
                continue;
            }
            let slot = f.face.order_key();
            if seen[slot] {
                push(&c.id, ViolationKind::DuplicateFace, format!("face {}", f.face));
            }
            seen[slot] = true;
            if !map_is_valid(k, f.face, &f.map) {
                let m: Vec<String> = f.map.iter().map(ToString::to_string).collect();
                push(
                    &c.id,
                    ViolationKind::BadFacetMap,
                    format!("facet `{}` map [{}]", fc.id, m.join(",")),
                );
            }
        }
    }
    for (cell, pattern) in cx.inconsistencies() {
        push(
            cx.id(*cell),
            ViolationKind::CornerInconsistency,
            format!("face {pattern} is reached inconsistently through different facets"),
        );
    }
    ValidationReport { violations: out }
}

fn map_is_valid(k: usize, face: SignedAxis, map: &[SignedAxis]) -> bool {
    if map.len() + 1 != k {
        return false;
    }
    let mut seen = vec![false; k];
    seen[face.axis] = true;
    map.iter().all(|m| m.axis < k && !std::mem::replace(&mut seen[m.axis], true))
}
