//! Square surfaces, their cone points and the cone planes `Cone(R², n)`.

mod plane;
mod power;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{raw_ascending_link, validate, ComplexError, CubeComplex};

pub use plane::{build_cone_plane, cone_plane_symmetries, square_automorphisms, SymmetryReport};
pub use power::{cubical_power_bound, integral_configurations};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("not a square surface: {0}")]
    NotASurface(String),
    #[error("cone order {0} < 4")]
    OrderTooSmall(usize),
    #[error("radius must be at least 1")]
    BadRadius,
    #[error("bad cone points: {0}")]
    BadPoints(String),
}

/// A closed square complex: every edge lies in exactly two squares and
/// every vertex link is one cycle. Cone orders below 4 are allowed here so
/// that they can be reported.
#[derive(Debug, Clone)]
pub struct SquareSurface {
    complex: CubeComplex,
    orders: BTreeMap<String, usize>,
}

/// Number of corners at a vertex when its link, counted with multiplicity,
/// is a single cycle.
fn link_cycle(cx: &CubeComplex, v: usize) -> Option<usize> {
    let raw = raw_ascending_link(cx, v);
    let k = raw.vertices.len();
    let mut degree = vec![0usize; k];
    let mut adj = vec![Vec::new(); k];
    let mut corners = 0;
    for (_, s) in &raw.simplices {
        let [a, b] = s[..] else { continue };
        corners += 1;
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    if k == 0 || degree.iter().any(|&d| d != 2) {
        return None;
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s).then_some(corners)
}

impl SquareSurface {
    pub fn new(complex: CubeComplex) -> Result<Self, ConeError> {
        if complex.dimension() != 2 {
            return Err(ConeError::NotASurface(format!("dimension {}", complex.dimension())));
        }
        let report = validate(&complex);
        if !report.is_valid() {
            return Err(ComplexError::Invalid(report).into());
        }
        for e in complex.cells_of_dim(1) {
            let squares = complex.cofaces(e).filter(|(g, _)| complex.cell(*g).dim == 2).count();
            if squares != 2 {
                return Err(ConeError::NotASurface(format!(
                    "edge `{}` lies in {squares} squares",
                    complex.id(e)
                )));
            }
        }
        let mut orders = BTreeMap::new();
        for v in complex.vertices() {
            let k = link_cycle(&complex, v).ok_or_else(|| {
                ConeError::NotASurface(format!("link of `{}` is not a single cycle", complex.id(v)))
            })?;
            orders.insert(complex.id(v).to_string(), k);
        }
        Ok(SquareSurface { complex, orders })
    }

    /// Reads the core JSON format; the `"surface": true` marker is required.
    pub fn from_json(text: &str) -> Result<Self, ConeError> {
        let doc: crate::complex::ComplexJson =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        if !doc.surface {
            return Err(ConeError::NotASurface("missing \"surface\": true marker".into()));
        }
        Self::new(CubeComplex::from_json_value(doc)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.complex.to_json_value(true)).expect("serializable")
    }

    pub fn complex(&self) -> &CubeComplex {
        &self.complex
    }

    pub fn euler_characteristic(&self) -> i64 {
        let c = |d| self.complex.count_of_dim(d) as i64;
        c(0) - c(1) + c(2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeOrders {
    pub orders: BTreeMap<String, usize>,
    /// Vertices of order at least 5.
    pub singular: Vec<String>,
}

pub fn cone_orders(s: &SquareSurface) -> ConeOrders {
    let singular = s.orders.iter().filter(|(_, &k)| k >= 5).map(|(v, _)| v.clone()).collect();
    ConeOrders { orders: s.orders.clone(), singular }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussBonnet {
    pub euler_characteristic: i64,
    /// `Σ_v (4 - k_v)`.
    pub curvature: i64,
    pub holds: bool,
}

pub fn gauss_bonnet(s: &SquareSurface) -> GaussBonnet {
    let chi = s.euler_characteristic();
    let curvature: i64 = s.orders.values().map(|&k| 4 - k as i64).sum();
    GaussBonnet { euler_characteristic: chi, curvature, holds: curvature == 4 * chi }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverClass {
    Euclidean,
    QiHyperbolicPlane,
    /// Some vertex has order below 4, so the cover is not CAT(0).
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub orders: BTreeMap<String, usize>,
    pub singular: Vec<String>,
    pub euler_characteristic: i64,
    pub classification: CoverClass,
}

/// The quotient is compact, so cone angles are bounded and singular points
/// are cobounded in the cover as soon as one exists.
pub fn classify_universal_cover(s: &SquareSurface) -> ConeReport {
    let ConeOrders { orders, singular } = cone_orders(s);
    let classification = if orders.values().any(|&k| k < 4) {
        CoverClass::Invalid
    } else if singular.is_empty() {
        CoverClass::Euclidean
    } else {
        CoverClass::QiHyperbolicPlane
    };
    ConeReport { orders, singular, euler_characteristic: s.euler_characteristic(), classification }
}
