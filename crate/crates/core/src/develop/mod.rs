//! Developing the trace of a non-cubical isometry across a complex.
//!
//! Starting from a charted `n`-cube, charts are pushed across facets whose
//! image under the trace meets the interior of an `n`-cube, out to a fixed
//! dual-graph radius. Vertices of the charted region whose link differs from
//! the common link are branch vertices.

mod chart;
mod product;
mod sphere;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{check_npc, interior_point_link, raw_ascending_link, ComplexError, CubeComplex, Pattern};
use crate::isometry::{image_meets_open_top_cube, preserves_proper_hypersurface, RationalOrthoAffine};
use crate::simplicial::SimplicialComplex;

pub use chart::Chart;
pub use product::{product_structure, Factor, FactorSpec};
pub use sphere::{
    classify_sphere, simplex_count_identities, sphere_volume_identity, IdentityCheck, IdentityReport,
    SphereClass, SphereKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopError {
    #[error("seed `{0}` is not an n-cube of the complex with n the dimension of the trace")]
    SeedNotTopCube(String),
    #[error("seed chart is not a signed permutation of the right size")]
    BadChart,
    #[error("cubical trace: the isometry is a signed permutation with integral translation")]
    CubicalTrace,
    #[error("radius must be at least 1")]
    BadRadius,
    #[error("link condition fails at vertex `{0}`")]
    Npc(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("`{0}` is not a branch vertex of this development")]
    NotBranchVertex(String),
    #[error("bad simplex counts: {0}")]
    Counts(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontierReason {
    /// The neighbour lies beyond the radius.
    Radius,
    /// The facet lies in a single `n`-cube.
    FreeFace,
    /// The facet lies in three or more `n`-cubes.
    NonManifoldFace,
    /// The facet's image stays inside an integral hyperplane.
    CubicalImage,
    /// The trace preserves a proper hypersurface, so the development may
    /// branch along it; only per-vertex branching is tracked.
    MixedBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FrontierEntry {
    pub cube: String,
    /// Facet cell where the development stopped, if any.
    pub facet: Option<String>,
    pub reason: FrontierReason,
}

/// Two charted cubes meeting along a facet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DualEdge {
    pub a: String,
    pub b: String,
    pub facet: String,
    /// Whether the charts of `a` and `b` induce the same chart of the facet.
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevelopmentResult {
    pub n: usize,
    pub radius: usize,
    pub seed: String,
    pub charts: BTreeMap<String, Chart>,
    pub distance: BTreeMap<String, usize>,
    /// BFS tree: each non-seed cube and the cube it was charted from.
    pub parents: BTreeMap<String, String>,
    pub adjacencies: Vec<DualEdge>,
    /// `Λ_C` with the class of each link `M_p`.
    pub branch_vertices: BTreeMap<String, SphereClass>,
    pub frontier: Vec<FrontierEntry>,
    /// f-vector of the common link `Σ_{n-1} * asc(seed)`.
    pub common_link_counts: Vec<usize>,
}

impl DevelopmentResult {
    pub fn is_charted(&self, id: &str) -> bool {
        self.charts.contains_key(id)
    }

    pub fn branch_vertex_ids(&self) -> BTreeSet<String> {
        self.branch_vertices.keys().cloned().collect()
    }

    /// Adjacencies whose charts disagree, i.e. the monodromy of the
    /// development around branch vertices.
    pub fn mismatches(&self) -> impl Iterator<Item = &DualEdge> {
        self.adjacencies.iter().filter(|e| !e.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Dual graph of the charted region; disagreeing adjacencies are dashed,
    /// tree edges bold.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph \"development\" {\n");
        for (id, c) in &self.charts {
            let origin: Vec<String> = c.origin.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  \"{id}\" [label=\"{id}\\n({})\"];", origin.join(","));
        }
        for e in &self.adjacencies {
            let tree = self.parents.get(&e.b) == Some(&e.a) || self.parents.get(&e.a) == Some(&e.b);
            let style = if !e.agrees {
                " [style=dashed]"
            } else if tree {
                " [style=bold]"
            } else {
                ""
            };
            let _ = writeln!(s, "  \"{}\" -- \"{}\"{style};", e.a, e.b);
        }
        s.push_str("}\n");
        s
    }
}

/// The `n`-cube incidences of the facet at `pattern` of `cube`.
fn facet_incidences(cx: &CubeComplex, n: usize, facet: usize) -> Vec<(usize, Pattern)> {
    let mut v: Vec<(usize, Pattern)> = cx.cofaces(facet).filter(|(h, _)| cx.cell(*h).dim == n).collect();
    v.sort();
    v
}

fn facet_patterns(n: usize) -> impl Iterator<Item = Pattern> {
    (0..n).flat_map(move |axis| [false, true].map(|b| Pattern::full(n).with(axis, Some(b))))
}

fn edge(a: &str, b: &str, facet: &str, agrees: bool) -> DualEdge {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    DualEdge { a: a.into(), b: b.into(), facet: facet.into(), agrees }
}

/// Builds the charted region around `seed` for the trace `tau`.
pub fn develop(
    cx: &CubeComplex,
    seed: &Chart,
    tau: &RationalOrthoAffine,
    radius: usize,
) -> Result<DevelopmentResult, DevelopError> {
    let n = tau.dim();
    let s = cx.lookup(&seed.cube).map_err(|_| DevelopError::SeedNotTopCube(seed.cube.clone()))?;
    if cx.cell(s).dim != n {
        return Err(DevelopError::SeedNotTopCube(seed.cube.clone()));
    }
    if seed.dim() != n || !seed.is_well_formed() {
        return Err(DevelopError::BadChart);
    }
    if tau.is_cubical() {
        return Err(DevelopError::CubicalTrace);
    }
    if radius < 1 {
        return Err(DevelopError::BadRadius);
    }
    let npc = check_npc(cx)?;
    if let Some(o) = npc.offences.first() {
        return Err(DevelopError::Npc(o.vertex().to_string()));
    }

    let mut charts: BTreeMap<usize, Chart> = BTreeMap::new();
    let mut distance: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parents = BTreeMap::new();
    let mut adjacencies = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    if preserves_proper_hypersurface(tau).is_some() {
        frontier.insert(FrontierEntry { cube: seed.cube.clone(), facet: None, reason: FrontierReason::MixedBlocks });
    }
    charts.insert(s, seed.clone());
    distance.insert(s, 0);
    let mut queue = VecDeque::from([s]);

    while let Some(c) = queue.pop_front() {
        let chart = charts[&c].clone();
        let d = distance[&c];
        for p in facet_patterns(n) {
            let Some(entry) = cx.face(c, &p) else { continue };
            let facet = entry.cell;
            let stop = |reason| FrontierEntry { cube: cx.id(c).into(), facet: Some(cx.id(facet).into()), reason };
            let inc = facet_incidences(cx, n, facet);
            match inc.len() {
                1 => {
                    frontier.insert(stop(FrontierReason::FreeFace));
                    continue;
                }
                2 => {}
                _ => {
                    frontier.insert(stop(FrontierReason::NonManifoldFace));
                    continue;
                }
            }
            if !image_meets_open_top_cube(tau, &chart.face_box(&p)) {
                frontier.insert(stop(FrontierReason::CubicalImage));
                continue;
            }
            let Some((h, q)) = inc.into_iter().find(|(h, q)| !(*h == c && *q == p)) else { continue };
            let Some(next) = chart.across(cx, &p, h, &q) else { continue };
            if let Some(existing) = charts.get(&h) {
                adjacencies.insert(edge(cx.id(c), cx.id(h), cx.id(facet), *existing == next));
            } else if d + 1 > radius {
                frontier.insert(stop(FrontierReason::Radius));
            } else {
                adjacencies.insert(edge(cx.id(c), cx.id(h), cx.id(facet), true));
                parents.insert(cx.id(h).to_string(), cx.id(c).to_string());
                charts.insert(h, next);
                distance.insert(h, d + 1);
                queue.push_back(h);
            }
        }
    }

    let common = interior_point_link(cx, &seed.cube)?.link;
    let mut branch_vertices = BTreeMap::new();
    let candidates: BTreeSet<usize> = charts.keys().flat_map(|&c| cx.cell_vertices(c)).collect();
    for v in candidates {
        if !is_interior(cx, n, v, &charts) {
            continue;
        }
        let link = raw_ascending_link(cx, v).to_simplicial();
        if !link.is_isomorphic(&common) {
            let m = charted_link(cx, v, &charts);
            branch_vertices.insert(cx.id(v).to_string(), classify_sphere(&m, n));
        }
    }

    let name = |i: &usize| cx.id(*i).to_string();
    Ok(DevelopmentResult {
        n,
        radius,
        seed: seed.cube.clone(),
        charts: charts.iter().map(|(k, c)| (name(k), c.clone())).collect(),
        distance: distance.iter().map(|(k, d)| (name(k), *d)).collect(),
        parents,
        adjacencies: adjacencies.into_iter().collect(),
        branch_vertices,
        frontier: frontier.into_iter().collect(),
        common_link_counts: common.f_vector(),
    })
}

/// Every `n`-cube at `v` is charted and every `(n-1)`-cell at `v` lies in
/// exactly two `n`-cube incidences.
fn is_interior(cx: &CubeComplex, n: usize, v: usize, charts: &BTreeMap<usize, Chart>) -> bool {
    let mut any = false;
    for (g, _) in cx.cofaces(v) {
        let k = cx.cell(g).dim;
        if k == n {
            any = true;
            if !charts.contains_key(&g) {
                return false;
            }
        } else if k + 1 == n && facet_incidences(cx, n, g).len() != 2 {
            return false;
        }
    }
    any
}

/// `lk(v) ∩ K_C`: the link simplices coming from charted cubes.
fn charted_link(cx: &CubeComplex, v: usize, charts: &BTreeMap<usize, Chart>) -> SimplicialComplex {
    let raw = raw_ascending_link(cx, v);
    let facets: Vec<Vec<usize>> = raw
        .simplices
        .iter()
        .filter(|(src, _)| charts.contains_key(&src.cell))
        .map(|(_, verts)| verts.clone())
        .collect();
    // keep only link vertices that occur
    let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
    let index: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let labels = used.iter().map(|&u| raw.labels()[u].clone()).collect();
    SimplicialComplex::new(labels, facets.into_iter().map(|f| f.iter().map(|u| index[u]).collect()))
}

/// Recomputes the class of `M_p` at a branch vertex of `result`.
pub fn branch_link(cx: &CubeComplex, result: &DevelopmentResult, v: &str) -> Result<SphereClass, DevelopError> {
    if !result.branch_vertices.contains_key(v) {
        return Err(DevelopError::NotBranchVertex(v.to_string()));
    }
    let id = cx.lookup(v)?;
    let charts: BTreeMap<usize, Chart> = result
        .charts
        .iter()
        .map(|(k, c)| Ok((cx.lookup(k)?, c.clone())))
        .collect::<Result<_, ComplexError>>()?;
    Ok(classify_sphere(&charted_link(cx, id, &charts), result.n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    /// Every charted pair sharing a facet fits the recorded adjacency.
    pub consistent: bool,
    /// Adjacencies whose recorded `agrees` flag is wrong or missing.
    pub problems: Vec<String>,
}

/// Re-derives, for every charted pair sharing a facet, whether the two charts
/// agree on it, and compares with the result. Disagreements must sit on
/// recorded mismatches; tree edges must agree.
pub fn check_chart_compatibility(cx: &CubeComplex, result: &DevelopmentResult) -> CompatibilityReport {
    let mut problems = Vec::new();
    let recorded: BTreeMap<(String, String, String), bool> = result
        .adjacencies
        .iter()
        .map(|e| ((e.a.clone(), e.b.clone(), e.facet.clone()), e.agrees))
        .collect();
    for (id, chart) in &result.charts {
        let Ok(c) = cx.lookup(id) else {
            problems.push(format!("unknown cube {id}"));
            continue;
        };
        if chart.dim() != result.n || !chart.is_well_formed() {
            problems.push(format!("malformed chart on {id}"));
        }
        for p in facet_patterns(result.n) {
            let Some(entry) = cx.face(c, &p) else { continue };
            let facet = entry.cell;
            let inc = facet_incidences(cx, result.n, facet);
            if inc.len() != 2 {
                continue;
            }
            let Some((h, q)) = inc.into_iter().find(|(h, q)| !(*h == c && *q == p)) else { continue };
            let Some(other) = result.charts.get(cx.id(h)) else { continue };
            let agrees = chart.across(cx, &p, h, &q).as_ref() == Some(other);
            let e = edge(id, cx.id(h), cx.id(facet), agrees);
            let tree = result.parents.get(&e.b) == Some(&e.a) || result.parents.get(&e.a) == Some(&e.b);
            match recorded.get(&(e.a.clone(), e.b.clone(), e.facet.clone())) {
                Some(&r) if r == agrees => {
                    if tree && !agrees {
                        problems.push(format!("tree edge {} -- {} disagrees", e.a, e.b));
                    }
                }
                // pairs across a cubical-image facet are never recorded
                None if agrees => {}
                _ => problems.push(format!("{} -- {} across {}: agrees = {agrees}", e.a, e.b, e.facet)),
            }
        }
    }
    problems.sort();
    problems.dedup();
    CompatibilityReport { consistent: problems.is_empty(), problems }
}
