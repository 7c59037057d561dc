use std::collections::BTreeMap;

use serde::Serialize;

use super::{validate, ComplexError, CubeComplex, Pattern};
use crate::par;
use crate::simplicial::SimplicialComplex;

/// One way a cell `t` sits inside a cell `cell` of one dimension higher: `t`
/// is the face `pattern` of `cell`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub cell: usize,
    pub pattern: Pattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LinkDefect {
    /// A cube meets the base cell along two of its own faces, so the simplex
    /// it contributes repeats a vertex.
    RepeatedVertex { cube: String },
    /// Two distinct cube corners span the same vertex set.
    DuplicateSimplex { first: String, second: String },
}

/// The ascending link before it is forced to be a simplicial complex: one
/// simplex per incidence of the base cell in a higher cube.
#[derive(Debug, Clone)]
pub struct RawLink {
    pub vertices: Vec<Incidence>,
    /// `(source incidence, vertex indices)`, indices in `vertices`.
    pub simplices: Vec<(Incidence, Vec<usize>)>,
    labels: Vec<String>,
    sources: Vec<String>,
}

impl RawLink {
    pub fn defects(&self) -> Vec<LinkDefect> {
        let mut out = Vec::new();
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (i, (_, verts)) in self.simplices.iter().enumerate() {
            let mut s = verts.clone();
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                out.push(LinkDefect::RepeatedVertex { cube: self.sources[i].clone() });
                continue;
            }
            if let Some(&j) = seen.get(&s) {
                out.push(LinkDefect::DuplicateSimplex {
                    first: self.sources[j].clone(),
                    second: self.sources[i].clone(),
                });
            } else {
                seen.insert(s, i);
            }
        }
        out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_simplicial(&self) -> bool {
        self.defects().is_empty()
    }

    /// Collapses repeated vertices and duplicate simplices.
    pub fn to_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::new(
            self.labels.clone(),
            self.simplices.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
        )
    }
}

fn incidence_label(cx: &CubeComplex, i: &Incidence) -> String {
    format!("{}@{}", cx.id(i.cell), i.pattern)
}

/// Ascending link of `t` with the cube incidences kept apart.
pub fn raw_ascending_link(cx: &CubeComplex, t: usize) -> RawLink {
    let j = cx.cell(t).dim;
    let mut vertices: Vec<Incidence> = cx
        .cofaces(t)
        .filter(|(g, _)| cx.cell(*g).dim == j + 1)
        .map(|(cell, pattern)| Incidence { cell, pattern })
        .collect();
    vertices.sort();
    let index: BTreeMap<&Incidence, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut simplices = Vec::new();
    let mut sources = Vec::new();
    let mut cofaces: Vec<(usize, Pattern)> = cx.cofaces(t).collect();
    cofaces.sort();
    for (h, p) in cofaces {
        // each fixed coordinate of p, once freed, gives a (j+1)-face of h through t
        let mut verts = Vec::new();
        for axis in p.fixed_axes() {
            let q = p.with(axis, None);
            let Some(entry) = cx.face(h, &q) else { continue };
            let Some(sub) = entry.emb.pull(&p) else { continue };
            let inc = Incidence { cell: entry.cell, pattern: sub };
            if let Some(&k) = index.get(&inc) {
                verts.push(k);
            }
        }
        if verts.len() == p.fixed_axes().len() {
            let src = Incidence { cell: h, pattern: p };
            sources.push(incidence_label(cx, &src));
            simplices.push((src, verts));
        }
    }
    let labels = vertices.iter().map(|v| incidence_label(cx, v)).collect();
    RawLink { vertices, simplices, labels, sources }
}

pub fn ascending_link(cx: &CubeComplex, id: &str) -> Result<SimplicialComplex, ComplexError> {
    let t = cx.lookup(id)?;
    Ok(raw_ascending_link(cx, t).to_simplicial())
}

pub fn vertex_link(cx: &CubeComplex, id: &str) -> Result<SimplicialComplex, ComplexError> {
    let v = cx.lookup(id)?;
    if cx.cell(v).dim != 0 {
        return Err(ComplexError::NotAVertex(id.to_string()));
    }
    Ok(raw_ascending_link(cx, v).to_simplicial())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub link: SimplicialComplex,
    pub is_flag: bool,
    /// `(Σ_{n-1}, L)` with `link = Σ_{n-1} * L`.
    pub join_decomposition: Option<(SimplicialComplex, SimplicialComplex)>,
}

/// Link of a point in the interior of an `n`-cell: `Σ_{n-1} * asc(c)`.
pub fn interior_point_link(cx: &CubeComplex, id: &str) -> Result<LinkReport, ComplexError> {
    let c = cx.lookup(id)?;
    let n = cx.cell(c).dim;
    if n == 0 {
        return Err(ComplexError::IsAVertex(id.to_string()));
    }
    let sphere = SimplicialComplex::standard_sphere(n as isize - 1);
    let asc = raw_ascending_link(cx, c).to_simplicial();
    let link = sphere.join(&asc);
    Ok(LinkReport {
        is_flag: link.is_flag(),
        link,
        join_decomposition: Some((sphere, asc)),
    })
}

/// Ids of the cells with empty ascending link, sorted.
pub fn locally_maximal_cubes(cx: &CubeComplex) -> Vec<String> {
    let mut ids: Vec<String> = (0..cx.len())
        .filter(|&c| cx.cofaces(c).next().is_none())
        .map(|c| cx.id(c).to_string())
        .collect();
    ids.sort();
    ids
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NpcOffence {
    NotSimplicial { vertex: String, defects: Vec<LinkDefect> },
    /// `clique` lists link vertices spanning an empty simplex.
    NotFlag { vertex: String, clique: Vec<String> },
}

impl NpcOffence {
    pub fn vertex(&self) -> &str {
        match self {
            NpcOffence::NotSimplicial { vertex, .. } | NpcOffence::NotFlag { vertex, .. } => vertex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NpcReport {
    pub npc: bool,
    pub vertices_checked: usize,
    pub offences: Vec<NpcOffence>,
}

/// Gromov's link condition at every vertex. This certifies nonpositive
/// curvature only; CAT(0) additionally needs simple connectivity, which is
/// left to the caller.
pub fn check_npc(cx: &CubeComplex) -> Result<NpcReport, ComplexError> {
    let report = validate(cx);
    if !report.is_valid() {
        return Err(ComplexError::Invalid(report));
    }
    let vertices: Vec<usize> = cx.vertices().collect();
    let mut offences: Vec<NpcOffence> = par::filter_map(&vertices, |&v| {
        let raw = raw_ascending_link(cx, v);
        let defects = raw.defects();
        let vertex = cx.id(v).to_string();
        if !defects.is_empty() {
            return Some(NpcOffence::NotSimplicial { vertex, defects });
        }
        let link = raw.to_simplicial();
        link.missing_clique().map(|c| NpcOffence::NotFlag {
            vertex,
            clique: c.iter().map(|&i| link.label(i).to_string()).collect(),
        })
    });
    offences.sort_by(|a, b| a.vertex().cmp(b.vertex()));
    Ok(NpcReport { npc: offences.is_empty(), vertices_checked: vertices.len(), offences })
}
