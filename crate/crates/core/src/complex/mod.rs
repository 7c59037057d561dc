//! Finite combinatorial cube complexes.
//!
//! A complex is a list of cells. Each cell of dimension `k` lists its `2k`
//! facets, each attached to a named face `±i` of the model cube `[0,1]^k`
//! through an explicit coordinate map. From these facet maps the full face
//! poset of every cell is derived (see [`faces`]); all link computations run
//! on that table.

pub mod faces;
pub mod generators;
mod json;
mod link;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use faces::{Coord, Embedding, Pattern};
pub use json::{CellJson, ComplexJson, FacetJson};
pub use link::{
    ascending_link, check_npc, interior_point_link, locally_maximal_cubes, raw_ascending_link,
    vertex_link, Incidence, LinkDefect, LinkReport, NpcOffence, NpcReport, RawLink,
};
pub use validate::{validate, ValidationReport, Violation, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("duplicate cell id `{0}`")]
    DuplicateId(String),
    #[error("unknown cell id `{0}`")]
    UnknownCell(String),
    #[error("cell `{0}` is not a vertex")]
    NotAVertex(String),
    #[error("cell `{0}` is a vertex; use the vertex link")]
    IsAVertex(String),
    #[error("malformed face `{0}` (expected a signed coordinate such as \"+2\")")]
    BadFace(String),
    #[error("invalid complex: {0}")]
    Invalid(ValidationReport),
    #[error("malformed complex JSON: {0}")]
    Json(String),
}

/// A signed coordinate direction of a model cube; axis is 0-based, rendered
/// 1-based as `"+2"`, `"-1"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedAxis {
    pub axis: usize,
    pub positive: bool,
}

impl SignedAxis {
    pub fn plus(axis: usize) -> Self {
        SignedAxis { axis, positive: true }
    }

    pub fn minus(axis: usize) -> Self {
        SignedAxis { axis, positive: false }
    }

    /// Canonical facet order: `-1, +1, -2, +2, ...`.
    pub fn order_key(&self) -> usize {
        2 * self.axis + usize::from(self.positive)
    }
}

impl fmt::Display for SignedAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.positive { '+' } else { '-' }, self.axis + 1)
    }
}

impl FromStr for SignedAxis {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (positive, digits) = match t.as_bytes().first() {
            Some(b'+') => (true, &t[1..]),
            Some(b'-') => (false, &t[1..]),
            _ => (true, t),
        };
        match digits.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(SignedAxis { axis: n - 1, positive }),
            _ => Err(ComplexError::BadFace(s.to_string())),
        }
    }
}

/// Attachment of a facet cell to one face of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub cell: usize,
    pub face: SignedAxis,
    /// Facet coordinate `j` runs along parent coordinate `map[j].axis`,
    /// reversed when `map[j]` is negative.
    pub map: Vec<SignedAxis>,
}

impl Facet {
    /// Order-preserving map onto the coordinates other than `face.axis`.
    pub fn default_map(dim: usize, face: SignedAxis) -> Vec<SignedAxis> {
        (0..dim).filter(|&i| i != face.axis).map(SignedAxis::plus).collect()
    }

    pub fn has_default_map(&self, dim: usize) -> bool {
        self.map == Self::default_map(dim, self.face)
    }

    pub fn embedding(&self, dim: usize) -> Embedding {
        let mut coords = vec![Coord::Const(false); dim];
        if self.face.axis < dim {
            coords[self.face.axis] = Coord::Const(self.face.positive);
        }
        for (j, m) in self.map.iter().enumerate() {
            if m.axis < dim {
                coords[m.axis] = Coord::Var { src: j, flip: !m.positive };
            }
        }
        Embedding { coords }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub facets: Vec<Facet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceEntry {
    pub cell: usize,
    /// Embedding of the face cell's model cube into the parent's.
    pub emb: Embedding,
}

/// A cell description by ids, as accepted by [`CubeComplex::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
    pub facets: Vec<FacetSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetSpec {
    pub id: String,
    pub face: SignedAxis,
    pub map: Option<Vec<SignedAxis>>,
}

impl FacetSpec {
    pub fn new(id: impl Into<String>, face: SignedAxis) -> Self {
        FacetSpec { id: id.into(), face, map: None }
    }

    pub fn with_map(id: impl Into<String>, face: SignedAxis, map: Vec<SignedAxis>) -> Self {
        FacetSpec { id: id.into(), face, map: Some(map) }
    }
}

#[derive(Debug, Clone)]
pub struct CubeComplex {
    dimension: usize,
    cells: Vec<Cell>,
    index: HashMap<String, usize>,
    faces: Vec<Vec<Option<FaceEntry>>>,
    /// For each cell `t`: every `(cell, pattern code)` at which `t` appears as a proper face.
    cofaces: Vec<Vec<(usize, usize)>>,
    inconsistencies: Vec<(usize, Pattern)>,
}

impl CubeComplex {
    pub fn new(dimension: usize, specs: Vec<CellSpec>) -> Result<Self, ComplexError> {
        let mut index = HashMap::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(ComplexError::DuplicateId(s.id.clone()));
            }
        }
        let mut cells = Vec::with_capacity(specs.len());
        for s in specs {
            let mut facets = Vec::with_capacity(s.facets.len());
            for f in s.facets {
                let cell = *index
                    .get(&f.id)
                    .ok_or_else(|| ComplexError::UnknownCell(f.id.clone()))?;
                let map = f.map.unwrap_or_else(|| Facet::default_map(s.dim, f.face));
                facets.push(Facet { cell, face: f.face, map });
            }
            cells.push(Cell { id: s.id, dim: s.dim, facets });
        }
        let mut cx = CubeComplex {
            dimension,
            cells,
            index,
            faces: Vec::new(),
            cofaces: Vec::new(),
            inconsistencies: Vec::new(),
        };
        cx.build_face_table();
        Ok(cx)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn lookup(&self, id: &str) -> Result<usize, ComplexError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ComplexError::UnknownCell(id.to_string()))
    }

    pub fn id(&self, i: usize) -> &str {
        &self.cells[i].id
    }

    pub fn cells_of_dim(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cells.len()).filter(move |&i| self.cells[i].dim == d)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.cells_of_dim(d).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.cells_of_dim(0)
    }

    /// The face of `cell` at `pattern`, with its attaching embedding.
    pub fn face(&self, cell: usize, pattern: &Pattern) -> Option<&FaceEntry> {
        if pattern.ambient_dim() != self.cells[cell].dim {
            return None;
        }
        self.faces[cell].get(pattern.code()).and_then(Option::as_ref)
    }

    /// Vertex at a corner of the model cube.
    pub fn corner(&self, cell: usize, bits: &[bool]) -> Option<usize> {
        self.face(cell, &Pattern::corner(bits)).map(|e| e.cell)
    }

    /// All proper-face incidences of `cell` inside other cells.
    pub fn cofaces(&self, cell: usize) -> impl Iterator<Item = (usize, Pattern)> + '_ {
        self.cofaces[cell]
            .iter()
            .map(|&(g, code)| (g, Pattern::from_code(self.cells[g].dim, code)))
    }

    /// Vertices of a cell, with multiplicity, in corner order.
    pub fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        let k = self.cells[cell].dim;
        (0..1usize << k)
            .filter_map(|m| {
                let bits: Vec<bool> = (0..k).map(|i| m >> i & 1 == 1).collect();
                self.corner(cell, &bits)
            })
            .collect()
    }

    pub(crate) fn inconsistencies(&self) -> &[(usize, Pattern)] {
        &self.inconsistencies
    }

    fn facet_usable(&self, parent: usize, f: &Facet) -> bool {
        let k = self.cells[parent].dim;
        if self.cells[f.cell].dim + 1 != k || f.face.axis >= k || f.map.len() + 1 != k {
            return false;
        }
        let mut seen = vec![false; k];
        seen[f.face.axis] = true;
        for m in &f.map {
            if m.axis >= k || seen[m.axis] {
                return false;
            }
            seen[m.axis] = true;
        }
        true
    }

    fn build_face_table(&mut self) {
        let n = self.cells.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.cells[i].dim);
        let mut table: Vec<Vec<Option<FaceEntry>>> = self
            .cells
            .iter()
            .map(|c| vec![None; 3usize.pow(c.dim as u32)])
            .collect();
        let mut bad = Vec::new();
        for &c in &order {
            let k = self.cells[c].dim;
            table[c][0] = Some(FaceEntry { cell: c, emb: Embedding::identity(k) });
            let usable: Vec<&Facet> = self.cells[c]
                .facets
                .iter()
                .filter(|f| self.facet_usable(c, f))
                .collect();
            for p in Pattern::all(k).skip(1) {
                let mut found: Option<FaceEntry> = None;
                for axis in p.fixed_axes() {
                    let want = SignedAxis { axis, positive: p.0[axis].unwrap() };
                    let Some(f) = usable.iter().find(|f| f.face == want) else {
                        continue;
                    };
                    let femb = f.embedding(k);
                    let Some(sub) = femb.pull(&p) else { continue };
                    let Some(inner) = table[f.cell][sub.code()].clone() else {
                        continue;
                    };
                    let cand = FaceEntry { cell: inner.cell, emb: femb.compose(&inner.emb) };
                    match &found {
                        None => found = Some(cand),
                        Some(prev) if *prev != cand => {
                            bad.push((c, p.clone()));
                            break;
                        }
                        Some(_) => {}
                    }
                }
                table[c][p.code()] = found;
            }
        }
        let mut cofaces = vec![Vec::new(); n];
        for (g, row) in table.iter().enumerate() {
            for (code, e) in row.iter().enumerate().skip(1) {
                if let Some(e) = e {
                    cofaces[e.cell].push((g, code));
                }
            }
        }
        self.faces = table;
        self.cofaces = cofaces;
        self.inconsistencies = bad;
    }
}
