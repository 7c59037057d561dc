use serde::{Deserialize, Serialize};

use super::{CellSpec, ComplexError, CubeComplex, FacetSpec, SignedAxis};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub surface: bool,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub facets: Vec<FacetJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub id: String,
    pub face: String,
    /// Omitted when the facet is attached order-preservingly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<String>>,
}

impl CubeComplex {
    pub fn from_json_value(doc: ComplexJson) -> Result<Self, ComplexError> {
        let mut specs = Vec::with_capacity(doc.cells.len());
        for c in doc.cells {
            let mut facets = Vec::with_capacity(c.facets.len());
            for f in c.facets {
                let face: SignedAxis = f.face.parse()?;
                let map = match f.map {
                    None => None,
                    Some(m) => Some(
                        m.iter()
                            .map(|s| s.parse::<SignedAxis>())
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                };
                facets.push(FacetSpec { id: f.id, face, map });
            }
            specs.push(CellSpec { id: c.id, dim: c.dim, facets });
        }
        CubeComplex::new(doc.dimension, specs)
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let doc: ComplexJson =
            serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        Self::from_json_value(doc)
    }

    /// Canonical document: cells sorted by id, facets in `-1,+1,-2,...` order.
    pub fn to_json_value(&self, surface: bool) -> ComplexJson {
        let mut cells: Vec<CellJson> = self
            .cells()
            .iter()
            .map(|c| {
                let mut facets: Vec<_> = c.facets.iter().collect();
                facets.sort_by_key(|f| f.face.order_key());
                CellJson {
                    id: c.id.clone(),
                    dim: c.dim,
                    facets: facets
                        .into_iter()
                        .map(|f| FacetJson {
                            id: self.id(f.cell).to_string(),
                            face: f.face.to_string(),
                            map: (!f.has_default_map(c.dim))
                                .then(|| f.map.iter().map(ToString::to_string).collect()),
                        })
                        .collect(),
                }
            })
            .collect();
        cells.sort_by(|a, b| a.id.cmp(&b.id));
        ComplexJson { dimension: self.dimension(), surface, cells }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value(false)).expect("serializable")
    }
}
