use serde::Serialize;

use super::DevelopError;
use crate::isometry::{normal_form, BlockKind, RationalOrthoAffine};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub kind: BlockKind,
    pub dim: usize,
    /// `dim ≠ 2`: the factor develops to a standard cubulated `R^dim`.
    /// Planar factors may carry cone points.
    pub standard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorSpec {
    /// Number of LAMBDA directions, `l`.
    pub lambda_rank: usize,
    /// B0 factor first (when present), then B_STRICT factors.
    pub factors: Vec<Factor>,
}

impl FactorSpec {
    pub fn total_dim(&self) -> usize {
        self.lambda_rank + self.factors.iter().map(|f| f.dim).sum::<usize>()
    }
}

/// `[0,1]^l × R^{n_0} × ... × R^{n_k}` read off the normal form of `tau`.
pub fn product_structure(tau: &RationalOrthoAffine) -> Result<FactorSpec, DevelopError> {
    if tau.is_cubical() {
        return Err(DevelopError::CubicalTrace);
    }
    let nf = normal_form(tau);
    let factors = nf
        .blocks
        .iter()
        .filter(|b| b.kind != BlockKind::Lambda)
        .map(|b| Factor { kind: b.kind, dim: b.coordinates.len(), standard: b.coordinates.len() != 2 })
        .collect();
    Ok(FactorSpec { lambda_rank: nf.lambda_rank(), factors })
}
