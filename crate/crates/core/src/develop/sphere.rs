use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;
use serde::{Serialize, Serializer};

use super::DevelopError;
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SphereKind {
    StandardSphere { m: usize },
    /// Polygon with `k` sides, a circle of length `kπ/2`.
    Circle { k: usize },
    NotASphere { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereClass {
    #[serde(flatten)]
    pub kind: SphereKind,
    /// `F_0, ..., F_m`.
    pub counts: Vec<usize>,
}

fn big_strings<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    #[serde(serialize_with = "big_strings")]
    pub lhs: BigUint,
    #[serde(serialize_with = "big_strings")]
    pub rhs: BigUint,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub m: usize,
    /// `2^{m-k} F_k = C(m+1, k+1) F_m` for `k = 0..=m`.
    pub incidence: Vec<IdentityCheck>,
    /// `C(F_0, 2) ≥ F_1`.
    pub edge_bound: IdentityCheck,
    /// `F_m ≥ 2^{m+1}`.
    pub facet_bound: IdentityCheck,
    /// `F_m = 2^{m+1}` exactly.
    pub facet_bound_tight: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.incidence.iter().all(|c| c.holds) && self.edge_bound.holds && self.facet_bound.holds
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.incidence
            .iter()
            .chain([&self.edge_bound, &self.facet_bound])
            .find(|c| !c.holds)
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn choose(n: usize, k: usize) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

/// Counting identities satisfied by a simplicial `m`-sphere tiled by regular
/// spherical simplices, evaluated on `counts = F_0..F_m`.
pub fn simplex_count_identities(m: usize, counts: &[u64]) -> Result<IdentityReport, DevelopError> {
    if m < 1 || counts.len() != m + 1 || counts.contains(&0) {
        return Err(DevelopError::Counts(format!(
            "need m ≥ 1 and {} positive counts, got m = {m} and {:?}",
            m + 1,
            counts
        )));
    }
    let f = |k: usize| BigUint::from(counts[k]);
    let fm = f(m);
    let incidence = (0..=m)
        .map(|k| {
            let lhs = pow2(m - k) * f(k);
            let rhs = choose(m + 1, k + 1) * &fm;
            IdentityCheck { name: format!("incidence k={k}"), holds: lhs == rhs, lhs, rhs }
        })
        .collect();
    let f0 = counts[0] as usize;
    let pairs = if f0 >= 2 { choose(f0, 2) } else { BigUint::default() };
    let edge_bound = IdentityCheck { name: "edge bound".into(), holds: pairs >= f(1), lhs: pairs, rhs: f(1) };
    let bound = pow2(m + 1);
    let facet_bound_tight = fm == bound;
    let facet_bound = IdentityCheck { name: "facet bound".into(), holds: fm >= bound, lhs: fm, rhs: bound };
    Ok(IdentityReport { m, incidence, edge_bound, facet_bound, facet_bound_tight })
}

/// The boundary of the `(m+1)`-cross-polytope tiles `S^m` by `2^{m+1}`
/// congruent regular simplices, one per orthant; checked by counting facets.
pub fn sphere_volume_identity(m: usize) -> Result<bool, DevelopError> {
    if !(1..=6).contains(&m) {
        return Err(DevelopError::Counts(format!("m = {m} outside 1..=6")));
    }
    let s = SimplicialComplex::standard_sphere(m as isize);
    let facets = s.simplices_of_dim(m).count();
    Ok(facets == 1usize << (m + 1) && s.maximal_simplices().len() == facets)
}

/// Classifies the link `M_p` of a branch vertex in an `n`-dimensional
/// development.
pub fn classify_sphere(link: &SimplicialComplex, n: usize) -> SphereClass {
    let counts = link.f_vector();
    let not = |reason: String| SphereClass { kind: SphereKind::NotASphere { reason }, counts: counts.clone() };
    if n < 2 {
        return not(format!("dimension {n} has no branch vertices"));
    }
    let m = n - 1;
    if link.dim() != Some(m) {
        return not(format!("link has dimension {:?}, expected {m}", link.dim()));
    }
    if m == 1 {
        return match link.cycle_length() {
            Some(k) if k >= 4 => SphereClass { kind: SphereKind::Circle { k }, counts },
            Some(k) => not(format!("cycle of length {k} < 4")),
            None => not("not a single cycle".into()),
        };
    }
    if !link.is_pseudomanifold() {
        return not("not a pseudomanifold".into());
    }
    let raw: Vec<u64> = counts.iter().map(|&c| c as u64).collect();
    let report = simplex_count_identities(m, &raw).expect("counts of a nonempty complex");
    if let Some(bad) = report.first_failure() {
        return not(format!("{} fails: {} vs {}", bad.name, bad.lhs, bad.rhs));
    }
    if !link.is_isomorphic(&SimplicialComplex::standard_sphere(m as isize)) {
        return not("counts match but not isomorphic to the cross-polytope".into());
    }
    SphereClass { kind: SphereKind::StandardSphere { m }, counts }
}
