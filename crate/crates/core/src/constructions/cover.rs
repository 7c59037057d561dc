use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ConstructionError, TorusComplex};
use crate::complex::generators::cell_id;
use crate::complex::{CellSpec, CubeComplex, FacetSpec, SignedAxis};
use crate::cone::SquareSurface;
use crate::rational::Q;

/// A permutation of `0..d` in one-line form: `i ↦ p[i]`.
pub type Perm = Vec<usize>;

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

pub(super) fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// `p` then `q`.
pub(super) fn then(p: &[usize], q: &[usize]) -> Perm {
    p.iter().map(|&x| q[x]).collect()
}

/// `σ_a σ_b σ_a⁻¹ σ_b⁻¹` read left to right; its cycle type is the
/// branching data at the puncture.
pub fn commutator(sa: &[usize], sb: &[usize]) -> Perm {
    then(&then(&then(sa, sb), &inverse(sa)), &inverse(sb))
}

pub fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// A degree-`d` cover of the once-punctured torus given by the images of
/// the two loop generators. JSON permutations are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverJson", into = "CoverJson")]
pub struct CoverSpec {
    pub sigma_a: Perm,
    pub sigma_b: Perm,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    degree: usize,
    sigma_a: Vec<usize>,
    sigma_b: Vec<usize>,
}

impl TryFrom<CoverJson> for CoverSpec {
    type Error = ConstructionError;
    fn try_from(j: CoverJson) -> Result<Self, Self::Error> {
        let down = |p: Vec<usize>| -> Result<Perm, ConstructionError> {
            if p.len() != j.degree || p.contains(&0) {
                return Err(ConstructionError::BadCover(format!("{p:?} is not a permutation of 1..={}", j.degree)));
            }
            Ok(p.into_iter().map(|x| x - 1).collect())
        };
        let (a, b) = (down(j.sigma_a)?, down(j.sigma_b)?);
        CoverSpec::new(a, b)
    }
}

impl From<CoverSpec> for CoverJson {
    fn from(s: CoverSpec) -> Self {
        let up = |p: Perm| p.into_iter().map(|x| x + 1).collect();
        CoverJson { degree: s.degree(), sigma_a: up(s.sigma_a), sigma_b: up(s.sigma_b) }
    }
}

impl CoverSpec {
    /// 0-based permutations of equal size.
    pub fn new(sigma_a: Perm, sigma_b: Perm) -> Result<Self, ConstructionError> {
        if sigma_a.is_empty() || sigma_a.len() != sigma_b.len() || !is_perm(&sigma_a) || !is_perm(&sigma_b) {
            return Err(ConstructionError::BadCover(format!("{sigma_a:?}, {sigma_b:?}")));
        }
        Ok(CoverSpec { sigma_a, sigma_b })
    }

    /// From disjoint cycles written 1-based, e.g. `[[1, 2]]`.
    pub fn from_cycles(d: usize, a: &[&[usize]], b: &[&[usize]]) -> Result<Self, ConstructionError> {
        let build = |cycles: &[&[usize]]| -> Result<Perm, ConstructionError> {
            let mut p: Perm = (0..d).collect();
            for c in cycles {
                for (i, &x) in c.iter().enumerate() {
                    let y = c[(i + 1) % c.len()];
                    if x == 0 || x > d || y == 0 || y > d {
                        return Err(ConstructionError::BadCover(format!("cycle {c:?} outside 1..={d}")));
                    }
                    p[x - 1] = y - 1;
                }
            }
            Ok(p)
        };
        CoverSpec::new(build(a)?, build(b)?)
    }

    pub fn degree(&self) -> usize {
        self.sigma_a.len()
    }

    pub fn is_transitive(&self) -> bool {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for p in [&self.sigma_a, &self.sigma_b] {
                let j = p[i];
                if !std::mem::replace(&mut seen[j], true) {
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn commutator(&self) -> Perm {
        commutator(&self.sigma_a, &self.sigma_b)
    }

    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        serde_json::from_str(text).map_err(|e| ConstructionError::BadCover(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[derive(Debug, Clone)]
pub struct BranchedCover {
    pub surface: SquareSurface,
    pub spec: CoverSpec,
    /// Cover vertices over the base vertex `0,0:` with their local degree.
    pub branch_degrees: BTreeMap<String, usize>,
}

fn qi(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Sheet bookkeeping relative to the parallelogram `ε + [0,1)a + [0,1)b`.
/// `ε` sits just off the origin, so the tiling corners `ε + L` lie in the
/// dual squares around the lattice points and nowhere else.
struct Tiling {
    a: [Q; 2],
    b: [Q; 2],
    eps: [Q; 2],
    det: Q,
}

fn cross(u: &[Q; 2], v: &[Q; 2]) -> Q {
    &u[0] * &v[1] - &u[1] * &v[0]
}

impl Tiling {
    fn new(t: &TorusComplex) -> Self {
        let m = 1 + t.a.iter().chain(&t.b).map(|x| x.abs()).max().unwrap_or(0);
        let eps = [Q::new(1.into(), BigInt::from(4 * m)), Q::new(1.into(), BigInt::from(4 * m * m))];
        let a = t.a.map(qi);
        let b = t.b.map(qi);
        let det = cross(&a, &b);
        Tiling { a, b, eps, det }
    }

    /// `(s, t)` with `p = ε + s a + t b`.
    fn coords(&self, p: &[Q; 2]) -> [Q; 2] {
        let r = [&p[0] - &self.eps[0], &p[1] - &self.eps[1]];
        [cross(&r, &self.b) / &self.det, cross(&self.a, &r) / &self.det]
    }

    /// Lift of `p` into the parallelogram.
    fn lift(&self, p: &[Q; 2]) -> [Q; 2] {
        let [s, t] = self.coords(p);
        let (m, n) = (s.floor(), t.floor());
        [&p[0] - &m * &self.a[0] - &n * &self.b[0], &p[1] - &m * &self.a[1] - &n * &self.b[1]]
    }

    /// Sheet transition along the straight segment from `p` to `p + e`.
    fn voltage(&self, p: &[Q; 2], e: [i64; 2], spec: &CoverSpec) -> Perm {
        let q = [&p[0] + qi(e[0]), &p[1] + qi(e[1])];
        let (c0, c1) = (self.coords(p), self.coords(&q));
        let mut events: Vec<(Q, usize, bool)> = Vec::new();
        for k in 0..2 {
            let (lo, hi) = if c0[k] < c1[k] { (&c0[k], &c1[k]) } else { (&c1[k], &c0[k]) };
            let up = c0[k] < c1[k];
            let mut z = lo.floor() + qi(1);
            while &z < hi {
                events.push(((&z - &c0[k]) / (&c1[k] - &c0[k]), k, up));
                z += qi(1);
            }
        }
        events.sort_by(|x, y| x.0.cmp(&y.0));
        let mut v: Perm = (0..spec.degree()).collect();
        for (_, k, up) in events {
            let g = if k == 0 { &spec.sigma_a } else { &spec.sigma_b };
            v = if up { then(&v, g) } else { then(&v, &inverse(g)) };
        }
        v
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// The cover of `t` minus its base vertex given by `spec`, with the
/// punctures filled back in. Cells of the cover are named `id#sheet`.
pub fn branched_cover(t: &TorusComplex, spec: &CoverSpec) -> Result<BranchedCover, ConstructionError> {
    if !spec.is_transitive() {
        return Err(ConstructionError::NotTransitive);
    }
    let d = spec.degree();
    let [[g, _], [_, h]] = t.hermite;
    let points: Vec<[i64; 2]> = (0..g).flat_map(|x| (0..h).map(move |y| [x, y])).collect();
    let index: BTreeMap<[i64; 2], usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let at = |p: [i64; 2]| index[&t.reduce(p)];

    // voltage[s][dir]: sheet of square s ↦ sheet of its neighbour across the +dir side
    let tiling = Tiling::new(t);
    let half = Q::new(1.into(), 2.into());
    let voltage: Vec<[Perm; 2]> = points
        .iter()
        .map(|&[x, y]| {
            let c = tiling.lift(&[qi(x) + &half, qi(y) + &half]);
            [tiling.voltage(&c, [1, 0], spec), tiling.voltage(&c, [0, 1], spec)]
        })
        .collect();

    // cover vertex candidates (base vertex index, sheet), glued at square corners
    let node = |v: usize, i: usize| v * d + i;
    let mut uf = UnionFind((0..points.len() * d).collect());
    for (s, &[x, y]) in points.iter().enumerate() {
        let (e1, e2, e12) = (at([x + 1, y]), at([x, y + 1]), at([x + 1, y + 1]));
        for i in 0..d {
            let via1 = voltage[e1][1][voltage[s][0][i]];
            let via2 = voltage[e2][0][voltage[s][1][i]];
            uf.union(node(e12, via1), node(e12, via2));
        }
    }
    let name = |p: [i64; 2], dirs: &[usize], i: usize| format!("{}#{}", cell_id(&t.reduce(p), dirs), i + 1);
    let mut vertex_names: BTreeMap<usize, String> = BTreeMap::new();
    for (v, &p) in points.iter().enumerate() {
        for i in 0..d {
            let r = uf.find(node(v, i));
            vertex_names.entry(r).or_insert_with(|| name(p, &[], i));
        }
    }
    let vname = |uf: &mut UnionFind, v: usize, i: usize| vertex_names[&uf.find(node(v, i))].clone();

    let mut specs: Vec<CellSpec> = vertex_names.values().map(|id| CellSpec { id: id.clone(), dim: 0, facets: vec![] }).collect();
    for (s, &[x, y]) in points.iter().enumerate() {
        for i in 0..d {
            for (dir, step) in [(0, [x + 1, y]), (1, [x, y + 1])] {
                let far = vname(&mut uf, at(step), voltage[s][dir][i]);
                specs.push(CellSpec {
                    id: name([x, y], &[dir], i),
                    dim: 1,
                    facets: vec![
                        FacetSpec::new(vname(&mut uf, s, i), SignedAxis::minus(0)),
                        FacetSpec::new(far, SignedAxis::plus(0)),
                    ],
                });
            }
            specs.push(CellSpec {
                id: name([x, y], &[0, 1], i),
                dim: 2,
                facets: vec![
                    FacetSpec::new(name([x, y], &[1], i), SignedAxis::minus(0)),
                    FacetSpec::new(name([x + 1, y], &[1], voltage[s][0][i]), SignedAxis::plus(0)),
                    FacetSpec::new(name([x, y], &[0], i), SignedAxis::minus(1)),
                    FacetSpec::new(name([x, y + 1], &[0], voltage[s][1][i]), SignedAxis::plus(1)),
                ],
            });
        }
    }
    let cx = CubeComplex::new(2, specs).map_err(|e| ConstructionError::BadCover(e.to_string()))?;
    let surface = SquareSurface::new(cx)?;
    let base = index[&[0, 0]];
    let mut branch_degrees = BTreeMap::new();
    for i in 0..d {
        let r = uf.find(node(base, i));
        *branch_degrees.entry(vertex_names[&r].clone()).or_insert(0) += 1;
    }
    Ok(BranchedCover { surface, spec: spec.clone(), branch_degrees })
}
