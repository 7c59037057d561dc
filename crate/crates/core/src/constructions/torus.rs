use num_integer::Integer;

use super::ConstructionError;
use crate::complex::generators::cell_id;
use crate::complex::{CellSpec, CubeComplex, FacetSpec, SignedAxis};
use crate::cone::SquareSurface;

/// `R² / ⟨a, b⟩` with the standard square structure.
#[derive(Debug, Clone)]
pub struct TorusComplex {
    pub surface: SquareSurface,
    pub a: [i64; 2],
    pub b: [i64; 2],
    /// Hermite basis `(g, c), (0, h)` of the lattice, `0 ≤ c < h`. Vertices
    /// are the points of `[0, g) × [0, h)`.
    pub hermite: [[i64; 2]; 2],
}

impl TorusComplex {
    pub fn squares(&self) -> usize {
        self.surface.complex().count_of_dim(2)
    }

    /// Representative of `p` modulo the lattice.
    pub fn reduce(&self, p: [i64; 2]) -> [i64; 2] {
        reduce(&self.hermite, p)
    }

    /// Lattice coordinates `(m, n)` with `v = m a + n b`, when `v` is in the lattice.
    pub fn lattice_coords(&self, v: [i64; 2]) -> Option<[i64; 2]> {
        let det = self.a[0] * self.b[1] - self.a[1] * self.b[0];
        let m = v[0] * self.b[1] - v[1] * self.b[0];
        let n = self.a[0] * v[1] - self.a[1] * v[0];
        (m % det == 0 && n % det == 0).then(|| [m / det, n / det])
    }
}

fn reduce(h: &[[i64; 2]; 2], p: [i64; 2]) -> [i64; 2] {
    let [[g, c], [_, hh]] = *h;
    let k = Integer::div_floor(&p[0], &g);
    [p[0] - k * g, (p[1] - k * c).mod_floor(&hh)]
}

fn hermite(a: [i64; 2], b: [i64; 2]) -> [[i64; 2]; 2] {
    let e = a[0].extended_gcd(&b[0]);
    let (g, s, t) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
    let det = (a[0] * b[1] - a[1] * b[0]).abs();
    let h = det / g;
    [[g, (s * a[1] + t * b[1]).mod_floor(&h)], [0, h]]
}

pub fn build_torus(a: [i64; 2], b: [i64; 2]) -> Result<TorusComplex, ConstructionError> {
    if a[0] * b[1] - a[1] * b[0] == 0 {
        return Err(ConstructionError::Dependent(a, b));
    }
    let hm = hermite(a, b);
    let [[g, _], [_, h]] = hm;
    let id = |p: [i64; 2], dirs: &[usize]| cell_id(&reduce(&hm, p), dirs);
    let mut specs = Vec::new();
    let points: Vec<[i64; 2]> = (0..g).flat_map(|x| (0..h).map(move |y| [x, y])).collect();
    for &p in &points {
        specs.push(CellSpec { id: id(p, &[]), dim: 0, facets: vec![] });
    }
    for &[x, y] in &points {
        for (d, step) in [(0, [x + 1, y]), (1, [x, y + 1])] {
            specs.push(CellSpec {
                id: id([x, y], &[d]),
                dim: 1,
                facets: vec![
                    FacetSpec::new(id([x, y], &[]), SignedAxis::minus(0)),
                    FacetSpec::new(id(step, &[]), SignedAxis::plus(0)),
                ],
            });
        }
    }
    for &[x, y] in &points {
        specs.push(CellSpec {
            id: id([x, y], &[0, 1]),
            dim: 2,
            facets: vec![
                FacetSpec::new(id([x, y], &[1]), SignedAxis::minus(0)),
                FacetSpec::new(id([x + 1, y], &[1]), SignedAxis::plus(0)),
                FacetSpec::new(id([x, y], &[0]), SignedAxis::minus(1)),
                FacetSpec::new(id([x, y + 1], &[0]), SignedAxis::plus(1)),
            ],
        });
    }
    let cx = CubeComplex::new(2, specs).expect("torus cells are well formed");
    Ok(TorusComplex { surface: SquareSurface::new(cx)?, a, b, hermite: hm })
}
