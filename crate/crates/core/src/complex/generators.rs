//! Finite pieces of the standard cubulation of `R^n`.
//!
//! Cell ids have the form `"x1,x2,...:dirs"`: the minimal corner followed by
//! the 1-based spanning directions, e.g. `"0,0:"` (vertex), `"2,1:1"` (edge
//! along `e1`), `"0,0:12"` (square).

use std::collections::BTreeSet;
use std::ops::Range;

use super::{CellSpec, CubeComplex, FacetSpec, SignedAxis};

pub fn cell_id(corner: &[i64], dirs: &[usize]) -> String {
    let c: Vec<String> = corner.iter().map(ToString::to_string).collect();
    let d: String = dirs.iter().map(|d| (d + 1).to_string()).collect();
    format!("{}:{}", c.join(","), d)
}

/// All faces of the given unit cubes `[z, z + 1]^n`, given by minimal corners.
pub fn standard_patch(dim: usize, cubes: &[Vec<i64>]) -> CubeComplex {
    let mut faces: BTreeSet<(Vec<i64>, Vec<usize>)> = BTreeSet::new();
    for z in cubes {
        assert_eq!(z.len(), dim, "corner has wrong dimension");
        for mask in 0..1usize << dim {
            let dirs: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 1).collect();
            // every face of the cube spanned by `dirs` and offset in the remaining directions
            let rest: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 0).collect();
            for off in 0..1usize << rest.len() {
                let mut c = z.clone();
                for (b, &i) in rest.iter().enumerate() {
                    c[i] += (off >> b & 1) as i64;
                }
                faces.insert((c, dirs.clone()));
            }
        }
    }
    let mut specs: Vec<CellSpec> = faces
        .iter()
        .map(|(c, dirs)| {
            let mut facets = Vec::with_capacity(2 * dirs.len());
            for (j, &d) in dirs.iter().enumerate() {
                let sub: Vec<usize> = dirs.iter().copied().filter(|&x| x != d).collect();
                let mut up = c.clone();
                up[d] += 1;
                facets.push(FacetSpec::new(cell_id(c, &sub), SignedAxis::minus(j)));
                facets.push(FacetSpec::new(cell_id(&up, &sub), SignedAxis::plus(j)));
            }
            CellSpec { id: cell_id(c, dirs), dim: dirs.len(), facets }
        })
        .collect();
    specs.sort_by_key(|s| s.dim);
    CubeComplex::new(dim, specs).expect("standard patch is well formed")
}

/// Squares `[x, x+1] × [y, y+1]` for `x ∈ xs`, `y ∈ ys`.
pub fn grid(xs: Range<i64>, ys: Range<i64>) -> CubeComplex {
    let cubes: Vec<Vec<i64>> = xs
        .flat_map(|x| ys.clone().map(move |y| vec![x, y]))
        .collect();
    standard_patch(2, &cubes)
}

/// Box of `n`-cubes with minimal corners in `0..side` along every axis.
pub fn block(dim: usize, side: i64) -> CubeComplex {
    let mut cubes = vec![Vec::new()];
    for _ in 0..dim {
        cubes = cubes
            .into_iter()
            .flat_map(|c: Vec<i64>| {
                (0..side).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    standard_patch(dim, &cubes)
}
