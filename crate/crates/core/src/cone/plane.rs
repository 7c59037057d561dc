use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::ConeError;
use crate::complex::{CellSpec, CubeComplex, FacetSpec, SignedAxis};

// Quarter `k` is the grid [0, r]² with local coordinates (x, y). Its ray
// x = 0 is the ray y = 0 of quarter k + 1; the apex is "o".

fn vertex(n: usize, k: usize, x: i64, y: i64) -> String {
    match (x, y) {
        (0, 0) => "o".into(),
        (0, y) => format!("q{}:{y},0:", (k + 1) % n),
        (x, y) => format!("q{k}:{x},{y}:"),
    }
}

/// Edge from (x, y) along `dir` (1 or 2).
fn edge(n: usize, k: usize, x: i64, y: i64, dir: u8) -> String {
    if dir == 2 && x == 0 {
        format!("q{}:{y},0:1", (k + 1) % n)
    } else {
        format!("q{k}:{x},{y}:{dir}")
    }
}

/// The part of `Cone(R², n)` made of `n` quarter planes of `radius × radius`
/// squares glued cyclically around the apex `"o"`.
pub fn build_cone_plane(n: usize, radius: usize) -> Result<CubeComplex, ConeError> {
    if n < 4 {
        return Err(ConeError::OrderTooSmall(n));
    }
    if radius < 1 {
        return Err(ConeError::BadRadius);
    }
    let r = radius as i64;
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeMap::new();
    let mut squares = Vec::new();
    for k in 0..n {
        for x in 0..=r {
            for y in 0..=r {
                vertices.insert(vertex(n, k, x, y));
                if x < r {
                    edges.insert(edge(n, k, x, y, 1), (vertex(n, k, x, y), vertex(n, k, x + 1, y)));
                }
                if y < r {
                    edges.insert(edge(n, k, x, y, 2), (vertex(n, k, x, y), vertex(n, k, x, y + 1)));
                }
                if x < r && y < r {
                    squares.push(CellSpec {
                        id: format!("q{k}:{x},{y}:12"),
                        dim: 2,
                        facets: vec![
                            FacetSpec::new(edge(n, k, x, y, 2), SignedAxis::minus(0)),
                            FacetSpec::new(edge(n, k, x + 1, y, 2), SignedAxis::plus(0)),
                            FacetSpec::new(edge(n, k, x, y, 1), SignedAxis::minus(1)),
                            FacetSpec::new(edge(n, k, x, y + 1, 1), SignedAxis::plus(1)),
                        ],
                    });
                }
            }
        }
    }
    let mut specs: Vec<CellSpec> =
        vertices.into_iter().map(|id| CellSpec { id, dim: 0, facets: vec![] }).collect();
    specs.extend(edges.into_iter().map(|(id, (a, b))| CellSpec {
        id,
        dim: 1,
        facets: vec![FacetSpec::new(a, SignedAxis::minus(0)), FacetSpec::new(b, SignedAxis::plus(0))],
    }));
    specs.extend(squares);
    Ok(CubeComplex::new(2, specs).expect("cone plane is well formed"))
}

/// Squares as corner cycles `(0,0), (1,0), (1,1), (0,1)`.
fn square_cycles(cx: &CubeComplex) -> Option<Vec<[usize; 4]>> {
    cx.cells_of_dim(2)
        .map(|s| {
            let c = |a, b| cx.corner(s, &[a, b]);
            let cyc = [c(false, false)?, c(true, false)?, c(true, true)?, c(false, true)?];
            let distinct: BTreeSet<usize> = cyc.iter().copied().collect();
            (distinct.len() == 4).then_some(cyc)
        })
        .collect()
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Vertex permutations of a square complex that carry squares to squares and
/// edges to edges. Needs every square to have four distinct corners and
/// every edge to lie in at most two squares; returns `None` otherwise.
pub fn square_automorphisms(cx: &CubeComplex) -> Option<Vec<Vec<usize>>> {
    let squares = square_cycles(cx)?;
    let nv = cx.len();
    let mut on_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, s) in squares.iter().enumerate() {
        for j in 0..4 {
            on_edge.entry(key(s[j], s[(j + 1) % 4])).or_default().push(i);
        }
    }
    if on_edge.values().any(|v| v.len() > 2) {
        return None;
    }
    let edge_set: BTreeSet<(usize, usize)> = cx
        .cells_of_dim(1)
        .filter_map(|e| {
            let v = cx.cell_vertices(e);
            (v.len() == 2).then(|| key(v[0], v[1]))
        })
        .collect();
    let square_set: BTreeSet<[usize; 4]> = squares.iter().map(|s| sorted(*s)).collect();
    let is_vertex: Vec<bool> = (0..nv).map(|c| cx.cell(c).dim == 0).collect();

    // cycle of square `s` read from `u` towards its neighbour `w`
    let walk = |s: &[usize; 4], u: usize, w: usize| -> Option<[usize; 4]> {
        let pu = s.iter().position(|&x| x == u)?;
        let dir = if s[(pu + 1) % 4] == w {
            1
        } else if s[(pu + 3) % 4] == w {
            3
        } else {
            return None;
        };
        Some([0, 1, 2, 3].map(|i| s[(pu + i * dir) % 4]))
    };

    let mut found = BTreeSet::new();
    let Some(first) = squares.first() else { return Some(vec![(0..nv).collect()]) };
    for target in &squares {
        for start in 0..4 {
            for dir in [1, 3] {
                let image = [0, 1, 2, 3].map(|i| target[(start + i * dir) % 4]);
                if let Some(map) = propagate(&squares, &on_edge, first, image, nv, &walk) {
                    let ok = (0..nv).all(|v| !is_vertex[v] || map[v].is_some_and(|w| is_vertex[w]))
                        && squares.iter().all(|s| square_set.contains(&sorted(s.map(|v| map[v].unwrap()))))
                        && edge_set
                            .iter()
                            .all(|&(a, b)| edge_set.contains(&key(map[a].unwrap(), map[b].unwrap())));
                    let perm: Vec<usize> = (0..nv).map(|v| map[v].unwrap_or(v)).collect();
                    let bijective = perm.iter().copied().collect::<BTreeSet<_>>().len() == nv;
                    if ok && bijective {
                        found.insert(perm);
                    }
                }
            }
        }
    }
    Some(found.into_iter().collect())
}

fn sorted(mut s: [usize; 4]) -> [usize; 4] {
    s.sort_unstable();
    s
}

type Walk<'a> = dyn Fn(&[usize; 4], usize, usize) -> Option<[usize; 4]> + 'a;

/// Extends `first ↦ image` square by square across shared edges.
fn propagate(
    squares: &[[usize; 4]],
    on_edge: &BTreeMap<(usize, usize), Vec<usize>>,
    first: &[usize; 4],
    image: [usize; 4],
    nv: usize,
    walk: &Walk<'_>,
) -> Option<Vec<Option<usize>>> {
    let mut map: Vec<Option<usize>> = vec![None; nv];
    let assign = |map: &mut Vec<Option<usize>>, v: usize, w: usize| match map[v] {
        Some(x) => x == w,
        None => {
            map[v] = Some(w);
            true
        }
    };
    for i in 0..4 {
        if !assign(&mut map, first[i], image[i]) {
            return None;
        }
    }
    let start = squares.iter().position(|s| s == first)?;
    let mut done = vec![false; squares.len()];
    done[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        let s = squares[i];
        for j in 0..4 {
            let (u, w) = (s[j], s[(j + 1) % 4]);
            let (fu, fw) = (map[u]?, map[w]?);
            let fs: [usize; 4] = s.map(|v| map[v].unwrap_or(usize::MAX));
            let others: Vec<usize> = on_edge[&key(u, w)].iter().copied().filter(|&t| t != i).collect();
            let images: Vec<usize> = on_edge
                .get(&key(fu, fw))?
                .iter()
                .copied()
                .filter(|&t| sorted(squares[t]) != sorted(fs))
                .collect();
            if others.len() != images.len() {
                return None;
            }
            let (Some(&t), Some(&img)) = (others.first(), images.first()) else { continue };
            let a = walk(&squares[t], u, w)?;
            let b = walk(&squares[img], fu, fw)?;
            for k in 0..4 {
                if !assign(&mut map, a[k], b[k]) {
                    return None;
                }
            }
            if !done[t] {
                done[t] = true;
                queue.push_back(t);
            }
        }
    }
    Some(map)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub n: usize,
    /// `Isom(Cone(R², n))`.
    pub isometry_group: String,
    /// `Aut(Cone(R², n))`.
    pub automorphism_group: String,
    /// `|Aut|`, finite once there is a cone point.
    pub automorphism_order: Option<usize>,
    pub patch_radius: usize,
    /// Automorphisms of the patch found by explicit search.
    pub patch_automorphisms: usize,
    pub closed_under_composition: bool,
    pub closed_under_inverse: bool,
    /// Every patch automorphism fixes the apex.
    pub fixes_apex: bool,
}

const PATCH_RADIUS: usize = 2;

pub fn cone_plane_symmetries(n: usize) -> Result<SymmetryReport, ConeError> {
    let cx = build_cone_plane(n, PATCH_RADIUS)?;
    let autos = square_automorphisms(&cx).expect("cone plane squares are embedded");
    let set: BTreeSet<&Vec<usize>> = autos.iter().collect();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let closed_under_composition = autos.iter().all(|a| autos.iter().all(|b| set.contains(&compose(a, b))));
    let closed_under_inverse = autos.iter().all(|a| {
        let mut inv = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            inv[x] = i;
        }
        set.contains(&inv)
    });
    let apex = cx.lookup("o").expect("apex");
    let fixes_apex = autos.iter().all(|a| a[apex] == apex);
    let (isometry_group, automorphism_group, automorphism_order) = if n == 4 {
        ("R² ⋊ O(2)".to_string(), "Z² ⋊ O(2,Z)".to_string(), None)
    } else {
        ("O(2)".to_string(), format!("D_{}", 2 * n), Some(2 * n))
    };
    Ok(SymmetryReport {
        n,
        isometry_group,
        automorphism_group,
        automorphism_order,
        patch_radius: PATCH_RADIUS,
        patch_automorphisms: autos.len(),
        closed_under_composition,
        closed_under_inverse,
        fixes_apex,
    })
}
