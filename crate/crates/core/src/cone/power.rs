use num_bigint::BigUint;
use num_traits::One;

use super::ConeError;
use crate::isometry::integral_points_on_sphere;

fn dist2(a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - b[0]).pow(2) + (a[1] - b[1]).pow(2)
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Integral placements of the points with the first at the origin and all
/// pairwise squared distances as given.
pub fn integral_configurations(points: &[[i64; 2]]) -> Vec<Vec<[i64; 2]>> {
    let mut partial: Vec<Vec<[i64; 2]>> = vec![vec![[0, 0]]];
    for i in 1..points.len() {
        let circle: Vec<[i64; 2]> = integral_points_on_sphere(2, dist2(points[0], points[i]))
            .into_iter()
            .map(|z| [z[0], z[1]])
            .collect();
        partial = partial
            .into_iter()
            .flat_map(|conf| {
                circle
                    .iter()
                    .filter(|&&z| (1..i).all(|j| dist2(conf[j], z) == dist2(points[j], points[i])))
                    .map(|&z| {
                        let mut c = conf.clone();
                        c.push(z);
                        c
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    partial
}

/// A power `N` such that `f^N` is cubical for every isometry `f` of a cone
/// plane with these cone points: 2 for two points, `M!` for `M` placements
/// of three or more.
pub fn cubical_power_bound(points: &[[i64; 2]]) -> Result<BigUint, ConeError> {
    match points.len() {
        0 | 1 => return Err(ConeError::BadPoints("need at least two cone points".into())),
        2 => return Ok(BigUint::from(2u32)),
        _ => {}
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].contains(a) {
            return Err(ConeError::BadPoints(format!("repeated point {a:?}")));
        }
    }
    if points.len() == 3 && cross(points[0], points[1], points[2]) == 0 {
        return Err(ConeError::BadPoints("collinear triple".into()));
    }
    if points[2..].iter().all(|&p| cross(points[0], points[1], p) == 0) {
        return Err(ConeError::BadPoints("points are collinear".into()));
    }
    let m = integral_configurations(points).len();
    Ok((1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k)))
}
