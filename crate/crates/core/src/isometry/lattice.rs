use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};

use crate::par;
use crate::rational::Q;

/// All `z ∈ Z^n` with `|z|² ≤ radius_sq`, in lexicographic order.
pub fn enumerate_integral_points(n: usize, radius_sq: &Q) -> Vec<Vec<i64>> {
    if *radius_sq < Q::zero() {
        return Vec::new();
    }
    // |z|² is an integer, so the bound is floor(radius_sq)
    let bound: i64 = radius_sq.floor().to_integer().to_i64().expect("radius fits in i64");
    if n == 0 {
        return vec![Vec::new()];
    }
    let r = bound.sqrt();
    let firsts: Vec<i64> = (-r..=r).collect();
    par::flat_map(&firsts, |&x| {
        let mut out = Vec::new();
        let mut cur = vec![x];
        fill(n, bound - x * x, &mut cur, &mut out);
        out
    })
}

fn fill(n: usize, budget: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    let r = budget.sqrt();
    for x in -r..=r {
        cur.push(x);
        fill(n, budget - x * x, cur, out);
        cur.pop();
    }
}

/// All `z ∈ Z^n` with `|z|² = norm_sq` exactly.
pub fn integral_points_on_sphere(n: usize, norm_sq: i64) -> Vec<Vec<i64>> {
    enumerate_integral_points(n, &Q::from_integer(BigInt::from(norm_sq)))
        .into_iter()
        .filter(|z| z.iter().map(|x| x * x).sum::<i64>() == norm_sq)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn small_balls() {
        assert_eq!(enumerate_integral_points(2, &q(1)).len(), 5);
        assert_eq!(enumerate_integral_points(2, &q(0)), vec![vec![0, 0]]);
        // radius 3/2: squared radius 9/4, so norms 0, 1, 2
        assert_eq!(enumerate_integral_points(2, &frac(9, 4)).len(), 9);
    }

    #[test]
    fn norm_65_circle() {
        let pts = integral_points_on_sphere(2, 65);
        assert_eq!(pts.len(), 16);
        for (a, b) in [(1, 8), (8, 1), (4, 7), (7, 4)] {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                assert!(pts.contains(&vec![sa * a, sb * b]));
            }
        }
    }

    #[test]
    fn matches_a_naive_scan() {
        for n in 1..=3 {
            for r2 in 0..12 {
                // decode a counter in base 9, first coordinate most significant
                let naive: Vec<Vec<i64>> = (0..9usize.pow(n as u32))
                    .map(|mut c| {
                        let mut z = vec![0i64; n];
                        for k in (0..n).rev() {
                            z[k] = (c % 9) as i64 - 4;
                            c /= 9;
                        }
                        z
                    })
                    .filter(|z| z.iter().map(|x| x * x).sum::<i64>() <= r2)
                    .collect();
                assert_eq!(enumerate_integral_points(n, &q(r2)), naive, "n={n} r2={r2}");
            }
        }
    }
}
