//! Generators, independent oracles and property checks shared by the
//! property suite and the acceptance target.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cubiso::complex::generators::{block, grid};
use cubiso::complex::{check_npc, vertex_link};
use cubiso::cone::{
    build_cone_plane, classify_universal_cover, cone_orders, cubical_power_bound, gauss_bonnet,
    integral_configurations, CoverClass,
};
use cubiso::constructions::{
    branched_cover, build_torus, cycle_lengths, find_pythagorean_doubles, swap_isometry, verify_descends,
    CoverSpec,
};
use cubiso::develop::{branch_link, check_chart_compatibility, develop, product_structure, Chart, SphereKind};
use cubiso::isometry::{cayley, is_cubical_map, normal_form, preserves_proper_hypersurface};
use cubiso::rational::{frac, is_integral, q};
use cubiso::{QMatrix, RationalOrthoAffine, Q};

pub type Prop = Result<(), TestCaseError>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `D · cayley(S) · P` for a sparse random skew `S`, a random sign
/// diagonal `D` and a random column permutation `P`. Sparsity leaves room
/// for block structure.
pub fn random_orthogonal(r: &mut impl Rng, n: usize) -> QMatrix {
    let mut s = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(0.5) {
                let x = frac(r.gen_range(-3..=3), r.gen_range(1..=3));
                s[(j, i)] = -x.clone();
                s[(i, j)] = x;
            }
        }
    }
    let c = cayley(&s).expect("I + S is invertible for skew S");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut out = QMatrix::zeros(n, n);
    for i in 0..n {
        let sign = if r.gen_bool(0.5) { q(1) } else { q(-1) };
        for j in 0..n {
            out[(i, perm[j])] = &sign * &c[(i, j)];
        }
    }
    out
}

pub fn random_translation(r: &mut impl Rng, n: usize) -> Vec<Q> {
    const CHOICES: [(i64, i64); 7] = [(0, 1), (0, 1), (1, 1), (-2, 1), (1, 2), (-1, 3), (5, 4)];
    (0..n)
        .map(|_| {
            let (a, b) = CHOICES[r.gen_range(0..CHOICES.len())];
            frac(a, b)
        })
        .collect()
}

pub fn random_map(r: &mut impl Rng, n: usize) -> RationalOrthoAffine {
    let a = random_orthogonal(r, n);
    let b = random_translation(r, n);
    RationalOrthoAffine::new(a, b).expect("orthogonal")
}

/// All `2^n n!` signed permutation matrices.
pub fn signed_permutations(n: usize) -> Vec<QMatrix> {
    fn perms(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                perms(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut ps = Vec::new();
    perms(n, &mut Vec::new(), &mut ps);
    let mut out = Vec::new();
    for p in ps {
        for signs in 0..1usize << n {
            let mut m = QMatrix::zeros(n, n);
            for (i, &j) in p.iter().enumerate() {
                m[(i, j)] = if signs >> i & 1 == 1 { q(-1) } else { q(1) };
            }
            out.push(m);
        }
    }
    out
}

/// Brute force over coordinate subsets: some nonempty proper `S` whose
/// coordinate subspace is carried into itself, with integral translation on
/// the complement.
pub fn subset_oracle(t: &RationalOrthoAffine) -> bool {
    let n = t.dim();
    (1..(1usize << n) - 1).any(|mask| {
        let inside = |i: usize| mask >> i & 1 == 1;
        (0..n).filter(|&j| !inside(j)).all(|j| {
            is_integral(&t.translation()[j]) && (0..n).filter(|&i| inside(i)).all(|i| t.matrix()[(j, i)].is_zero())
        })
    })
}

pub fn prop_hypersurface_oracle(seed: u64) -> Prop {
    let mut r = rng(seed);
    let n = r.gen_range(2..=4);
    let t = random_map(&mut r, n);
    let split = preserves_proper_hypersurface(&t);
    prop_assert_eq!(split.is_some(), subset_oracle(&t), "{}", t.to_json());
    if let Some(s) = split {
        // the witness really is a splitting
        for &i in &s.hypersurface.free {
            for j in 0..n {
                if !s.hypersurface.free.contains(&j) {
                    prop_assert!(t.matrix()[(j, i)].is_zero());
                }
            }
        }
        prop_assert!(s.b2.iter().all(is_integral));
    }
    Ok(())
}

pub fn prop_normal_form_round_trip(seed: u64) -> Prop {
    let mut r = rng(seed);
    let n = r.gen_range(1..=5);
    let t = random_map(&mut r, n);
    let nf = normal_form(&t);
    prop_assert_eq!(nf.reconstruct(), t.clone(), "{}", t.to_json());
    prop_assert_eq!(is_cubical_map(&t), nf.is_all_lambda());
    if !t.is_cubical() {
        prop_assert_eq!(product_structure(&t).unwrap().total_dim(), n);
    }
    Ok(())
}

/// Cubical maps are rare among random ones, so half the cases are signed
/// permutations with random translations.
pub fn prop_cubical_iff_all_lambda(seed: u64) -> Prop {
    let mut r = rng(seed);
    let n = r.gen_range(1..=4);
    let t = if r.gen_bool(0.5) {
        let perms = signed_permutations(n);
        let a = perms[r.gen_range(0..perms.len())].clone();
        RationalOrthoAffine::new(a, random_translation(&mut r, n)).unwrap()
    } else {
        random_map(&mut r, n)
    };
    let direct = t.matrix().is_signed_permutation() && t.translation().iter().all(is_integral);
    prop_assert_eq!(is_cubical_map(&t), direct);
    prop_assert_eq!(normal_form(&t).is_all_lambda(), direct);
    Ok(())
}

/// A random input for `develop`: grid patch, 3-cube block or cone plane.
pub fn prop_chart_compatibility(seed: u64) -> Prop {
    let mut r = rng(seed);
    let radius = r.gen_range(1..=3);
    let (cx, cube, t) = match r.gen_range(0..3) {
        0 => {
            let w = r.gen_range(2..=7);
            let (x, y) = (r.gen_range(0..w), r.gen_range(0..w));
            (grid(0..w, 0..w), format!("{x},{y}:12"), random_map(&mut r, 2))
        }
        1 => {
            let c = r.gen_range(0..3);
            (block(3, 3), format!("{c},1,1:123"), random_map(&mut r, 3))
        }
        _ => {
            let n = r.gen_range(4..=6);
            let (x, y) = (r.gen_range(0..2), r.gen_range(0..2));
            (build_cone_plane(n, 3).unwrap(), format!("q{}:{x},{y}:12", r.gen_range(0..n)), random_map(&mut r, 2))
        }
    };
    let res = match develop(&cx, &Chart::identity(cube.clone(), t.dim()), &t, radius) {
        Ok(res) => res,
        Err(e) => {
            prop_assert!(t.is_cubical(), "{cube}: {e}");
            return Ok(());
        }
    };
    let report = check_chart_compatibility(&cx, &res);
    prop_assert!(report.consistent, "{cube} {}: {:?}", t.to_json(), report.problems);
    prop_assert!(res.is_charted(&cube));
    if res.n == 2 {
        for v in res.branch_vertex_ids() {
            let k = vertex_link(&cx, &v).unwrap().cycle_length().unwrap();
            prop_assert!(k >= 5);
            prop_assert_eq!(branch_link(&cx, &res, &v).unwrap().kind, SphereKind::Circle { k });
        }
    }
    Ok(())
}

pub fn prop_cone_plane_npc(n: usize, radius: usize) -> Prop {
    let cx = build_cone_plane(n, radius).unwrap();
    prop_assert!(check_npc(&cx).unwrap().npc);
    prop_assert_eq!(vertex_link(&cx, "o").unwrap().cycle_length(), Some(n));
    Ok(())
}

fn random_vector(r: &mut impl Rng) -> [i64; 2] {
    [r.gen_range(-4..=4), r.gen_range(-4..=4)]
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn prop_torus(seed: u64) -> Prop {
    let mut r = rng(seed);
    let (a, b) = (random_vector(&mut r), random_vector(&mut r));
    let d = det(a, b);
    if d == 0 || d.abs() > 40 {
        prop_assert!(d != 0 || build_torus(a, b).is_err());
        return Ok(());
    }
    let t = build_torus(a, b).unwrap();
    prop_assert_eq!(t.squares(), d.unsigned_abs() as usize);
    prop_assert_eq!(t.surface.complex().count_of_dim(2), d.unsigned_abs() as usize);
    prop_assert!(check_npc(t.surface.complex()).unwrap().npc);
    let gb = gauss_bonnet(&t.surface);
    prop_assert!(gb.holds && gb.euler_characteristic == 0);
    prop_assert_eq!(classify_universal_cover(&t.surface).classification, CoverClass::Euclidean);
    Ok(())
}

fn random_perm(r: &mut impl Rng, d: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..d).collect();
    p.shuffle(r);
    p
}

pub fn prop_cover(seed: u64) -> Prop {
    let mut r = rng(seed);
    let d = r.gen_range(1..=5);
    let spec = CoverSpec::new(random_perm(&mut r, d), random_perm(&mut r, d)).unwrap();
    let bases = [([1, 0], [0, 1]), ([2, 0], [0, 1]), ([1, 1], [-1, 1]), ([2, 1], [-1, 1])];
    let (a, b) = bases[r.gen_range(0..bases.len())];
    let torus = build_torus(a, b).unwrap();
    let cover = match branched_cover(&torus, &spec) {
        Ok(c) => c,
        Err(_) => {
            prop_assert!(!spec.is_transitive());
            return Ok(());
        }
    };
    let s = &cover.surface;
    let gb = gauss_bonnet(s);
    prop_assert!(gb.holds);
    prop_assert_eq!(s.complex().count_of_dim(2), d * torus.squares());
    let mut ells: Vec<usize> = cover.branch_degrees.values().copied().collect();
    ells.sort_unstable();
    let mut expected = cycle_lengths(&spec.commutator());
    expected.sort_unstable();
    prop_assert_eq!(&ells, &expected);
    let excess: i64 = ells.iter().map(|&l| l as i64 - 1).sum();
    prop_assert_eq!(excess, -gb.euler_characteristic);
    let orders = cone_orders(s).orders;
    for (v, l) in &cover.branch_degrees {
        prop_assert_eq!(orders[v], 4 * l);
    }
    for (v, k) in &orders {
        if !cover.branch_degrees.contains_key(v) {
            prop_assert_eq!(*k, 4);
        }
    }
    let report = classify_universal_cover(s);
    prop_assert_eq!(report.classification == CoverClass::Euclidean, report.singular.is_empty());
    Ok(())
}

/// Exhaustive scan of equal-norm vector pairs up to signed permutation.
pub fn doubles_oracle(limit: i64) -> BTreeSet<[(i64, i64); 2]> {
    let mut classes = BTreeSet::new();
    for x in 0..=limit {
        for y in x..=limit {
            classes.insert((x, y));
        }
    }
    let mut out = BTreeSet::new();
    for &c in &classes {
        for &e in &classes {
            if c < e && c.0 * c.0 + c.1 * c.1 == e.0 * e.0 + e.1 * e.1 && c != (0, 0) {
                out.insert([c, e]);
            }
        }
    }
    out
}

pub fn prop_doubles(limit: u32) -> Prop {
    let class = |v: [i64; 2]| {
        let (x, y) = (v[0].abs(), v[1].abs());
        (x.min(y), x.max(y))
    };
    let pairs = find_pythagorean_doubles(limit);
    let mut found = BTreeSet::new();
    for p in &pairs {
        prop_assert_eq!(p.a[0].pow(2) + p.a[1].pow(2), p.norm_sq);
        prop_assert_eq!(p.b[0].pow(2) + p.b[1].pow(2), p.norm_sq);
        let s = swap_isometry(p);
        prop_assert_eq!(s.apply(&[q(p.a[0]), q(p.a[1])]), vec![q(p.b[0]), q(p.b[1])]);
        prop_assert!(!is_cubical_map(&s));
        prop_assert!(verify_descends(&s, p.a, p.b));
        let mut k = [class(p.a), class(p.b)];
        k.sort();
        prop_assert!(found.insert(k), "{:?} emitted twice", p);
    }
    prop_assert_eq!(found, doubles_oracle(i64::from(limit)));
    Ok(())
}

fn perm_order(p: &[usize]) -> BigUint {
    let mut seen = vec![false; p.len()];
    let mut order = BigUint::one();
    for s in 0..p.len() {
        let mut len = 0u32;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, BigUint::from(len));
        }
    }
    order
}

/// Every origin-fixing signed permutation permutes the integral
/// configurations; the order of that permutation divides the bound.
pub fn prop_power_bound(seed: u64) -> Prop {
    let mut r = rng(seed);
    let k = r.gen_range(3..=4);
    let mut pts = vec![[0i64, 0]];
    while pts.len() < k {
        let p = [r.gen_range(-4..=4), r.gen_range(-4..=4)];
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let bound = match cubical_power_bound(&pts) {
        Ok(b) => b,
        Err(_) => {
            let collinear = pts[2..].iter().all(|p| det([pts[1][0], pts[1][1]], [p[0], p[1]]) == 0);
            prop_assert!(collinear);
            return Ok(());
        }
    };
    let confs = integral_configurations(&pts);
    for g in signed_permutations(2) {
        let image: Vec<usize> = confs
            .iter()
            .map(|c| {
                let moved: Vec<[i64; 2]> = c
                    .iter()
                    .map(|p| {
                        let v = g.apply(&[q(p[0]), q(p[1])]);
                        [v[0].to_integer().try_into().unwrap(), v[1].to_integer().try_into().unwrap()]
                    })
                    .collect();
                confs.iter().position(|d| *d == moved).expect("configurations are closed under O(2, Z)")
            })
            .collect();
        prop_assert!((&bound % perm_order(&image)).is_zero());
    }
    Ok(())
}
