//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

mod support;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use rand::Rng;

use cubiso::complex::generators::grid;
use cubiso::complex::{check_npc, vertex_link};
use cubiso::cone::{build_cone_plane, classify_universal_cover, cone_orders, cone_plane_symmetries, gauss_bonnet, CoverClass};
use cubiso::constructions::{
    branched_cover, build_torus, find_pythagorean_doubles, swap_isometry, verify_descends, CoverSpec,
};
use cubiso::develop::{
    branch_link, check_chart_compatibility, develop, simplex_count_identities, sphere_volume_identity, Chart,
    SphereKind,
};
use cubiso::isometry::{is_cubical_map, preserves_proper_hypersurface};
use cubiso::rational::frac;
use cubiso::{QMatrix, RationalOrthoAffine, SimplicialComplex};

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn rotation() -> RationalOrthoAffine {
    RationalOrthoAffine::linear(QMatrix::from_fracs(&[&[(3, 5), (-4, 5)], &[(4, 5), (3, 5)]])).unwrap()
}

fn pythagorean_example() -> Outcome {
    let pairs = find_pythagorean_doubles(8);
    let p = pairs
        .iter()
        .find(|p| p.a == [1, 8] && p.b == [7, 4])
        .ok_or("((1,8),(7,4)) missing from find_pythagorean_doubles(8)")?;
    let s = swap_isometry(p);
    let expected = QMatrix::from_fracs(&[&[(-5, 13), (12, 13)], &[(12, 13), (5, 13)]]);
    ensure(*s.matrix() == expected, format!("swap matrix {:?}", s.matrix()))?;
    ensure(s.translation().iter().all(|x| *x == frac(0, 1)), "swap has a translation")?;
    ensure(!is_cubical_map(&s), "swap is cubical")?;
    ensure(verify_descends(&s, p.a, p.b), "swap does not descend")?;
    Ok(format!("{} doubles, swap = [[-5/13,12/13],[12/13,5/13]], non-cubical, descends", pairs.len()))
}

fn cone_plane() -> Outcome {
    let cx = build_cone_plane(5, 4).map_err(|e| e.to_string())?;
    let npc = check_npc(&cx).map_err(|e| e.to_string())?;
    ensure(npc.npc, format!("offences {:?}", npc.offences))?;
    let k = vertex_link(&cx, "o").map_err(|e| e.to_string())?.cycle_length();
    ensure(k == Some(5), format!("apex link {k:?}"))?;
    let sym = cone_plane_symmetries(5).map_err(|e| e.to_string())?;
    ensure(sym.patch_automorphisms == 10, format!("{} automorphisms", sym.patch_automorphisms))?;
    ensure(sym.automorphism_order == Some(10), "order")?;
    ensure(sym.closed_under_composition && sym.closed_under_inverse, "not a group")?;
    Ok(format!("NPC on {} vertices, apex 5-cycle, 10 automorphisms form a group", npc.vertices_checked))
}

fn hypersurface_oracle() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for seed in 0..300u64 {
        let mut r = support::rng(seed);
        let n = r.gen_range(2..=4);
        let t = support::random_map(&mut r, n);
        ensure(preserves_proper_hypersurface(&t).is_some() == support::subset_oracle(&t), t.to_json())?;
        cases += 1;
    }
    let halves = [frac(0, 1), frac(1, 2), frac(1, 1)];
    for a in support::signed_permutations(3) {
        for i in 0..27 {
            let b = vec![halves[i % 3].clone(), halves[i / 3 % 3].clone(), halves[i / 9].clone()];
            let t = RationalOrthoAffine::new(a.clone(), b).unwrap();
            ensure(preserves_proper_hypersurface(&t).is_some() == support::subset_oracle(&t), t.to_json())?;
            cases += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!("{cases} maps agree with the subset oracle in {took:.2?}"))
}

/// Faces of the `(m+1)`-cross-polytope boundary with `k+1` vertices, by
/// direct enumeration of sign vectors in `{-1,0,1}^{m+1}`.
fn cross_polytope_faces(m: usize) -> Vec<u64> {
    let mut f = vec![0u64; m + 1];
    for code in 0..3usize.pow(m as u32 + 1) {
        let support = (0..=m).filter(|&i| code / 3usize.pow(i as u32) % 3 != 0).count();
        if support > 0 {
            f[support - 1] += 1;
        }
    }
    f
}

fn counting_identities() -> Outcome {
    for m in 1..=6usize {
        let f = cross_polytope_faces(m);
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        let formula: Vec<u64> = (0..=m as u64).map(|k| (1 << (k + 1)) * binom(m as u64 + 1, k + 1)).collect();
        ensure(f == formula, format!("m = {m}: enumeration {f:?} vs formula {formula:?}"))?;
        let sphere = SimplicialComplex::standard_sphere(m as isize).f_vector();
        ensure(sphere.iter().map(|&x| x as u64).eq(f.iter().copied()), format!("m = {m}: sphere {sphere:?}"))?;
        let report = simplex_count_identities(m, &f).map_err(|e| e.to_string())?;
        ensure(report.all_hold(), format!("m = {m}: {:?}", report.first_failure()))?;
        ensure(report.facet_bound_tight, format!("m = {m}: facet bound not tight"))?;
        ensure(sphere_volume_identity(m) == Ok(true), format!("m = {m}: volume identity"))?;
    }
    Ok("identities and tight facet bound for m = 1..6".into())
}

fn development() -> Outcome {
    let g = grid(0..11, 0..11);
    let r = develop(&g, &Chart::identity("5,5:12", 2), &rotation(), 3).map_err(|e| e.to_string())?;
    let ball: BTreeSet<String> = (0..11i64)
        .flat_map(|x| (0..11i64).map(move |y| (x, y)))
        .filter(|(x, y)| (x - 5).abs() + (y - 5).abs() <= 3)
        .map(|(x, y)| format!("{x},{y}:12"))
        .collect();
    let charted: BTreeSet<String> = r.charts.keys().cloned().collect();
    ensure(charted == ball, format!("charted {} cubes, ball has {}", charted.len(), ball.len()))?;
    ensure(r.branch_vertices.is_empty(), format!("grid Λ_C = {:?}", r.branch_vertex_ids()))?;
    ensure(check_chart_compatibility(&g, &r).consistent, "grid charts incompatible")?;

    let cx = build_cone_plane(5, 4).map_err(|e| e.to_string())?;
    let r = develop(&cx, &Chart::identity("q0:0,0:12", 2), &rotation(), 3).map_err(|e| e.to_string())?;
    ensure(r.branch_vertex_ids() == BTreeSet::from(["o".to_string()]), format!("cone Λ_C = {:?}", r.branch_vertex_ids()))?;
    let link = branch_link(&cx, &r, "o").map_err(|e| e.to_string())?;
    ensure(link.kind == SphereKind::Circle { k: 5 }, format!("apex link {:?}", link.kind))?;
    ensure(check_chart_compatibility(&cx, &r).consistent, "cone charts incompatible")?;
    Ok(format!("grid ball of {} cubes with empty Λ_C; cone Λ_C = {{o}}, Circle(5)", ball.len()))
}

fn branched_cover_example() -> Outcome {
    let spec = CoverSpec::from_cycles(3, &[&[1, 2]], &[&[2, 3]]).map_err(|e| e.to_string())?;
    let mut surfaces = Vec::new();
    for (a, b) in [([1, 8], [7, 4]), ([1, 0], [0, 1])] {
        let torus = build_torus(a, b).map_err(|e| e.to_string())?;
        let cover = branched_cover(&torus, &spec).map_err(|e| e.to_string())?;
        let s = &cover.surface;
        ensure(s.euler_characteristic() == -2, format!("{a:?},{b:?}: χ = {}", s.euler_characteristic()))?;
        let orders = cone_orders(s).orders;
        let twelve = orders.values().filter(|&&k| k == 12).count();
        let others_flat = orders.values().all(|&k| k == 12 || k == 4);
        ensure(twelve == 1 && others_flat, format!("{a:?},{b:?}: orders {orders:?}"))?;
        let class = classify_universal_cover(s).classification;
        ensure(class == CoverClass::QiHyperbolicPlane, format!("{a:?},{b:?}: {class:?}"))?;
        surfaces.push(torus.surface);
        surfaces.push(cover.surface);
    }
    for n in [3usize, 4] {
        for (a, b) in [([1, 0], [0, 1]), ([2, 1], [-1, 1])] {
            let t = build_torus(a, b).unwrap();
            let spec = CoverSpec::new((1..=n).map(|i| i % n).collect(), (0..n).collect()).unwrap();
            surfaces.push(branched_cover(&t, &spec).map_err(|e| e.to_string())?.surface);
        }
    }
    ensure(surfaces.iter().all(|s| gauss_bonnet(s).holds), "Gauss-Bonnet fails")?;
    Ok(format!(
        "over T(1,8),(7,4) and the unit torus: χ = -2, one order-12 vertex, QiHyperbolicPlane; Gauss-Bonnet on {} surfaces",
        surfaces.len()
    ))
}

fn torus_size() -> Outcome {
    let t = build_torus([1, 8], [7, 4]).map_err(|e| e.to_string())?;
    let squares = t.surface.complex().count_of_dim(2);
    ensure(squares == 52, format!("{squares} squares"))?;
    let class = classify_universal_cover(&t.surface).classification;
    ensure(class == CoverClass::Euclidean, format!("{class:?}"))?;
    Ok("52 squares, Euclidean".into())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let run = |name: &str, cases: u32, f: fn(u64) -> support::Prop| -> Result<(), String> {
        let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
        runner.run(&proptest::arbitrary::any::<u64>(), f).map_err(|e| format!("{name}: {e}"))
    };
    run("chart compatibility", 128, support::prop_chart_compatibility)?;
    run("normal form round trip", 500, support::prop_normal_form_round_trip)?;
    run("cubical iff all LAMBDA", 500, support::prop_cubical_iff_all_lambda)?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), format!("took {took:?}"))?;
    Ok(format!("128 developments, 500 round trips, 500 cubicality checks in {took:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("pythagorean example", pythagorean_example),
        ("cone plane", cone_plane),
        ("hypersurface oracle", hypersurface_oracle),
        ("counting identities", counting_identities),
        ("development", development),
        ("branched cover", branched_cover_example),
        ("torus size", torus_size),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
