use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlab_core::direction::{dist_deg, to_sphere, Direction, SpherePoint};
use stlab_core::exact::{int, rat, rational_from_f64};
use stlab_core::separation::{
    balance_lambda, classify_points, gamma_points, hemisphere_split, is_gamma_point, is_na_point, is_na_point_at_angle,
    na_arc_points, refine_step, separate_to_orthogonal, ArcSpec, DiagnosticParams, RefineCase, SystemView, A_ARCS,
};
use stlab_core::{ComplexLine, ComplexPoint, Error, GaussianRational};

fn slope(re: f64, im: f64) -> GaussianRational {
    GaussianRational::new(rational_from_f64(re), rational_from_f64(im))
}

/// Slope whose sphere image sits at latitude `lat` (0 on H₀) and argument
/// `arg`, both in degrees.
fn slope_at(lat: f64, arg: f64) -> GaussianRational {
    let (la, ar) = (lat.to_radians(), arg.to_radians());
    let p = SpherePoint::from_vec([la.cos() * ar.cos(), la.cos() * ar.sin(), la.sin()]);
    let (x, y) = p.to_slope().expect("not the pole");
    slope(x, y)
}

fn through(p: &ComplexPoint, a: &GaussianRational) -> ComplexLine {
    ComplexLine::slanted(a.clone(), &p.z2 - &(a * &p.z1))
}

/// One point per entry; each point carries lines of the given slopes.
fn star_system(slopes: &[Vec<GaussianRational>]) -> SystemView {
    let mut points = Vec::new();
    let mut lines = Vec::new();
    for (k, ss) in slopes.iter().enumerate() {
        let p = ComplexPoint::from_ints(k as i64 * 7 + 1, (k * k) as i64 * 3 - 5);
        for a in ss {
            lines.push(through(&p, a));
        }
        points.push(p);
    }
    SystemView::new(points, lines)
}

fn hemispheres(sys: &SystemView) -> (Vec<usize>, Vec<usize>) {
    let one = int(1);
    let dirs = sys.directions();
    let u = (0..dirs.len()).filter(|&l| dirs[l].modulus_sqr().is_some_and(|m| m <= one)).collect();
    let v = (0..dirs.len()).filter(|&l| dirs[l].modulus_sqr().is_none_or(|m| m > one)).collect();
    (u, v)
}

#[test]
fn gamma_examples() {
    let sys = star_system(&[
        vec![slope(2.0, 0.0), slope(0.5, 0.0)],
        vec![slope_at(0.0, 0.0), slope_at(0.0, 120.0), slope_at(0.0, -120.0)],
        vec![],
        vec![slope_at(0.0, 120.0), slope_at(0.0, -120.0), GaussianRational::zero()],
    ]);
    let a1 = A_ARCS[0];
    assert!(is_gamma_point(&sys, 0, &a1));
    assert!(is_gamma_point(&sys, 1, &a1));
    assert!(!is_gamma_point(&sys, 2, &a1));
    // slope 0 has no argument and counts against the quota
    assert!(!is_gamma_point(&sys, 3, &a1));
    assert_eq!(gamma_points(&sys, &a1), vec![0, 1]);
}

#[test]
fn na_examples() {
    let a = Direction::Finite(GaussianRational::one());
    let sys = star_system(&[
        vec![GaussianRational::one(), GaussianRational::one()],
        vec![GaussianRational::one(), GaussianRational::i()],
        vec![slope_at(5.0, 0.0), slope_at(-5.0, 25.0)],
    ]);
    let params = DiagnosticParams::for_system(&sys);
    let lines: Vec<usize> = (0..sys.lines().len()).collect();
    let (e1, e2) = lines.split_at(lines.len() / 2);
    assert!(is_na_point(&sys, 0, e1, e2, &a, &params));
    assert!(!is_na_point(&sys, 1, e1, e2, &a, &params));
    // the two directions are more than 20° apart, so no disk holds both
    for step in 0..720 {
        assert!(!is_na_point_at_angle(&sys, 2, &lines, &[], step as f64 / 2.0, &params));
    }
}

#[test]
fn classification_is_a_partition_with_literal_ties() {
    let sys = star_system(&[vec![slope(0.5, 0.0)], vec![], vec![slope(0.5, 0.0), slope(3.0, 0.0)]]);
    let mut params = DiagnosticParams::for_system(&sys);
    params.d_a = int(200);
    let c = classify_points(&sys, &[0, 1], &[2], &params);
    assert_eq!((c.p0, c.p1, c.p2), (vec![], vec![0], vec![1, 2]));
}

fn two_cluster(rng: &mut ChaCha8Rng, points: usize) -> SystemView {
    // half the points lean toward 1, half start near −1 on both sides
    let slopes: Vec<Vec<GaussianRational>> = (0..points)
        .map(|k| {
            let base = if k % 2 == 0 { rng.gen_range(100.0..170.0) } else { -rng.gen_range(100.0..170.0) };
            (0..3).map(|_| slope_at(rng.gen_range(-20.0..20.0), base + rng.gen_range(-5.0..5.0))).collect()
        })
        .collect();
    star_system(&slopes)
}

#[test]
fn balance_certificates_match_a_full_scan() {
    let one = Direction::Finite(GaussianRational::one());
    let a1 = A_ARCS[0];
    for seed in 0..6 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = two_cluster(&mut rng, 10);
        let target = 5;
        let precision = 7;
        let b = balance_lambda(&sys, target, &one, &a1, precision).unwrap();
        // scan every grid point
        let counts: Vec<usize> = (0..1u32 << precision)
            .map(|k| {
                let m = stlab_core::direction::pi_lambda(&one, &rat(k as i64, 1 << precision)).unwrap();
                gamma_points(&sys.transformed(&m), &a1).len()
            })
            .collect();
        assert!(counts.windows(2).all(|w| w[0] <= w[1]), "seed {seed}: {counts:?}");
        let first = counts.iter().position(|&c| c >= target).unwrap();
        assert_eq!(b.lambda, rat(first as i64, 1 << precision));
        assert_eq!(b.count, counts[first]);
        assert_eq!(b.count_below, first.checked_sub(1).map(|k| counts[k]));
    }
}

#[test]
fn balance_edge_cases() {
    let one = Direction::Finite(GaussianRational::one());
    let sys = star_system(&[vec![slope(0.5, 0.1)], vec![slope(2.0, 0.0)]]);
    let b = balance_lambda(&sys, 2, &one, &A_ARCS[0], 64).unwrap();
    assert_eq!(b.lambda, int(0));
    assert_eq!(b.count_below, None);
    assert!(matches!(balance_lambda(&sys, 3, &one, &A_ARCS[0], 64), Err(Error::Unbalanceable { .. })));
}

#[test]
fn split_then_classify_covers_all_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sys = two_cluster(&mut rng, 12);
    let split = hemisphere_split(&sys).unwrap();
    let moved = sys.transformed(&split.transform);
    let e = moved.lines().len();
    assert_eq!((split.e1.len(), split.e2.len()), (e / 2, e - e / 2));
    let params = DiagnosticParams::for_system(&moved);
    let c = classify_points(&moved, &split.e1, &split.e2, &params);
    let mut all: Vec<usize> = c.p0.iter().chain(&c.p1).chain(&c.p2).copied().collect();
    all.sort_unstable();
    assert_eq!(all, (0..12).collect::<Vec<_>>());
}

fn brute_na_for_arc(
    sys: &SystemView,
    p: usize,
    u: &[usize],
    v: &[usize],
    arc: &ArcSpec,
    params: &DiagnosticParams,
) -> bool {
    // dense sampling of centers within 10° of the arc
    (0..7200).any(|s| {
        let phi = s as f64 / 20.0 - 180.0;
        arc.distance(phi) < params.neighborhood_deg && is_na_point_at_angle(sys, p, u, v, phi, params)
    })
}

#[test]
fn refine_selects_by_definition() {
    // a tight cluster around 1, a larger crowd around −1 that pulls the
    // first bisecting plane away from A₁, and a point with spread directions
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut slopes: Vec<Vec<GaussianRational>> = (0..6)
        .map(|_| {
            let mut s: Vec<_> = (0..2).map(|_| slope_at(rng.gen_range(0.1..0.5), rng.gen_range(-0.5..0.5))).collect();
            s.extend((0..2).map(|_| slope_at(-rng.gen_range(0.1..0.5), rng.gen_range(-0.5..0.5))));
            s
        })
        .collect();
    slopes.extend((0..10).map(|_| {
        (0..4).map(|j| slope_at(if j % 2 == 0 { 3.0 } else { -3.0 }, 180.0 + rng.gen_range(-3.0..3.0))).collect()
    }));
    slopes.push(vec![slope_at(30.0, 90.0), slope_at(-30.0, -90.0)]);
    let sys = star_system(&slopes);
    let (u, v) = hemispheres(&sys);
    let o: Vec<usize> = (0..sys.points().len()).collect();
    let params = DiagnosticParams::for_system(&sys);
    let out = refine_step(&sys, &o, &u, &v, 0, &params).unwrap();
    assert_eq!(out.case, RefineCase::Arc(1));
    assert_eq!(out.o, (0..6).collect::<Vec<_>>());
    assert!(!out.planes[0].meets_neighborhood(&A_ARCS[0], 10.0));
    let arc = A_ARCS[0];
    let expected: Vec<usize> =
        o.iter().copied().filter(|&p| brute_na_for_arc(&sys, p, &u, &v, &arc, &params)).collect();
    assert_eq!(out.o, expected);
    assert!(out.u.iter().all(|l| u.contains(l)) && out.v.iter().all(|l| v.contains(l)));
    assert!(out.check.hemispheres);
}

#[test]
fn refine_on_antipodal_clusters() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let slopes: Vec<Vec<GaussianRational>> = (0..6)
        .map(|_| {
            vec![
                slope_at(rng.gen_range(0.1..0.5), rng.gen_range(-0.5..0.5)),
                slope_at(-rng.gen_range(0.1..0.5), rng.gen_range(-0.5..0.5)),
                slope_at(rng.gen_range(0.1..0.5), 180.0 - rng.gen_range(-0.5..0.5)),
                slope_at(-rng.gen_range(0.1..0.5), 180.0 - rng.gen_range(-0.5..0.5)),
            ]
        })
        .collect();
    let sys = star_system(&slopes);
    let (u, v) = hemispheres(&sys);
    let o: Vec<usize> = (0..sys.points().len()).collect();
    let params = DiagnosticParams::for_system(&sys);
    match refine_step(&sys, &o, &u, &v, 0, &params) {
        Ok(out) => {
            assert!(matches!(out.case, RefineCase::Arc(_)));
            assert!(out.check.hemispheres);
        }
        // no point has all its directions in one 10° disk
        Err(e) => assert_eq!(e, Error::EmptySelection),
    }
}

#[test]
fn refine_on_spread_directions_is_empty() {
    let slopes: Vec<Vec<GaussianRational>> = (0..4)
        .map(|k| (0..6).map(|j| slope_at(if j % 2 == 0 { 20.0 } else { -20.0 }, 60.0 * j as f64 + k as f64)).collect())
        .collect();
    let sys = star_system(&slopes);
    let (u, v) = hemispheres(&sys);
    let o: Vec<usize> = (0..sys.points().len()).collect();
    let params = DiagnosticParams::for_system(&sys);
    for arc in &A_ARCS {
        assert!(na_arc_points(&sys, &o, &u, &v, arc, &params).is_empty());
    }
    assert_eq!(refine_step(&sys, &o, &u, &v, 0, &params), Err(Error::EmptySelection));
}

fn cluster(rng: &mut ChaCha8Rng, lat: f64, arg: f64, size: usize) -> Vec<Direction> {
    (0..size)
        .map(|_| Direction::Finite(slope_at(lat + rng.gen_range(-0.005..0.005), arg + rng.gen_range(-0.005..0.005))))
        .collect()
}

#[test]
fn orthogonalization_examples() {
    let o = separate_to_orthogonal(&[Direction::Finite(GaussianRational::zero())], &[Direction::Infinity]).unwrap();
    assert_eq!(o.stretch, 1.0);
    assert!(o.verified());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let d1 = cluster(&mut rng, 0.0, 0.0, 5);
    let d2 = cluster(&mut rng, 0.0, 90.0, 5);
    let o = separate_to_orthogonal(&d1, &d2).unwrap();
    assert!(o.verified(), "{o:?}");
    let (a, b) = (o.map.apply_direction(&d1[0]), o.map.apply_direction(&d2[0]));
    assert!(dist_deg(&a, &b) >= 179.0);

    assert!(matches!(separate_to_orthogonal(&d1, &d1), Err(Error::TooClose(_))));
}

#[test]
fn orthogonalization_over_many_gaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (lat, arg) = (rng.gen_range(-60.0..60.0), rng.gen_range(-180.0..180.0));
        let d1 = cluster(&mut rng, lat, arg, 4);
        let gap = rng.gen_range(6.0..170.0);
        let d2 = cluster(&mut rng, lat, arg + gap, 4);
        let real_gap = dist_deg(&d1[0], &d2[0]);
        let o = separate_to_orthogonal(&d1, &d2).unwrap();
        assert!(o.verified(), "gap {real_gap}: {o:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classes_partition_the_points(
        degs in proptest::collection::vec((0usize..4, 0usize..4), 1..12),
        quota in 1i64..400,
    ) {
        let slopes: Vec<Vec<GaussianRational>> = degs
            .iter()
            .enumerate()
            .map(|(k, &(a, b))| {
                let mut s: Vec<_> = (0..a).map(|j| slope(0.25 + j as f64 / 8.0 + k as f64 / 64.0, 0.0)).collect();
                s.extend((0..b).map(|j| slope(2.0 + j as f64 + k as f64 / 64.0, 0.5)));
                s
            })
            .collect();
        let sys = star_system(&slopes);
        let (u, v) = hemispheres(&sys);
        let mut params = DiagnosticParams::for_system(&sys);
        params.d_a = rat(quota, 4);
        let c = classify_points(&sys, &u, &v, &params);
        let mut all: Vec<usize> = c.p0.iter().chain(&c.p1).chain(&c.p2).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..slopes.len()).collect::<Vec<_>>());
    }

    #[test]
    fn na_test_is_monotone_in_the_allowance(
        lats in proptest::collection::vec(-15.0f64..15.0, 1..6),
        center in -20.0f64..20.0,
        m in 1i64..1000,
    ) {
        let slopes = vec![lats.iter().enumerate().map(|(j, &l)| slope_at(l, j as f64 * 3.0)).collect()];
        let sys = star_system(&slopes);
        let all: Vec<usize> = (0..sys.lines().len()).collect();
        let mut params = DiagnosticParams::for_system(&sys);
        params.m = int(m);
        let tight = is_na_point_at_angle(&sys, 0, &all, &[], center, &params);
        params.m = rat(m, 2);
        let loose = is_na_point_at_angle(&sys, 0, &all, &[], center, &params);
        prop_assert!(!tight || loose);
    }

    #[test]
    fn sphere_images_lie_on_the_unit_sphere(lat in -89.0f64..89.0, arg in -180.0f64..180.0) {
        let p = to_sphere(&Direction::Finite(slope_at(lat, arg)));
        let n: f64 = p.v.iter().map(|x| x * x).sum();
        prop_assert!((n - 1.0).abs() < 1e-12);
    }
}
