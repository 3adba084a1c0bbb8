use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlab_core::direction::{
    apply_mobius, dist_deg, gr_dist_deg, is_orthogonal, pi_lambda, sphere_disk_cover, tau_hat, ComplexLinearMap,
    Direction, SpherePoint,
};
use stlab_core::exact::{int, rat, rational_from_f64};
use stlab_core::GaussianRational;

fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
}

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..40, 1i64..12)
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![
        1 => Just(Direction::Infinity),
        12 => (small_rat(), small_rat()).prop_map(|(a, b)| Direction::Finite(g(a, b))),
    ]
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rat(), small_rat()).prop_map(|(a, b)| g(a, b))
}

fn map() -> impl Strategy<Value = ComplexLinearMap> {
    (gaussian(), gaussian(), gaussian(), gaussian())
        .prop_filter_map("singular", |(a, b, c, d)| ComplexLinearMap::new(a, b, c, d).ok())
}

/// A point of the unit circle with rational coordinates.
fn unit_circle(t: (i64, i64)) -> GaussianRational {
    let t = rat(t.0, t.1);
    let den = int(1) + &t * &t;
    GaussianRational::new((int(1) - &t * &t) / &den, (int(2) * t) / den)
}

fn sphere_to_direction(p: &SpherePoint) -> Direction {
    match p.to_slope() {
        Some((x, y)) => Direction::Finite(GaussianRational::new(rational_from_f64(x), rational_from_f64(y))),
        None => Direction::Infinity,
    }
}

#[test]
fn poles_are_antipodal() {
    let zero = Direction::Finite(GaussianRational::zero());
    assert!((dist_deg(&zero, &Direction::Infinity) - 180.0).abs() < 1e-9);
    assert!((gr_dist_deg(&tau_hat(&zero), &tau_hat(&Direction::Infinity)) - 180.0).abs() < 1e-9);
}

#[test]
fn one_degree_balls_land_in_ten_degree_balls() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 1000 {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let p = SpherePoint::from_vec(v);
        let eps = rng.gen_range(0.0..0.017);
        let q = SpherePoint::from_vec(std::array::from_fn(|i| p.v[i] + eps * w[i]));
        let (d1, d2) = (sphere_to_direction(&p), sphere_to_direction(&q));
        if dist_deg(&d1, &d2) > 1.0 {
            continue;
        }
        checked += 1;
        assert!(gr_dist_deg(&tau_hat(&d1), &tau_hat(&d2)) <= 10.0 + 1e-6);
    }
}

#[test]
fn scaling_moves_monotonically_toward_the_center() {
    let one = Direction::Finite(GaussianRational::one());
    for a in [g((0, 1), (0, 1)), g((-3, 1), (1, 2)), g((1, 5), (-7, 3))] {
        let d = Direction::Finite(a);
        let dists: Vec<f64> =
            (0..20).map(|k| dist_deg(&apply_mobius(&pi_lambda(&one, &rat(k, 20)).unwrap(), &d), &one)).collect();
        assert!(dists.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{dists:?}");
    }
}

#[test]
fn coarse_disk_cover_by_sampling() {
    let centers = sphere_disk_cover(90.0).unwrap();
    assert!(centers.len() <= 50);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100_000 {
        let p = SpherePoint::from_vec(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        assert!(centers.iter().any(|c| c.dist_deg(&p) <= 45.0 + 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sphere_distance_is_a_metric(a in direction(), b in direction(), c in direction()) {
        let (ab, bc, ac) = (dist_deg(&a, &b), dist_deg(&b, &c), dist_deg(&a, &c));
        prop_assert!(dist_deg(&a, &a).abs() < 1e-9);
        prop_assert!((ab - dist_deg(&b, &a)).abs() < 1e-9);
        prop_assert!(ac <= ab + bc + 1e-9);
        prop_assert!((0.0..=180.0 + 1e-9).contains(&ab));
    }

    #[test]
    fn grassmann_distance_is_a_metric(a in direction(), b in direction(), c in direction()) {
        let (sa, sb, sc) = (tau_hat(&a), tau_hat(&b), tau_hat(&c));
        let (ab, bc, ac) = (gr_dist_deg(&sa, &sb), gr_dist_deg(&sb, &sc), gr_dist_deg(&sa, &sc));
        prop_assert!(gr_dist_deg(&sa, &sa).abs() < 1e-6);
        prop_assert!((ab - gr_dist_deg(&sb, &sa)).abs() < 1e-9);
        prop_assert!(ac <= ab + bc + 1e-6);
    }

    #[test]
    fn orthogonal_means_antipodal(a in direction(), b in direction()) {
        prop_assert_eq!(is_orthogonal(&a, &b), (dist_deg(&a, &b) - 180.0).abs() < 1e-9);
    }

    #[test]
    fn partner_of_a_slope_is_orthogonal(a in gaussian()) {
        prop_assume!(!a.is_zero());
        let partner = -a.conj().inv().unwrap();
        prop_assert!(is_orthogonal(&Direction::Finite(a), &Direction::Finite(partner)));
    }

    #[test]
    fn action_respects_composition(m1 in map(), m2 in map(), d in direction()) {
        prop_assert_eq!(
            apply_mobius(&m2.compose(&m1), &d),
            apply_mobius(&m2, &apply_mobius(&m1, &d))
        );
    }

    #[test]
    fn scaling_fixes_its_axis_and_keeps_the_equator(
        c in small_rat(),
        t in small_rat(),
        l in 0i64..100,
    ) {
        let center = unit_circle(c);
        let m = pi_lambda(&Direction::Finite(center.clone()), &rat(l, 100)).unwrap();
        prop_assert_eq!(apply_mobius(&m, &Direction::Finite(center.clone())), Direction::Finite(center.clone()));
        prop_assert_eq!(apply_mobius(&m, &Direction::Finite(-center.clone())), Direction::Finite(-center));
        let image = apply_mobius(&m, &Direction::Finite(unit_circle(t)));
        prop_assert_eq!(image.modulus_sqr(), Some(int(1)));
    }
}
