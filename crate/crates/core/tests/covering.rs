use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stlab_core::covering::{
    bott, build_shift_graph, complement_cover, run_covering, verify_cover, FreeCube, GridCube, ShiftGraph,
};
use stlab_core::exact::{int, rat};
use stlab_core::Rational;

fn random_points(seed: u64, n: usize, d: usize, scale: i64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..scale)).collect();
        if seen.insert(p.clone()) {
            out.push(p.into_iter().map(|x| rat(x, scale)).collect());
        }
    }
    out
}

fn clustered_points(seed: u64, n: usize, d: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<i64>> = (0..5).map(|_| (0..d).map(|_| rng.gen_range(0..1_000_000)).collect()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let c = &centers[rng.gen_range(0..centers.len())];
        let spread = [10, 1000, 100_000][rng.gen_range(0..3)];
        let p: Vec<i64> = c.iter().map(|x| x + rng.gen_range(-spread..=spread)).collect();
        if seen.insert(p.clone()) {
            out.push(p.into_iter().map(int).collect());
        }
    }
    out
}

/// All-pairs shift graph, testing the free-segment condition at sample
/// points of the arrangement cut out by the relevant cube projections.
fn shift_graph_oracle(cubes: &[FreeCube], kappa: u32) -> Vec<(usize, usize)> {
    let d = cubes[0].dim();
    let open = |lo: &Rational, hi: &Rational, a: &Rational, b: &Rational| lo < b && a < hi;
    let mut edges = Vec::new();
    for (i, q1) in cubes.iter().enumerate() {
        let b = bott(q1, kappa);
        let b0 = &b.corner[0];
        let sliver = b0 - &b.side / int(10);
        for (j, q2) in cubes.iter().enumerate() {
            if i == j {
                continue;
            }
            let drop = &q2.side / int(10);
            let cond1 = open(&sliver, b0, &(&q2.corner[0] - &drop), &(q2.hi(0) - &drop))
                && (1..d).all(|k| open(&b.corner[k], &b.hi(k), &q2.corner[k], &q2.hi(k)));
            let top2 = q2.hi(0);
            if !cond1 || top2 > *b0 {
                continue;
            }
            let blockers: Vec<&FreeCube> = cubes
                .iter()
                .enumerate()
                .filter(|(k, q3)| *k != i && *k != j && q3.corner[0] < *b0 && q3.hi(0) > top2)
                .map(|(_, q3)| q3)
                .collect();
            // candidate coordinates: all breakpoints and midpoints between them
            let mut axes: Vec<Vec<Rational>> = Vec::new();
            for k in 1..d {
                let lo = b.corner[k].clone().max(q2.corner[k].clone());
                let hi = b.hi(k).min(q2.hi(k));
                let mut cuts = vec![lo.clone(), hi.clone()];
                for q3 in &blockers {
                    for x in [q3.corner[k].clone(), q3.hi(k)] {
                        if lo <= x && x <= hi {
                            cuts.push(x);
                        }
                    }
                }
                cuts.sort();
                cuts.dedup();
                let mut vals = cuts.clone();
                for w in cuts.windows(2) {
                    vals.push((&w[0] + &w[1]) / int(2));
                }
                axes.push(vals);
            }
            let mut idx = vec![0usize; d - 1];
            let free = 'search: loop {
                let x: Vec<&Rational> = idx.iter().enumerate().map(|(k, &v)| &axes[k][v]).collect();
                let blocked =
                    blockers.iter().any(|q3| (1..d).all(|k| q3.corner[k] < *x[k - 1] && *x[k - 1] < q3.hi(k)));
                if !blocked {
                    break 'search true;
                }
                let mut k = 0;
                loop {
                    if k == d - 1 {
                        break 'search false;
                    }
                    idx[k] += 1;
                    if idx[k] < axes[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            };
            if free {
                edges.push((i, j));
            }
        }
    }
    edges.sort();
    edges
}

#[test]
fn tight_pair_in_one_dimension() {
    let pts = vec![vec![int(0)], vec![rat(1, 1000)]];
    let res = run_covering(&pts, 1, 1, 1).unwrap();
    assert!(!res.cubes.is_empty());
    let rep = verify_cover(&pts, &res, 1, 1);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn trivial_inputs() {
    let res = run_covering(&[], 2, 1, 1).unwrap();
    assert!(res.cubes.is_empty());
    let one = vec![vec![rat(1, 3), rat(2, 7)]];
    let res = run_covering(&one, 2, 1, 1).unwrap();
    assert_eq!(res.cubes.len(), 1);
    assert!(verify_cover(&one, &res, 1, 1).passed());
    assert!(run_covering(&one, 2, 1, 0).is_err());
    assert!(run_covering(&one, 2, 0, 1).is_err());
    assert!(run_covering(&one, 3, 1, 1).is_err());
}

#[test]
fn more_demand_than_points() {
    let pts = random_points(3, 30, 2, 1000);
    let res = run_covering(&pts, 2, 1, 31).unwrap();
    let rep = verify_cover(&pts, &res, 1, 31);
    assert_eq!(rep.size.pass(), None);
    assert!(rep.bott_ok() && rep.graph_ok());
}

#[test]
fn random_runs_satisfy_all_checks() {
    for (seed, n, d, r) in [(1, 2000, 1, 1), (2, 3000, 1, 3), (3, 3000, 2, 1), (4, 500, 3, 1), (5, 300, 4, 1)] {
        let pts = random_points(seed, n, d, 1 << 20);
        let res = run_covering(&pts, d, 1, r).unwrap();
        let rep = verify_cover(&pts, &res, 1, r);
        assert!(rep.passed(), "seed {seed}: {rep}");
        assert_eq!(res.stats.bound_violations, 0);
        assert_eq!(res.stats.anomalies, 0);
        assert!(res.stats.b <= 2 * res.stats.s);
    }
}

#[test]
fn clustered_runs_satisfy_all_checks() {
    for (seed, d, r) in [(11, 1, 1), (12, 2, 2), (13, 2, 1), (14, 3, 1)] {
        let pts = clustered_points(seed, 1500, d);
        let res = run_covering(&pts, d, 1, r).unwrap();
        let rep = verify_cover(&pts, &res, 1, r);
        assert!(rep.passed(), "seed {seed}: {rep}");
        assert_eq!(res.stats.anomalies, 0);
    }
}

#[test]
fn larger_kappa() {
    let pts = random_points(21, 2000, 2, 1 << 16);
    let res = run_covering(&pts, 2, 2, 1).unwrap();
    assert!(verify_cover(&pts, &res, 2, 1).passed());
}

#[test]
fn runs_are_deterministic() {
    let pts = clustered_points(8, 800, 2);
    let a = run_covering(&pts, 2, 1, 1).unwrap();
    let b = run_covering(&pts, 2, 1, 1).unwrap();
    assert_eq!(a.cubes, b.cubes);
    assert_eq!(a.stats, b.stats);
}

#[test]
fn shift_graph_matches_oracle_on_cover_output() {
    for (seed, d) in [(31, 1), (32, 2), (33, 2), (34, 3)] {
        let pts = clustered_points(seed, 1200, d);
        let res = run_covering(&pts, d, 1, 1).unwrap();
        let g = build_shift_graph(&res.cubes, 1).unwrap();
        assert_eq!(g.edges, shift_graph_oracle(&res.cubes, 1), "seed {seed}");
        assert!(g.max_in_degree() <= 1);
    }
}

#[test]
fn shift_graph_matches_oracle_on_random_families() {
    // random non-overlapping cubes on a coarse grid with varied sizes
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..40 {
        let d = rng.gen_range(1..=3);
        let mut cubes: Vec<FreeCube> = Vec::new();
        for _ in 0..60 {
            let side = rat(rng.gen_range(1..=30), rng.gen_range(1..=3));
            let corner: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(0..120), 2)).collect();
            let c = FreeCube::new(corner, side);
            if cubes.iter().all(|o| !o.to_box().interiors_overlap(&c.to_box())) {
                cubes.push(c);
            }
        }
        let g: ShiftGraph = build_shift_graph(&cubes, 1).unwrap();
        assert_eq!(g.edges, shift_graph_oracle(&cubes, 1));
    }
}

#[test]
fn complement_cover_sampling_oracle() {
    let q = GridCube::new(vec![0, 0], 25);
    let b = GridCube::new(vec![10, 10], 5);
    let cover = complement_cover(&q, &b).unwrap();
    assert!(cover.len() <= 8);
    let free: Vec<FreeCube> = cover.iter().map(GridCube::to_free).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let p = vec![rat(rng.gen_range(0..=25_000), 1000), rat(rng.gen_range(0..=25_000), 1000)];
        let in_b = b.to_free().to_box().contains_interior(&p);
        let covered = free.iter().any(|c| c.contains_point(&p));
        assert!(in_b || covered, "{p:?} uncovered");
        assert!(free.iter().all(|c| !c.to_box().contains_interior(&p) || !in_b));
    }
    for c in &cover {
        assert!(q.contains_cube(c));
    }
}

#[test]
fn hundred_thousand_uniform_points_in_the_plane() {
    let pts = random_points(2024, 100_000, 2, 1 << 24);
    let res = run_covering(&pts, 2, 1, 1).unwrap();
    let rep = verify_cover(&pts, &res, 1, 1);
    assert_eq!(rep.size.pass(), Some(true), "{rep}");
    assert!(rep.passed(), "{rep}");
    assert!(res.cubes.len() > 2);
}
