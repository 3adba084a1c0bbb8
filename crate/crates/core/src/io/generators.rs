//! Seeded generators for point-line systems, point clouds, and flat bundles.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SystemFile;
use crate::combination::{canonical_frame, canonical_spans, flat_through, FlatBundle, MAX_SPREAD_DEG};
use crate::exact::{rat, rational_from_f64, ComplexLine, ComplexPoint, Flat2, GaussianRational, RVector4, Rational};
use crate::incidence::count_incidences_fast;
use crate::{Error, Result};

/// The grid system `{(i, j) : 1 ≤ i ≤ k, 1 ≤ j ≤ 2k²}` with the lines
/// `y = m x + b`, `1 ≤ m ≤ k`, `1 ≤ b ≤ k²`: `2k³` points, `k³` lines,
/// `k` points per line, `k⁴` incidences.
pub fn gen_erdos(k: u32) -> SystemFile {
    assert!(k >= 1, "k must be positive");
    let k = k as i64;
    let points: Vec<ComplexPoint> =
        (1..=k).flat_map(|i| (1..=2 * k * k).map(move |j| ComplexPoint::from_ints(i, j))).collect();
    let lines: Vec<ComplexLine> = (1..=k)
        .flat_map(|m| {
            (1..=k * k).map(move |b| {
                ComplexLine::slanted(GaussianRational::from_ints(m, 0), GaussianRational::from_ints(b, 0))
            })
        })
        .collect();
    let total = count_incidences_fast(&points, &lines).expect("distinct by construction");
    assert_eq!(total, (k as u64).pow(4), "incidence count of the grid system");
    SystemFile { points, lines }
}

/// `n` points and `e` lines over small Gaussian integers. About half the
/// points are planted on random lines; the rest are lattice points moved by
/// distinct odd multiples of `2^-12` in both real parts, so they meet no
/// line at all.
pub fn gen_random(seed: u64, n: usize, e: usize) -> SystemFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = 4 + ((n.max(e) as f64).sqrt() as i64).min(60);
    let gi = |rng: &mut ChaCha8Rng| GaussianRational::from_ints(rng.gen_range(-g..=g), rng.gen_range(-g..=g));

    let mut seen = HashSet::new();
    let mut lines = Vec::with_capacity(e);
    while lines.len() < e {
        let l = if rng.gen_ratio(1, 8) {
            ComplexLine::vertical(gi(&mut rng))
        } else {
            ComplexLine::slanted(gi(&mut rng), gi(&mut rng))
        };
        if seen.insert(l.clone()) {
            lines.push(l);
        }
    }

    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(n);
    let mut odd = 1i64;
    while points.len() < n {
        let p = if !lines.is_empty() && rng.gen_bool(0.5) {
            let l = &lines[rng.gen_range(0..lines.len())];
            let z = gi(&mut rng);
            match l {
                ComplexLine::Slanted { a, b } => ComplexPoint::new(z.clone(), a * &z + b),
                ComplexLine::Vertical { c } => ComplexPoint::new(c.clone(), z),
            }
        } else {
            let shift = GaussianRational::real(rat(odd, 1 << 12));
            odd += 2;
            ComplexPoint::new(&gi(&mut rng) + &shift, &gi(&mut rng) + &shift)
        };
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    SystemFile { points, lines }
}

/// Shape of a random point cloud.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloudShape {
    /// Uniform over a fine dyadic grid in the unit cube.
    Uniform,
    /// A few clusters of very different radii.
    Clustered,
}

/// `n` distinct points of R^d with dyadic coordinates.
pub fn gen_cloud(seed: u64, n: usize, d: usize, shape: CloudShape) -> Vec<Vec<Rational>> {
    const BITS: i64 = 1 << 24;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centers: Vec<Vec<i64>> = (0..6).map(|_| (0..d).map(|_| rng.gen_range(0..BITS)).collect()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<i64> = match shape {
            CloudShape::Uniform => (0..d).map(|_| rng.gen_range(0..BITS)).collect(),
            CloudShape::Clustered => {
                let c = &centers[rng.gen_range(0..centers.len())];
                let radius = [1 << 6, 1 << 12, 1 << 18][rng.gen_range(0..3)];
                c.iter().map(|x| x + rng.gen_range(-radius..=radius)).collect()
            }
        };
        if seen.insert(p.clone()) {
            out.push(p.into_iter().map(|x| rat(x, BITS)).collect());
        }
    }
    out
}

/// `m` anchors in the unit cube of R⁴, each carrying `per_point` flats in
/// both families. A flat of the first family is a complex line, for the
/// complex structure that rotates each reference subspace within itself,
/// tilted by at most `spread_deg / 2` from the first reference subspace, so
/// its Grassmannian distance to it is at most `spread_deg`; likewise for the
/// second family. Spread zero gives the exact reference directions.
pub fn gen_bundle_fixture(m: usize, per_point: usize, spread_deg: f64, seed: u64) -> Result<FlatBundle> {
    if !(0.0..MAX_SPREAD_DEG).contains(&spread_deg) {
        return Err(Error::SpreadTooLarge(spread_deg));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut anchors = Vec::with_capacity(m);
    while anchors.len() < m {
        let c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..1 << 12));
        if seen.insert(c) {
            anchors.push(RVector4(c.map(|x| rat(x, 1 << 12))));
        }
    }
    let (h1, h2) = canonical_frame();
    let (s1, s2) = canonical_spans();
    let tilted = |own: [[f64; 4]; 2], other: [[f64; 4]; 2], rng: &mut ChaCha8Rng| -> [RVector4; 2] {
        let t = rng.gen_range(0.0..=spread_deg / 2.0).to_radians();
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let (c, s) = (t.cos(), t.sin());
        let v: [f64; 4] =
            std::array::from_fn(|i| c * own[0][i] + s * (phi.cos() * other[0][i] + phi.sin() * other[1][i]));
        let jv: [f64; 4] =
            std::array::from_fn(|i| c * own[1][i] + s * (phi.cos() * other[1][i] - phi.sin() * other[0][i]));
        [RVector4(v.map(rational_from_f64)), RVector4(jv.map(rational_from_f64))]
    };
    let family = |p: &RVector4, exact: &[RVector4; 2], own, other, rng: &mut ChaCha8Rng| -> Vec<Flat2> {
        (0..per_point)
            .map(|_| if spread_deg == 0.0 { flat_through(p, exact) } else { flat_through(p, &tilted(own, other, rng)) })
            .collect()
    };
    let (f1, f2) = ([h1.b1, h1.b2], [h2.b1, h2.b2]);
    let l1 = anchors.iter().map(|p| family(p, &s1, f1, f2, &mut rng)).collect();
    let l2 = anchors.iter().map(|p| family(p, &s2, f2, f1, &mut rng)).collect();
    FlatBundle::new(anchors, l1, l2)
}

/// Anchors of a bundle as R⁴ points for the covering code.
pub fn anchors_as_cloud(b: &FlatBundle) -> Vec<Vec<Rational>> {
    b.anchors().iter().map(|p| p.0.to_vec()).collect()
}
