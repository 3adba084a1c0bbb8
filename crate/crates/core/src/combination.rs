//! Regions around crossings of two near-orthogonal families of 2-flats.
//!
//! [`combine`] covers the anchor points with cubes, keeps the cubes of
//! out-degree at most one in the shift graph, and attaches to each a region
//! and `r` anchors such that for every pair of those anchors, one of the two
//! families of crossings lies inside the region. [`verify_regions`] checks
//! that claim exactly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::covering::{bott, build_shift_graph, run_covering, shift_cube, AxisBox, CoverResult, FreeCube};
use crate::direction::{gr_dist_deg, Subspace2};
use crate::exact::{flat_intersect, int, rational_from_f64, Flat2, FlatIntersection, RVector4, Rational};
use crate::{Error, Result};

/// Largest admissible angle between a flat's direction and its reference
/// subspace, in degrees.
pub const MAX_SPREAD_DEG: f64 = 10.0;

/// Integer spanning vectors of the two reference subspaces.
pub fn canonical_spans() -> ([RVector4; 2], [RVector4; 2]) {
    (
        [RVector4::from_ints([0, 1, 1, 1]), RVector4::from_ints([1, 0, -1, 1])],
        [RVector4::from_ints([1, 1, 0, -1]), RVector4::from_ints([1, -1, 1, 0])],
    )
}

/// The two orthogonal reference subspaces, orthonormalized.
pub fn canonical_frame() -> (Subspace2, Subspace2) {
    let ([a, b], [c, d]) = canonical_spans();
    (Subspace2::from_span(a.to_f64(), b.to_f64()), Subspace2::from_span(c.to_f64(), d.to_f64()))
}

pub fn flat_direction(f: &Flat2) -> Subspace2 {
    let (u, v) = f.dirs();
    Subspace2::from_span(u.to_f64(), v.to_f64())
}

/// The flat through `p` with direction spanned by `dirs`.
pub fn flat_through(p: &RVector4, dirs: &[RVector4; 2]) -> Flat2 {
    Flat2::new(p.clone(), dirs[0].clone(), dirs[1].clone()).expect("independent directions")
}

/// Anchor points with two lists of flats through each.
#[derive(Clone, Debug)]
pub struct FlatBundle {
    anchors: Vec<RVector4>,
    l1: Vec<Vec<Flat2>>,
    l2: Vec<Vec<Flat2>>,
}

impl FlatBundle {
    /// Checks that each flat passes through its anchor and stays within
    /// [`MAX_SPREAD_DEG`] of the reference subspaces.
    pub fn new(anchors: Vec<RVector4>, l1: Vec<Vec<Flat2>>, l2: Vec<Vec<Flat2>>) -> Result<Self> {
        if l1.len() != anchors.len() || l2.len() != anchors.len() {
            return Err(Error::InvalidParams("one flat list per anchor is required in each family".into()));
        }
        let bundle = FlatBundle { anchors, l1, l2 };
        for (i, p) in bundle.anchors.iter().enumerate() {
            if !bundle.l1[i].iter().chain(&bundle.l2[i]).all(|f| f.contains(p)) {
                return Err(Error::InvalidParams(format!("a flat of anchor {i} misses it")));
            }
        }
        let spread = bundle.max_spread_deg();
        if spread > MAX_SPREAD_DEG + 1e-9 {
            return Err(Error::SpreadTooLarge(spread));
        }
        Ok(bundle)
    }

    /// One flat per anchor in each family, with exactly the reference
    /// directions.
    pub fn canonical(anchors: Vec<RVector4>) -> Self {
        let (s1, s2) = canonical_spans();
        let l1 = anchors.iter().map(|p| vec![flat_through(p, &s1)]).collect();
        let l2 = anchors.iter().map(|p| vec![flat_through(p, &s2)]).collect();
        FlatBundle { anchors, l1, l2 }
    }

    pub fn anchors(&self) -> &[RVector4] {
        &self.anchors
    }

    pub fn first(&self, p: usize) -> &[Flat2] {
        &self.l1[p]
    }

    pub fn second(&self, p: usize) -> &[Flat2] {
        &self.l2[p]
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    /// Largest Grassmannian distance from a flat to its reference subspace.
    pub fn max_spread_deg(&self) -> f64 {
        let (h1, h2) = canonical_frame();
        let worst = |fam: &Vec<Vec<Flat2>>, h: &Subspace2| {
            fam.par_iter().flatten().map(|f| gr_dist_deg(&flat_direction(f), h)).reduce(|| 0.0, f64::max)
        };
        worst(&self.l1, &h1).max(worst(&self.l2, &h2))
    }

    /// Applies the linear map `m` (rows) to every anchor and flat.
    pub fn transformed(&self, m: &[[Rational; 4]; 4]) -> Self {
        let apply = |v: &RVector4| {
            RVector4(std::array::from_fn(|i| (0..4).map(|j| &m[i][j] * &v.0[j]).fold(Rational::zero(), |a, b| a + b)))
        };
        let flat = |f: &Flat2| {
            let (u, v) = f.dirs();
            Flat2::new(apply(f.base()), apply(u), apply(v)).expect("invertible map")
        };
        FlatBundle {
            anchors: self.anchors.iter().map(apply).collect(),
            l1: self.l1.iter().map(|fs| fs.iter().map(flat).collect()).collect(),
            l2: self.l2.iter().map(|fs| fs.iter().map(flat).collect()).collect(),
        }
    }
}

/// A rotation (rounded to exact dyadic entries) taking the orthogonal pair
/// `(h1, h2)` to the reference pair.
pub fn canonical_rotation(h1: &Subspace2, h2: &Subspace2) -> [[Rational; 4]; 4] {
    let (c1, c2) = canonical_frame();
    let dot = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // orthonormal basis adapted to (h1, h2)
    let mut from = vec![h1.b1, h1.b2];
    for v in [h2.b1, h2.b2] {
        let mut w = v;
        for u in &from {
            let k = dot(u, &w);
            w = std::array::from_fn(|i| w[i] - k * u[i]);
        }
        let n = dot(&w, &w).sqrt();
        from.push(w.map(|x| x / n));
    }
    let to = [c1.b1, c1.b2, c2.b1, c2.b2];
    std::array::from_fn(|i| std::array::from_fn(|j| rational_from_f64((0..4).map(|k| to[k][i] * from[k][j]).sum())))
}

/// A finite union of closed boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub boxes: Vec<AxisBox>,
}

impl Region {
    /// Whether `x` is an interior point of the union, staying `margin` away
    /// from the boundary. A point is interior exactly when every closed
    /// orthant around it is filled near `x` by a single box.
    pub fn contains_interior(&self, x: &[Rational], margin: &Rational) -> bool {
        let d = x.len();
        (0u32..1 << d).all(|orthant| {
            self.boxes.iter().any(|b| {
                (0..d).all(|k| {
                    let (lo, hi) = (&b.lo[k], &b.hi[k]);
                    if orthant >> k & 1 == 1 {
                        *lo <= x[k] && &x[k] + margin < *hi
                    } else {
                        lo + margin < x[k] && x[k] <= *hi
                    }
                })
            })
        })
    }

    pub fn overlaps(&self, o: &Region) -> bool {
        self.boxes.iter().any(|a| o.boxes.iter().any(|b| a.interiors_overlap(b)))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.boxes.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

/// How a region was built from its cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionCase {
    /// No successor in the shift graph: the shifted cube.
    Shift,
    /// The points sit over the successor: a thin prism under the cube.
    Below,
    /// The points sit beside the successor, across the plane `x_axis = const`.
    Beside { axis: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionAssignment {
    pub region: Region,
    /// Indices of the `r` chosen anchors.
    pub points: Vec<usize>,
    /// Index of the cube in the cover.
    pub cube: usize,
    pub case: RegionCase,
}

#[derive(Clone, Debug)]
pub struct Combination {
    pub assignments: Vec<RegionAssignment>,
    pub cover: CoverResult,
    /// Cubes with out-degree at most one.
    pub eligible: usize,
    /// Eligible cubes dropped because their region met an earlier one.
    pub dropped: usize,
    /// `n / (10^10 r)`, the cardinality the lemma promises at scale.
    pub bound: Rational,
    /// Hypotheses of the lemma that this input does not meet.
    pub waived: Vec<String>,
}

fn to_vecs(pts: &[RVector4]) -> Vec<Vec<Rational>> {
    pts.iter().map(|p| p.0.to_vec()).collect()
}

fn clamp(x: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    x.max(lo).min(hi).clone()
}

fn region_back(cover: &CoverResult, boxes: Vec<AxisBox>) -> Region {
    let boxes = boxes
        .into_iter()
        .map(|b| {
            let (u, v) = (cover.from_cover_frame(&b.lo), cover.from_cover_frame(&b.hi));
            let lo = u.iter().zip(&v).map(|(a, b)| a.min(b).clone()).collect();
            let hi = u.iter().zip(&v).map(|(a, b)| a.max(b).clone()).collect();
            AxisBox::new(lo, hi)
        })
        .collect();
    Region { boxes }
}

/// Regions for a family of non-overlapping cubes whose bottom side-cubes
/// face `−e₁`, with the points in the same frame.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub assignments: Vec<RegionAssignment>,
    /// Cubes with out-degree at most one.
    pub eligible: usize,
    /// Eligible cubes dropped because their region met an earlier one.
    pub dropped: usize,
}

/// Attaches a region and `r` points to each cube of out-degree at most one
/// in the shift graph, skipping regions that would overlap earlier ones.
pub fn assign_regions(cubes: &[FreeCube], points: &[Vec<Rational>], r: usize) -> Result<Assignment> {
    let graph = build_shift_graph(cubes, 1)?;
    let out = graph.out_degrees();
    let tenth = int(10);
    let mut result = Assignment::default();
    for (i, q1) in cubes.iter().enumerate() {
        if out[i] > 1 {
            continue;
        }
        result.eligible += 1;
        let b = bott(q1, 1).to_box();
        let inside: Vec<usize> = (0..points.len()).filter(|&p| b.contains(&points[p])).collect();
        let shifted = shift_cube(q1).to_box();
        let (boxes, chosen, case) = if out[i] == 0 {
            (vec![shifted], inside, RegionCase::Shift)
        } else {
            let q2 = &cubes[graph.successors(i).next().expect("out-degree one")];
            // the facet planes of the successor cut the cube's footprint into
            // at most 27 boxes
            let cuts: Vec<[(Rational, Rational); 3]> = (1..4)
                .map(|k| {
                    let (lo, hi) = (q1.corner[k].clone(), q1.hi(k));
                    let a = clamp(&q2.corner[k], &lo, &hi);
                    let c = clamp(&q2.hi(k), &lo, &hi);
                    [(lo, a.clone()), (a, c.clone()), (c, hi)]
                })
                .collect();
            let mut found = None;
            for code in 0..27 {
                let sel = [code / 9, code / 3 % 3, code % 3];
                let piece: Vec<&(Rational, Rational)> = (0..3).map(|k| &cuts[k][sel[k]]).collect();
                if piece.iter().any(|(lo, hi)| lo >= hi) {
                    continue;
                }
                let members: Vec<usize> = inside
                    .iter()
                    .copied()
                    .filter(|&p| (0..3).all(|k| piece[k].0 <= points[p][k + 1] && points[p][k + 1] <= piece[k].1))
                    .collect();
                if members.len() >= r {
                    found = Some((sel, members));
                    break;
                }
            }
            let Some((sel, members)) = found else { continue };
            let mut core = q1.to_box();
            core.hi[0] = &core.hi[0] - &q1.side / &tenth;
            if sel == [1, 1, 1] {
                let mut prism = q1.to_box();
                prism.hi[0] = q1.corner[0].clone();
                prism.lo[0] = &q1.corner[0] - &q2.side / &tenth;
                for k in 1..4 {
                    prism.lo[k] = cuts[k - 1][1].0.clone();
                    prism.hi[k] = cuts[k - 1][1].1.clone();
                }
                (vec![core, prism], members, RegionCase::Below)
            } else {
                let mut axis = 0;
                let mut widest = None::<Rational>;
                for k in (1..4).filter(|&k| sel[k - 1] != 1) {
                    let (lo, hi) = &cuts[k - 1][sel[k - 1]];
                    let w = hi - lo;
                    if widest.as_ref().is_none_or(|b| w > *b) {
                        widest = Some(w);
                        axis = k;
                    }
                }
                let mut side = shifted;
                let (lo, hi) = &cuts[axis - 1][sel[axis - 1]];
                if sel[axis - 1] == 0 {
                    side.hi[axis] = hi.clone();
                } else {
                    side.lo[axis] = lo.clone();
                }
                (vec![core, side], members, RegionCase::Beside { axis })
            }
        };
        if chosen.len() < r {
            continue;
        }
        let region = Region { boxes };
        if result.assignments.iter().any(|a| a.region.overlaps(&region)) {
            result.dropped += 1;
            continue;
        }
        result.assignments.push(RegionAssignment { region, points: chosen[..r].to_vec(), cube: i, case });
    }
    Ok(result)
}

/// Builds regions and point subsets of size `r` for the bundle's anchors.
pub fn combine(bundle: &FlatBundle, r: usize) -> Result<Combination> {
    let n = bundle.len();
    if r < 1 {
        return Err(Error::InvalidParams("r must be at least 1".into()));
    }
    if 27 * r > n {
        return Err(Error::InvalidParams(format!("27r = {} exceeds the {n} anchors", 27 * r)));
    }
    let mut waived = Vec::new();
    if 100_000_000 * r as u128 > n as u128 {
        waived.push(format!("r <= n/10^8 (r = {r}, n = {n})"));
    }
    let bound = Rational::new(BigInt::from(n), BigInt::from(10_000_000_000u64) * BigInt::from(r));

    let points = to_vecs(bundle.anchors());
    let cover = run_covering(&points, 4, 1, 27 * r)?;
    let framed: Vec<Vec<Rational>> = points.par_iter().map(|p| cover.to_cover_frame(p)).collect();
    let Assignment { assignments, eligible, dropped } = assign_regions(&cover.cubes, &framed, r)?;
    if assignments.is_empty() {
        return Err(Error::TooFewPoints);
    }
    let assignments = assignments
        .into_iter()
        .map(|a| RegionAssignment { region: region_back(&cover, a.region.boxes), ..a })
        .collect();
    Ok(Combination { assignments, cover, eligible, dropped, bound, waived })
}

/// A crossing that escapes its region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingWitness {
    pub region: usize,
    pub p: usize,
    pub q: usize,
    /// Positions of the offending flats in the lists of `p` and `q`.
    pub flats: (usize, usize),
    /// The crossing point, absent when the flats meet in a line or coincide.
    pub point: Option<RVector4>,
}

impl fmt::Display for CrossingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "region {} anchors ({}, {}) flats {:?}: ", self.region, self.p, self.q, self.flats)?;
        match &self.point {
            Some(x) => write!(f, "crossing {x} outside the interior"),
            None => write!(f, "flats meet in more than a point"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegionReport {
    pub regions: usize,
    pub overlap: Option<(usize, usize)>,
    /// Regions whose point set does not have exactly `r` members.
    pub wrong_size: Vec<usize>,
    /// `(region, anchor)` pairs with the anchor outside the interior.
    pub outside: Vec<(usize, usize)>,
    pub pairs: usize,
    pub crossings: usize,
    pub failure: Option<CrossingWitness>,
}

impl RegionReport {
    pub fn passed(&self) -> bool {
        self.overlap.is_none() && self.wrong_size.is_empty() && self.outside.is_empty() && self.failure.is_none()
    }
}

impl fmt::Display for RegionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "regions: {}", self.regions)?;
        match self.overlap {
            None => writeln!(f, "disjoint: pass")?,
            Some((a, b)) => writeln!(f, "disjoint: FAIL (regions {a} and {b})")?,
        }
        writeln!(f, "sizes: {}", if self.wrong_size.is_empty() { "pass" } else { "FAIL" })?;
        writeln!(f, "anchors inside: {}", if self.outside.is_empty() { "pass" } else { "FAIL" })?;
        write!(f, "crossings: {} pairs, {} crossings, ", self.pairs, self.crossings)?;
        match &self.failure {
            None => write!(f, "pass"),
            Some(w) => write!(f, "FAIL ({w})"),
        }
    }
}

/// Checks whether every crossing of `first` with `second` is an interior
/// point; returns the number of crossings or the first bad pair.
#[allow(clippy::result_large_err)]
fn family_inside(
    region: &Region,
    first: &[Flat2],
    second: &[Flat2],
    margin: &Rational,
) -> std::result::Result<usize, ((usize, usize), Option<RVector4>)> {
    let mut count = 0;
    for (i, e1) in first.iter().enumerate() {
        for (j, e2) in second.iter().enumerate() {
            match flat_intersect(e1, e2) {
                FlatIntersection::Empty => {}
                FlatIntersection::Point(x) => {
                    if !region.contains_interior(&x.0, margin) {
                        return Err(((i, j), Some(x)));
                    }
                    count += 1;
                }
                FlatIntersection::Line | FlatIntersection::Coincide => return Err(((i, j), None)),
            }
        }
    }
    Ok(count)
}

/// Checks disjointness, sizes, anchor membership, and the crossing property
/// for every pair of anchors (a point paired with itself included).
pub fn verify_regions(
    assignments: &[RegionAssignment],
    bundle: &FlatBundle,
    r: usize,
    margin: &Rational,
) -> RegionReport {
    let mut report = RegionReport { regions: assignments.len(), ..Default::default() };
    'outer: for (i, a) in assignments.iter().enumerate() {
        for (j, b) in assignments.iter().enumerate().skip(i + 1) {
            if a.region.overlaps(&b.region) {
                report.overlap = Some((i, j));
                break 'outer;
            }
        }
    }
    for (i, a) in assignments.iter().enumerate() {
        if a.points.len() != r {
            report.wrong_size.push(i);
        }
        for &p in &a.points {
            if !a.region.contains_interior(&bundle.anchors[p].0, margin) {
                report.outside.push((i, p));
            }
        }
    }
    let results: Vec<(usize, usize, Option<CrossingWitness>)> = assignments
        .par_iter()
        .enumerate()
        .map(|(k, a)| {
            let (mut pairs, mut crossings) = (0, 0);
            for (x, &p) in a.points.iter().enumerate() {
                for &q in &a.points[x..] {
                    pairs += 1;
                    let forward = family_inside(&a.region, &bundle.l1[p], &bundle.l2[q], margin);
                    let outcome = match forward {
                        Ok(c) => Ok(c),
                        Err(e) => family_inside(&a.region, &bundle.l1[q], &bundle.l2[p], margin).map_err(|_| e),
                    };
                    match outcome {
                        Ok(c) => crossings += c,
                        Err((flats, point)) => {
                            return (pairs, crossings, Some(CrossingWitness { region: k, p, q, flats, point }));
                        }
                    }
                }
            }
            (pairs, crossings, None)
        })
        .collect();
    for (pairs, crossings, failure) in results {
        report.pairs += pairs;
        report.crossings += crossings;
        if report.failure.is_none() {
            report.failure = failure;
        }
    }
    report
}

/// Number of pairs `(e1, e2)` meeting in exactly one point.
pub fn count_crossings(l1: &[Flat2], l2: &[Flat2]) -> usize {
    l1.par_iter()
        .map(|e1| l2.iter().filter(|e2| matches!(flat_intersect(e1, e2), FlatIntersection::Point(_))).count())
        .sum()
}

/// The crossings `x` of the first reference flat through `p` with the second
/// through `q`, and `y` with the roles swapped.
pub fn thales_points(p: &RVector4, q: &RVector4) -> (RVector4, RVector4) {
    let (s1, s2) = canonical_spans();
    let meet = |a: &RVector4, b: &RVector4| match flat_intersect(&flat_through(a, &s1), &flat_through(b, &s2)) {
        FlatIntersection::Point(x) => x,
        other => unreachable!("complementary subspaces met in {other:?}"),
    };
    (meet(p, q), meet(q, p))
}
