//! Procedures used to separate the lines at each point into two
//! near-orthogonal bundles: hemisphere splitting, point classes, the
//! N(a)- and Γ(A)-point tests, λ-balancing, one refinement round, and the
//! final orthogonalising map.
//!
//! These run on arbitrary systems as diagnostics. Nothing here assumes the
//! system is extremal.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::direction::{gamma_arg, pi_lambda, to_sphere, ComplexLinearMap, Direction, SpherePoint};
use crate::exact::{int, rat, rational_from_f64, ComplexLine, ComplexPoint, GaussianRational, Rational};
use crate::incidence::point_line_index;
use crate::{Error, Result};

/// Points, lines, and for each point the indices of its incident lines.
#[derive(Clone, Debug)]
pub struct SystemView {
    points: Vec<ComplexPoint>,
    lines: Vec<ComplexLine>,
    index: Vec<Vec<usize>>,
}

impl SystemView {
    pub fn new(points: Vec<ComplexPoint>, lines: Vec<ComplexLine>) -> Self {
        let index = point_line_index(&points, &lines);
        SystemView { points, lines, index }
    }

    pub fn points(&self) -> &[ComplexPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ComplexLine] {
        &self.lines
    }

    /// Indices of the lines through point `p`, ascending.
    pub fn incident_lines(&self, p: usize) -> &[usize] {
        &self.index[p]
    }

    pub fn incidences(&self) -> usize {
        self.index.iter().map(Vec::len).sum()
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.lines.iter().map(ComplexLine::direction).collect()
    }

    /// Image of the system under a linear map. Incidences are preserved, so
    /// the index carries over unchanged.
    pub fn transformed(&self, m: &ComplexLinearMap) -> SystemView {
        SystemView {
            points: self.points.par_iter().map(|p| m.apply_point(p)).collect(),
            lines: self.lines.par_iter().map(|l| m.apply_line(l)).collect(),
            index: self.index.clone(),
        }
    }

    /// The subsystem on the given points and lines, reindexed in the given
    /// order.
    pub fn subsystem(&self, points: &[usize], lines: &[usize]) -> SystemView {
        let mut new_idx = vec![usize::MAX; self.lines.len()];
        for (k, &l) in lines.iter().enumerate() {
            new_idx[l] = k;
        }
        SystemView {
            points: points.iter().map(|&p| self.points[p].clone()).collect(),
            lines: lines.iter().map(|&l| self.lines[l].clone()).collect(),
            index: points
                .iter()
                .map(|&p| {
                    let mut v: Vec<usize> =
                        self.index[p].iter().map(|&l| new_idx[l]).filter(|&k| k != usize::MAX).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        }
    }
}

/// Tunable constants of the diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticParams {
    /// Average point degree `I / n`.
    pub d_a: Rational,
    /// The large constant `M`.
    pub m: Rational,
    pub neighborhood_deg: f64,
    /// Fraction of `d_A` a point needs on both sides to be in `P0`.
    pub p0_fraction: Rational,
}

impl DiagnosticParams {
    pub fn for_system(sys: &SystemView) -> Self {
        let n = sys.points.len().max(1);
        DiagnosticParams {
            d_a: rat(sys.incidences() as i64, n as i64),
            m: Rational::from_integer(BigInt::from(10u64.pow(10))),
            neighborhood_deg: 10.0,
            p0_fraction: rat(1, 100),
        }
    }

    /// The slack `d_A / (200 M)` in the N(a)-point test.
    pub fn allowance(&self) -> Rational {
        &self.d_a / (&self.m * int(200))
    }
}

/// A closed arc of the equator `H₀`, by argument in degrees, running
/// counterclockwise from `lo` to `hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcSpec {
    pub lo: f64,
    pub hi: f64,
}

/// Signed angular difference `x − y` folded into (−180, 180].
pub fn ang_diff(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

impl ArcSpec {
    pub const fn new(lo: f64, hi: f64) -> Self {
        ArcSpec { lo, hi }
    }

    pub fn length(&self) -> f64 {
        let l = (self.hi - self.lo).rem_euclid(360.0);
        if l == 0.0 {
            360.0
        } else {
            l
        }
    }

    pub fn contains(&self, deg: f64) -> bool {
        (deg - self.lo).rem_euclid(360.0) <= self.length()
    }

    pub fn midpoint(&self) -> f64 {
        ang_diff(self.lo + self.length() / 2.0, 0.0)
    }

    /// Angular distance along `H₀` from `deg` to the arc.
    pub fn distance(&self, deg: f64) -> f64 {
        if self.contains(deg) {
            0.0
        } else {
            ang_diff(deg, self.lo).abs().min(ang_diff(deg, self.hi).abs())
        }
    }
}

/// `A₁` is the half circle through 1, `A₂` and `A₃` the quarter circles
/// below and above −1.
pub const A_ARCS: [ArcSpec; 3] = [ArcSpec::new(-90.0, 90.0), ArcSpec::new(-180.0, -90.0), ArcSpec::new(90.0, 180.0)];

/// `B_k` is disjoint from `A_k` and runs between the centers of the other
/// two `A` arcs.
pub const B_ARCS: [ArcSpec; 3] = [ArcSpec::new(135.0, -135.0), ArcSpec::new(0.0, 135.0), ArcSpec::new(-135.0, 0.0)];

fn equator_point(deg: f64) -> SpherePoint {
    let r = deg.to_radians();
    SpherePoint { v: [r.cos(), r.sin(), 0.0] }
}

/// Result of splitting the lines between the two hemispheres.
#[derive(Clone, Debug, PartialEq)]
pub struct HemisphereSplit {
    pub e1: Vec<usize>,
    pub e2: Vec<usize>,
    pub transform: ComplexLinearMap,
}

fn modulus_key(d: &Direction) -> (bool, Rational) {
    match d.modulus_sqr() {
        Some(m) => (false, m),
        None => (true, Rational::zero()),
    }
}

/// How the boundary between the `⌊e/2⌋` smallest and the rest can be placed
/// on `H₀` by scaling slopes.
enum Cut {
    /// Any `c` with `lo < c² < hi` works (`hi = None` for no upper limit).
    Open(Rational, Option<Rational>),
    /// One parallel class straddles the cut; scale it onto `H₀`.
    Class(GaussianRational),
}

fn find_cut(dirs: &[Direction], order: &[usize], k: usize) -> Option<Cut> {
    let (x, y) = (&dirs[order[k - 1]], &dirs[order[k]]);
    let (Direction::Finite(ax), Some(mx)) = (x, x.modulus_sqr()) else {
        return None;
    };
    match y.modulus_sqr() {
        None => Some(Cut::Open(mx, None)),
        Some(my) if mx < my => Some(Cut::Open(mx, Some(my))),
        Some(_) => {
            let single_class = dirs.iter().all(|d| d.modulus_sqr().as_ref() != Some(&mx) || d == x);
            (single_class && !mx.is_zero()).then(|| Cut::Class(ax.clone()))
        }
    }
}

/// A positive rational `c` with `lo < c² < hi`.
fn rational_sqrt_between(lo: &Rational, hi: &Rational) -> Rational {
    let mid = (lo + hi) / int(2);
    let mut q = BigInt::one();
    loop {
        let scaled = (&mid * Rational::from_integer(&q * &q)).floor().to_integer();
        let c = Rational::new(scaled.sqrt(), q.clone());
        let c2 = &c * &c;
        if !c.is_zero() && lo < &c2 && &c2 < hi {
            return c;
        }
        q *= 2;
    }
}

/// Splits the lines into `E1` (⌊e/2⌋ lines, slopes in the closed unit disk)
/// and `E2` (the rest, slopes of modulus ≥ 1 or ∞) after a linear map, with
/// at most one parallel class on the unit circle.
pub fn hemisphere_split(sys: &SystemView) -> Result<HemisphereSplit> {
    let e = sys.lines.len();
    if e < 2 {
        return Err(Error::InvalidParams("hemisphere split needs at least two lines".into()));
    }
    let k = e / 2;
    let original = sys.directions();
    let slopes: HashSet<&Direction> = original.iter().collect();
    // identity first, then Möbius moves a ↦ 1/(a − t) for generic t
    let prefixes = std::iter::once(ComplexLinearMap::identity()).chain(
        (1..)
            .map(|j: i64| GaussianRational::new(rat(3 * j + 1, 7), rat(2 * j + 1, 11)))
            .filter(|t| !slopes.contains(&Direction::Finite(t.clone())))
            .map(|t| ComplexLinearMap::invert_about(&t)),
    );
    for prefix in prefixes {
        let dirs: Vec<Direction> = original.iter().map(|d| prefix.apply_direction(d)).collect();
        let mut order: Vec<usize> = (0..e).collect();
        order.sort_by(|&i, &j| (modulus_key(&dirs[i]), &dirs[i], i).cmp(&(modulus_key(&dirs[j]), &dirs[j], j)));
        let Some(cut) = find_cut(&dirs, &order, k) else {
            continue;
        };
        let scale = match cut {
            Cut::Open(lo, hi) => {
                let one = int(1);
                if lo < one && hi.as_ref().is_none_or(|h| &one < h) {
                    None
                } else {
                    let hi = hi.unwrap_or_else(|| &lo * int(4) + int(4));
                    Some(GaussianRational::real(rational_sqrt_between(&lo, &hi)))
                }
            }
            Cut::Class(a) => Some(a),
        };
        let transform = match scale {
            None => prefix,
            Some(c) => ComplexLinearMap::rho(&c)?.compose(&prefix),
        };
        let mut e1 = order[..k].to_vec();
        let mut e2 = order[k..].to_vec();
        e1.sort_unstable();
        e2.sort_unstable();
        return Ok(HemisphereSplit { e1, e2, transform });
    }
    unreachable!("generic inversion centers separate all moduli")
}

/// The partition `P0 ∪ P1 ∪ P2` of the points.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointClasses {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
}

fn membership(len: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; len];
    for &i in set {
        m[i] = true;
    }
    m
}

pub fn classify_points(sys: &SystemView, e1: &[usize], e2: &[usize], params: &DiagnosticParams) -> PointClasses {
    let (in1, in2) = (membership(sys.lines.len(), e1), membership(sys.lines.len(), e2));
    let quota = &params.d_a * &params.p0_fraction;
    let mut out = PointClasses::default();
    for p in 0..sys.points.len() {
        let n1 = sys.index[p].iter().filter(|&&l| in1[l]).count();
        let n2 = sys.index[p].iter().filter(|&&l| in2[l]).count();
        if int(n1 as i64) >= quota && int(n2 as i64) >= quota {
            out.p0.push(p);
        } else if n1 > n2 {
            out.p1.push(p);
        } else {
            out.p2.push(p);
        }
    }
    out
}

/// Sphere images of the lines of `E1` and `E2` through point `p`.
fn local_directions(sys: &SystemView, p: usize, in1: &[bool], in2: &[bool]) -> (Vec<SpherePoint>, Vec<SpherePoint>) {
    let mut u = Vec::new();
    let mut v = Vec::new();
    for &l in &sys.index[p] {
        if in1[l] {
            u.push(to_sphere(&sys.lines[l].direction()));
        }
        if in2[l] {
            v.push(to_sphere(&sys.lines[l].direction()));
        }
    }
    (u, v)
}

fn within_allowance(misses: usize, allowance: &Rational) -> bool {
    &int(misses as i64) <= allowance
}

fn is_na_at(u: &[SpherePoint], v: &[SpherePoint], a: &SpherePoint, params: &DiagnosticParams) -> bool {
    let allow = params.allowance();
    let r = params.neighborhood_deg;
    let misses = |s: &[SpherePoint]| s.iter().filter(|x| x.dist_deg(a).is_nan() || x.dist_deg(a) >= r).count();
    within_allowance(misses(u), &allow) && within_allowance(misses(v), &allow)
}

/// Whether all but `d_A/(200M)` lines of `E1^p` and of `E2^p` have
/// directions in the open disk of radius 10° around `a`.
pub fn is_na_point(
    sys: &SystemView,
    p: usize,
    e1: &[usize],
    e2: &[usize],
    a: &Direction,
    params: &DiagnosticParams,
) -> bool {
    let (in1, in2) = (membership(sys.lines.len(), e1), membership(sys.lines.len(), e2));
    let (u, v) = local_directions(sys, p, &in1, &in2);
    is_na_at(&u, &v, &to_sphere(a), params)
}

/// Same test with the center given by its argument on `H₀`.
pub fn is_na_point_at_angle(
    sys: &SystemView,
    p: usize,
    e1: &[usize],
    e2: &[usize],
    deg: f64,
    params: &DiagnosticParams,
) -> bool {
    let (in1, in2) = (membership(sys.lines.len(), e1), membership(sys.lines.len(), e2));
    let (u, v) = local_directions(sys, p, &in1, &in2);
    is_na_at(&u, &v, &equator_point(deg), params)
}

/// Arguments on `H₀` whose open disk of the given radius contains `x`: an
/// open interval `(θ − w, θ + w)`, or `None` if empty.
fn capture_interval(x: &SpherePoint, radius_deg: f64) -> Option<(f64, f64)> {
    let rho = x.v[0].hypot(x.v[1]);
    let c = radius_deg.to_radians().cos();
    if rho <= c {
        return None;
    }
    let theta = x.v[1].atan2(x.v[0]).to_degrees();
    let w = (c / rho).min(1.0).acos().to_degrees();
    Some((theta, w))
}

/// Whether `p` is an N(a)-point for some `a` in the open 10°-neighbourhood
/// of `arc`. Decided exactly over the arrangement of capture intervals.
fn is_na_for_arc(u: &[SpherePoint], v: &[SpherePoint], arc: &ArcSpec, params: &DiagnosticParams) -> bool {
    let r = params.neighborhood_deg;
    let allow = params.allowance();
    let iu: Vec<_> = u.iter().map(|x| capture_interval(x, r)).collect();
    let iv: Vec<_> = v.iter().map(|x| capture_interval(x, r)).collect();
    let mut breaks: Vec<f64> = iu
        .iter()
        .chain(&iv)
        .flatten()
        .flat_map(|&(t, w)| [t - w, t + w])
        .chain([arc.lo - r, arc.hi + r])
        .map(|x| x.rem_euclid(360.0))
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let candidates: Vec<f64> = if breaks.len() < 2 {
        vec![arc.midpoint()]
    } else {
        (0..breaks.len())
            .map(|i| {
                let (x, y) = (breaks[i], if i + 1 < breaks.len() { breaks[i + 1] } else { breaks[0] + 360.0 });
                (x + y) / 2.0
            })
            .collect()
    };
    let misses = |ints: &[Option<(f64, f64)>], phi: f64| {
        ints.iter().filter(|iv| !iv.is_some_and(|(t, w)| ang_diff(phi, t).abs() < w)).count()
    };
    candidates.into_iter().any(|phi| {
        arc.distance(phi) < r
            && within_allowance(misses(&iu, phi), &allow)
            && within_allowance(misses(&iv, phi), &allow)
    })
}

/// Points of `o` that are N(A)-points for `arc`, with `U`, `V` in the roles
/// of `E1`, `E2`.
pub fn na_arc_points(
    sys: &SystemView,
    o: &[usize],
    u: &[usize],
    v: &[usize],
    arc: &ArcSpec,
    params: &DiagnosticParams,
) -> Vec<usize> {
    let (in1, in2) = (membership(sys.lines.len(), u), membership(sys.lines.len(), v));
    o.par_iter()
        .copied()
        .filter(|&p| {
            let (du, dv) = local_directions(sys, p, &in1, &in2);
            is_na_for_arc(&du, &dv, arc, params)
        })
        .collect()
}

fn gamma_count(dirs: &[Direction], lines: &[usize], arc: &ArcSpec) -> usize {
    lines.iter().filter(|&&l| gamma_arg(&dirs[l]).is_ok_and(|g| arc.contains(g))).count()
}

fn is_gamma(dirs: &[Direction], lines: &[usize], arc: &ArcSpec) -> bool {
    // at least ⌈deg/3⌉ of the arguments in the arc; poles count only in the
    // denominator
    !lines.is_empty() && 3 * gamma_count(dirs, lines, arc) >= lines.len()
}

/// Whether at least a third of the lines through `p` have their meridian
/// projection in `arc`. Lines of direction 0 or ∞ have no projection and
/// count against the quota. A point on no line is not a Γ-point.
pub fn is_gamma_point(sys: &SystemView, p: usize, arc: &ArcSpec) -> bool {
    is_gamma(&sys.directions(), &sys.index[p], arc)
}

pub fn gamma_points(sys: &SystemView, arc: &ArcSpec) -> Vec<usize> {
    let dirs = sys.directions();
    (0..sys.points.len()).filter(|&p| is_gamma(&dirs, &sys.index[p], arc)).collect()
}

/// Output of [`balance_lambda`].
#[derive(Clone, Debug, PartialEq)]
pub struct Balance {
    pub lambda: Rational,
    pub transform: ComplexLinearMap,
    /// Γ-point count at `lambda`.
    pub count: usize,
    /// Γ-point count one grid step below `lambda`, if `lambda > 0`.
    pub count_below: Option<usize>,
}

/// Smallest `λ = k / 2^precision` such that at least `target` points are
/// Γ(arc)-points after applying `π_λ` toward `center`.
///
/// The count is expected to grow with λ; every evaluation is checked against
/// the ones already made and a decrease is reported as an error.
pub fn balance_lambda(
    sys: &SystemView,
    target: usize,
    center: &Direction,
    arc: &ArcSpec,
    precision: u32,
) -> Result<Balance> {
    if precision == 0 {
        return Err(Error::InvalidParams("precision must be positive".into()));
    }
    let dirs = sys.directions();
    let denom = BigInt::from(2u8).pow(precision);
    let lambda_at = |k: &BigInt| Rational::new(k.clone(), denom.clone());
    let count_at = |k: &BigInt| -> Result<usize> {
        let m = pi_lambda(center, &lambda_at(k))?;
        let moved: Vec<Direction> = dirs.iter().map(|d| m.apply_direction(d)).collect();
        Ok((0..sys.points.len()).into_par_iter().filter(|&p| is_gamma(&moved, &sys.index[p], arc)).count())
    };
    let mut seen: BTreeMap<BigInt, usize> = BTreeMap::new();
    let mut eval = |k: &BigInt| -> Result<usize> {
        let c = count_at(k)?;
        if let Some((_, &before)) = seen.range(..k.clone()).next_back() {
            if before > c {
                return Err(Error::MonotonicityViolation { before, after: c });
            }
        }
        if let Some((_, &after)) = seen.range(k.clone()..).next() {
            if c > after {
                return Err(Error::MonotonicityViolation { before: c, after });
            }
        }
        seen.insert(k.clone(), c);
        Ok(c)
    };
    let zero = BigInt::zero();
    let c0 = eval(&zero)?;
    if c0 >= target {
        return Ok(Balance {
            lambda: Rational::zero(),
            transform: pi_lambda(center, &Rational::zero())?,
            count: c0,
            count_below: None,
        });
    }
    let top = &denom - 1;
    let c_top = eval(&top)?;
    if c_top < target {
        return Err(Error::Unbalanceable { target, reached: c_top });
    }
    let (mut lo, mut hi) = (zero, top);
    let (mut c_lo, mut c_hi) = (c0, c_top);
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        let c = eval(&mid)?;
        if c >= target {
            hi = mid;
            c_hi = c;
        } else {
            lo = mid;
            c_lo = c;
        }
    }
    let lambda = lambda_at(&hi);
    Ok(Balance { transform: pi_lambda(center, &lambda)?, lambda, count: c_hi, count_below: Some(c_lo) })
}

/// The quantities `(n_j, e_j, t_j)` bounding round `j` of the refinement.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseTuple {
    pub j: usize,
    pub n_j: Rational,
    pub e_j: Rational,
    pub t_j: Rational,
}

impl SparseTuple {
    pub fn at(j: usize, n: usize, e: usize, params: &DiagnosticParams) -> Self {
        let m = &params.m;
        let shrink = (int(1) - int(3) / m) * rat(1, 3);
        let n_j = Pow::pow(shrink, j) * rat(n as i64, 10);
        let e_j = rat(e as i64, 1) / Rational::from_integer(BigInt::from(2u8).pow(j as u32));
        let t_j = &params.d_a / int(200) * (int(1) - int(j as i64) / m);
        SparseTuple { j, n_j, e_j, t_j }
    }
}

/// Which of the four invariant items hold for `(O, U, V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseCheck {
    pub size: bool,
    pub hemispheres: bool,
    pub line_count: bool,
    pub degrees: bool,
}

impl SparseCheck {
    pub fn all(&self) -> bool {
        self.size && self.hemispheres && self.line_count && self.degrees
    }
}

pub fn check_sparse(sys: &SystemView, o: &[usize], u: &[usize], v: &[usize], tuple: &SparseTuple) -> SparseCheck {
    let dirs = sys.directions();
    let one = int(1);
    let in_h1 = |d: &Direction| d.modulus_sqr().is_some_and(|m| m <= one);
    let in_h2 = |d: &Direction| d.modulus_sqr().is_none_or(|m| m >= one);
    let (in_u, in_v) = (membership(sys.lines.len(), u), membership(sys.lines.len(), v));
    let union = u.iter().chain(v).collect::<HashSet<_>>().len();
    SparseCheck {
        size: int(o.len() as i64) >= tuple.n_j,
        hemispheres: u.iter().all(|&l| in_h1(&dirs[l])) && v.iter().all(|&l| in_h2(&dirs[l])),
        line_count: int(union as i64) <= tuple.e_j,
        degrees: o.iter().all(|&p| {
            let du = sys.index[p].iter().filter(|&&l| in_u[l]).count();
            let dv = sys.index[p].iter().filter(|&&l| in_v[l]).count();
            int(du as i64) >= tuple.t_j && int(dv as i64) >= tuple.t_j
        }),
    }
}

/// The plane `{x : ⟨x, normal⟩ = offset}` splitting the direction multiset
/// in half.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectingPlane {
    pub normal: SpherePoint,
    pub offset: f64,
}

impl BisectingPlane {
    pub fn side(&self, x: &SpherePoint) -> f64 {
        x.dot(&self.normal) - self.offset
    }

    /// Whether the plane meets the open `r`-neighbourhood of `arc`.
    pub fn meets_neighborhood(&self, arc: &ArcSpec, r: f64) -> bool {
        let phi = self.normal.v[1].atan2(self.normal.v[0]).to_degrees();
        let dmin = arc.distance(phi);
        let dmax = if arc.contains(phi + 180.0) {
            180.0
        } else {
            ang_diff(phi, arc.lo).abs().max(ang_diff(phi, arc.hi).abs())
        };
        let lo = (dmax + r).min(180.0).to_radians().cos();
        let hi = (dmin - r).max(0.0).to_radians().cos();
        (lo < self.offset && self.offset < hi) || (dmin < r && self.offset >= hi)
    }
}

/// Generic offset of the arc midpoints, in degrees.
const GENERIC_ROTATION_DEG: f64 = 1e-9;

pub fn bisecting_plane(normal: SpherePoint, dirs: &[SpherePoint]) -> BisectingPlane {
    let mut proj: Vec<f64> = dirs.iter().map(|x| x.dot(&normal)).collect();
    proj.sort_by(f64::total_cmp);
    let offset = if proj.is_empty() { 0.0 } else { (proj[(proj.len() - 1) / 2] + proj[proj.len() / 2]) / 2.0 };
    BisectingPlane { normal, offset }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefineCase {
    /// Plane `f_k` misses the neighbourhood of `A_k` (k is 1-based).
    Arc(usize),
    /// Every plane meets its arc; the `B_m` with most N-points was used.
    Opposite(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RefineOutcome {
    pub case: RefineCase,
    pub o: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub planes: [BisectingPlane; 3],
    pub next: SparseTuple,
    pub check: SparseCheck,
}

/// One refinement round on `(O, U ∪ V)`, where `j` is the round number of
/// the input.
pub fn refine_step(
    sys: &SystemView,
    o: &[usize],
    u: &[usize],
    v: &[usize],
    j: usize,
    params: &DiagnosticParams,
) -> Result<RefineOutcome> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::InvalidParams("refinement needs nonempty U and V".into()));
    }
    let r = params.neighborhood_deg;
    let sphere: Vec<SpherePoint> = sys.lines.iter().map(|l| to_sphere(&l.direction())).collect();
    let multiset: Vec<SpherePoint> = u.iter().chain(v).map(|&l| sphere[l]).collect();
    let planes: [BisectingPlane; 3] =
        std::array::from_fn(|k| bisecting_plane(equator_point(A_ARCS[k].midpoint() + GENERIC_ROTATION_DEG), &multiset));
    let (case, arc, plane) = match (0..3).find(|&k| !planes[k].meets_neighborhood(&A_ARCS[k], r)) {
        Some(k) => (RefineCase::Arc(k + 1), A_ARCS[k], planes[k]),
        None => {
            let counts: Vec<usize> = B_ARCS.iter().map(|b| na_arc_points(sys, o, u, v, b, params).len()).collect();
            let m = (0..3).rev().max_by_key(|&m| counts[m]).expect("three arcs");
            (RefineCase::Opposite(m + 1), B_ARCS[m], planes[m])
        }
    };
    let o_next = na_arc_points(sys, o, u, v, &arc, params);
    if o_next.is_empty() {
        return Err(Error::EmptySelection);
    }
    let side = plane.side(&equator_point(arc.midpoint())).signum();
    let keep = |set: &[usize]| -> Vec<usize> {
        set.iter().copied().filter(|&l| plane.side(&sphere[l]) * side > 0.0).collect()
    };
    let (u_next, v_next) = (keep(u), keep(v));
    let next = SparseTuple::at(j + 1, sys.points.len(), sys.lines.len(), params);
    let check = check_sparse(sys, &o_next, &u_next, &v_next, &next);
    Ok(RefineOutcome { case, o: o_next, u: u_next, v: v_next, planes, next, check })
}

/// A map sending two direction classes near two orthogonal directions,
/// with the measured result.
#[derive(Clone, Debug, PartialEq)]
pub struct Orthogonalization {
    pub map: ComplexLinearMap,
    /// Scaling factor `(1 + λ)/(1 − λ)` used along the axis, 1 for identity.
    pub stretch: f64,
    pub diam1: f64,
    pub diam2: f64,
    pub center_dist: f64,
}

impl Orthogonalization {
    pub fn verified(&self) -> bool {
        self.diam1 <= 1.0 && self.diam2 <= 1.0 && self.center_dist >= 179.0
    }
}

fn mean_direction(ds: &[Direction]) -> Option<SpherePoint> {
    let mut s = [0.0; 3];
    for d in ds {
        let v = to_sphere(d).v;
        for i in 0..3 {
            s[i] += v[i];
        }
    }
    (s.iter().any(|x| *x != 0.0)).then(|| SpherePoint::from_vec(s))
}

fn diameter(ds: &[Direction]) -> f64 {
    let pts: Vec<SpherePoint> = ds.iter().map(to_sphere).collect();
    let mut d: f64 = 0.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            d = d.max(a.dist_deg(b));
        }
    }
    d
}

type Mobius = [[Complex64; 2]; 2];

fn mobius_mul(a: &Mobius, b: &Mobius) -> Mobius {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// Möbius coordinate sending `s` to ∞ and its antipode `t` to 0, in the
/// form `w = (αa + β)/(γa + δ)`.
fn axis_chart(s: Option<Complex64>, t: Option<Complex64>) -> Mobius {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match (s, t) {
        (Some(s), Some(t)) => [[one, -t], [one, -s]],
        (None, Some(t)) => [[one, -t], [zero, one]],
        (Some(s), None) => [[zero, one], [one, -s]],
        (None, None) => unreachable!("antipodal points cannot both be the pole"),
    }
}

fn rationalize(z: Complex64, scale: f64) -> GaussianRational {
    let clean = |x: f64| if x.abs() < scale * 1e-18 { 0.0 } else { x };
    GaussianRational::new(rational_from_f64(clean(z.re)), rational_from_f64(clean(z.im)))
}

/// Finds a map under which the classes `d1` and `d2` land near two
/// orthogonal directions.
///
/// Each class is represented by its mean on the sphere. The map stretches
/// along the axis through the antipode of the representatives' midpoint
/// until the representatives are antipodal.
pub fn separate_to_orthogonal(d1: &[Direction], d2: &[Direction]) -> Result<Orthogonalization> {
    if d1.is_empty() || d2.is_empty() {
        return Err(Error::InvalidParams("both direction classes must be nonempty".into()));
    }
    let (Some(r1), Some(r2)) = (mean_direction(d1), mean_direction(d2)) else {
        return Err(Error::InvalidParams("a direction class has no well-defined mean".into()));
    };
    let gap = r1.dist_deg(&r2);
    if gap < 5.0 {
        return Err(Error::TooClose(gap));
    }
    let (map, stretch) = if gap >= 180.0 - 1e-9 {
        (ComplexLinearMap::identity(), 1.0)
    } else {
        let mid = SpherePoint::from_vec([r1.v[0] + r2.v[0], r1.v[1] + r2.v[1], r1.v[2] + r2.v[2]]);
        let b = mid.antipode();
        let slope = |p: &SpherePoint| p.to_slope().map(|(x, y)| Complex64::new(x, y));
        let s = axis_chart(slope(&b), slope(&mid));
        let s_inv = [[s[1][1], -s[0][1]], [-s[1][0], s[0][0]]];
        let k = 1.0 / (gap / 4.0).to_radians().tan();
        let stretch =
            [[Complex64::new(k, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]];
        let w = mobius_mul(&s_inv, &mobius_mul(&stretch, &s));
        let big = w.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        let w = w.map(|row| row.map(|z| z / big));
        // a ↦ (αa + β)/(γa + δ) is the slope action of [[δ, γ], [β, α]]
        let map = ComplexLinearMap::new(
            rationalize(w[1][1], 1.0),
            rationalize(w[1][0], 1.0),
            rationalize(w[0][1], 1.0),
            rationalize(w[0][0], 1.0),
        )?;
        (map, k)
    };
    let img1: Vec<Direction> = d1.iter().map(|d| map.apply_direction(d)).collect();
    let img2: Vec<Direction> = d2.iter().map(|d| map.apply_direction(d)).collect();
    let center_dist = match (mean_direction(&img1), mean_direction(&img2)) {
        (Some(a), Some(b)) => a.dist_deg(&b),
        _ => 0.0,
    };
    Ok(Orthogonalization { map, stretch, diam1: diameter(&img1), diam2: diameter(&img2), center_dist })
}
