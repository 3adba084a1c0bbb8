//! Directions of complex lines and the Grassmannian toolkit.
//!
//! A slope `a ∈ C ∪ {∞}` is placed on the unit sphere by inverse stereographic
//! projection; unit-modulus slopes land on the equator `H₀`. Distances are
//! central angles in degrees, so orthogonal directions are 180° apart.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::exact::{int, line_through, rational_to_f64, ComplexLine, ComplexPoint, GaussianRational, Rational};
use crate::{Error, Result};

/// The slope of a complex line, with `Infinity` for vertical lines.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Finite(GaussianRational),
    Infinity,
}

impl Direction {
    pub fn finite(a: GaussianRational) -> Self {
        Direction::Finite(a)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Direction::Infinity)
    }

    /// |a|², with `None` at infinity.
    pub fn modulus_sqr(&self) -> Option<Rational> {
        match self {
            Direction::Finite(a) => Some(a.norm_sqr()),
            Direction::Infinity => None,
        }
    }

    /// On the equator H₀, i.e. |a| = 1 exactly.
    pub fn on_equator(&self) -> bool {
        self.modulus_sqr().is_some_and(|m| m.is_one())
    }
}

impl From<GaussianRational> for Direction {
    fn from(a: GaussianRational) -> Self {
        Direction::Finite(a)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Finite(a) => write!(f, "{a}"),
            Direction::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Direction::Infinity),
            t => Ok(Direction::Finite(t.parse()?)),
        }
    }
}

/// A point of the unit sphere S² ⊂ R³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint {
    pub v: [f64; 3],
}

impl SpherePoint {
    /// Normalises `v`; `v` must be nonzero.
    pub fn from_vec(v: [f64; 3]) -> Self {
        let n = norm3(&v);
        SpherePoint { v: [v[0] / n, v[1] / n, v[2] / n] }
    }

    pub fn antipode(&self) -> Self {
        SpherePoint { v: [-self.v[0], -self.v[1], -self.v[2]] }
    }

    pub fn dot(&self, o: &SpherePoint) -> f64 {
        self.v.iter().zip(&o.v).map(|(a, b)| a * b).sum()
    }

    /// Central angle in degrees.
    pub fn dist_deg(&self, o: &SpherePoint) -> f64 {
        let c = cross3(&self.v, &o.v);
        norm3(&c).atan2(self.dot(o)).to_degrees()
    }

    /// Stereographic projection back to a slope, as floats; `None` at the
    /// north pole.
    pub fn to_slope(&self) -> Option<(f64, f64)> {
        let [x, y, z] = self.v;
        let d = 1.0 - z;
        if d <= 0.0 {
            return None;
        }
        Some((x / d, y / d))
    }
}

pub(crate) fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm3(a: &[f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

/// Image on the sphere of diameter 1 resting on the plane at the origin:
/// `(Re a, Im a, |a|²) / (1 + |a|²)`, exact. Infinity maps to `(0, 0, 1)`.
pub fn sphere_coords(d: &Direction) -> [Rational; 3] {
    match d {
        Direction::Infinity => [int(0), int(0), int(1)],
        Direction::Finite(a) => {
            let m = a.norm_sqr();
            let den = &m + int(1);
            [&a.re / &den, &a.im / &den, m / den]
        }
    }
}

/// Unit-sphere image used for all metric work: the sphere of diameter 1
/// recentred at the origin and scaled to radius 1.
pub fn to_sphere(d: &Direction) -> SpherePoint {
    let [x, y, z] = sphere_coords(d);
    let two = int(2);
    let v = [&x * &two, &y * &two, &z * &two - int(1)];
    SpherePoint { v: v.map(|c| rational_to_f64(&c)) }
}

pub fn dist_deg(d1: &Direction, d2: &Direction) -> f64 {
    to_sphere(d1).dist_deg(&to_sphere(d2))
}

/// Exact antipodality: `a1·conj(a2) = −1`, or the pair {0, ∞}.
pub fn is_orthogonal(d1: &Direction, d2: &Direction) -> bool {
    match (d1, d2) {
        (Direction::Finite(a1), Direction::Finite(a2)) => a1 * &a2.conj() == -GaussianRational::one(),
        (Direction::Finite(a), Direction::Infinity) | (Direction::Infinity, Direction::Finite(a)) => a.is_zero(),
        (Direction::Infinity, Direction::Infinity) => false,
    }
}

/// Argument of the meridian projection of `d` onto H₀, in (−180, 180].
pub fn gamma_arg(d: &Direction) -> Result<f64> {
    match d {
        Direction::Finite(a) if !a.is_zero() => {
            let (re, im) = a.to_f64_pair();
            let deg = im.atan2(re).to_degrees();
            Ok(if deg <= -180.0 { deg + 360.0 } else { deg })
        }
        _ => Err(Error::PoleDirection(d.to_string())),
    }
}

/// An invertible linear map of C², acting on points as a matrix on column
/// vectors `(z1, z2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexLinearMap {
    m: [[GaussianRational; 2]; 2],
}

impl ComplexLinearMap {
    pub fn new(
        m11: GaussianRational,
        m12: GaussianRational,
        m21: GaussianRational,
        m22: GaussianRational,
    ) -> Result<Self> {
        let map = ComplexLinearMap { m: [[m11, m12], [m21, m22]] };
        if map.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        let (o, z) = (GaussianRational::one(), GaussianRational::zero());
        ComplexLinearMap { m: [[o.clone(), z.clone()], [z, o]] }
    }

    /// `(z1, z2) ↦ (z1, z2 / a)`, dividing every slope by `a`.
    pub fn rho(a: &GaussianRational) -> Result<Self> {
        let inv = a.inv().ok_or(Error::SingularMap)?;
        Self::new(GaussianRational::one(), GaussianRational::zero(), GaussianRational::zero(), inv)
    }

    /// `(z1, z2) ↦ (z1, z2 + t z1)`, adding `t` to every finite slope.
    pub fn shear(t: &GaussianRational) -> Self {
        ComplexLinearMap {
            m: [[GaussianRational::one(), GaussianRational::zero()], [t.clone(), GaussianRational::one()]],
        }
    }

    /// Acts on slopes as `a ↦ 1 / (a − t)`; sends ∞ to 0 and `t` to ∞.
    pub fn invert_about(t: &GaussianRational) -> Self {
        ComplexLinearMap { m: [[-t, GaussianRational::one()], [GaussianRational::one(), GaussianRational::zero()]] }
    }

    pub fn matrix(&self) -> &[[GaussianRational; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> GaussianRational {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ComplexLinearMap) -> ComplexLinearMap {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        ComplexLinearMap { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn inverse(&self) -> ComplexLinearMap {
        let d = self.det();
        let m = &self.m;
        ComplexLinearMap { m: [[&m[1][1] / &d, -&m[0][1] / &d], [-&m[1][0] / &d, &m[0][0] / &d]] }
    }

    pub fn apply_point(&self, p: &ComplexPoint) -> ComplexPoint {
        let m = &self.m;
        ComplexPoint::new(&m[0][0] * &p.z1 + &m[0][1] * &p.z2, &m[1][0] * &p.z1 + &m[1][1] * &p.z2)
    }

    pub fn apply_line(&self, l: &ComplexLine) -> ComplexLine {
        let (p, q) = match l {
            ComplexLine::Slanted { a, b } => (
                ComplexPoint::new(GaussianRational::zero(), b.clone()),
                ComplexPoint::new(GaussianRational::one(), a + b),
            ),
            ComplexLine::Vertical { c } => (
                ComplexPoint::new(c.clone(), GaussianRational::zero()),
                ComplexPoint::new(c.clone(), GaussianRational::one()),
            ),
        };
        line_through(&self.apply_point(&p), &self.apply_point(&q)).expect("invertible map keeps points distinct")
    }

    pub fn apply_direction(&self, d: &Direction) -> Direction {
        let m = &self.m;
        let (num, den) = match d {
            Direction::Finite(a) => (&m[1][0] + &m[1][1] * a, &m[0][0] + &m[0][1] * a),
            Direction::Infinity => (m[1][1].clone(), m[0][1].clone()),
        };
        if den.is_zero() {
            Direction::Infinity
        } else {
            Direction::Finite(num / den)
        }
    }
}

impl fmt::Display for ComplexLinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

pub fn apply_mobius(m: &ComplexLinearMap, d: &Direction) -> Direction {
    m.apply_direction(d)
}

/// The scaling map toward `center ∈ H₀`, with the normalising scalar dropped.
///
/// For center 1 this is `[[1, λ], [λ, 1]]`, acting as `a ↦ (λ + a)/(1 + λa)`.
/// A general center `c` is handled by conjugating with the rotation of
/// slopes that takes 1 to `c`, which gives `[[1, λ c̄], [λ c, 1]]`.
pub fn pi_lambda(center: &Direction, lambda: &Rational) -> Result<ComplexLinearMap> {
    if lambda < &int(0) || lambda >= &int(1) {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    let Direction::Finite(c) = center else {
        return Err(Error::CenterOffCircle);
    };
    if !c.norm_sqr().is_one() {
        return Err(Error::CenterOffCircle);
    }
    let l = GaussianRational::real(lambda.clone());
    ComplexLinearMap::new(GaussianRational::one(), &l * &c.conj(), &l * c, GaussianRational::one())
}

/// An orthonormal pair spanning a 2-subspace of R⁴.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Subspace2 {
    pub b1: [f64; 4],
    pub b2: [f64; 4],
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit4(a: [f64; 4]) -> [f64; 4] {
    let n = dot4(&a, &a).sqrt();
    a.map(|x| x / n)
}

impl Subspace2 {
    /// Gram-Schmidt on two independent vectors.
    pub fn from_span(u: [f64; 4], v: [f64; 4]) -> Self {
        let b1 = unit4(u);
        let k = dot4(&b1, &v);
        let b2 = unit4(std::array::from_fn(|i| v[i] - k * b1[i]));
        Subspace2 { b1, b2 }
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &[f64; 4]) -> [f64; 4] {
        let (p, q) = (dot4(&self.b1, x), dot4(&self.b2, x));
        std::array::from_fn(|i| p * self.b1[i] + q * self.b2[i])
    }
}

/// The real 2-plane of R⁴ underlying the complex line through 0 with slope `d`.
pub fn tau_hat(d: &Direction) -> Subspace2 {
    match d {
        Direction::Infinity => Subspace2 { b1: [0.0, 0.0, 1.0, 0.0], b2: [0.0, 0.0, 0.0, 1.0] },
        Direction::Finite(a) => {
            // (1, a) and (i, i a) are already orthogonal with equal norms
            let (re, im) = a.to_f64_pair();
            Subspace2 { b1: unit4([1.0, 0.0, re, im]), b2: unit4([0.0, 1.0, -im, re]) }
        }
    }
}

/// Singular values (descending) of the 2×2 matrix `[[a, b], [c, d]]`.
fn singular_values_2x2(a: f64, b: f64, c: f64, d: f64) -> (f64, f64) {
    let p = ((a + d).powi(2) + (c - b).powi(2)).sqrt();
    let q = ((a - d).powi(2) + (b + c).powi(2)).sqrt();
    let s_max = (p + q) / 2.0;
    // the small one via the determinant keeps relative accuracy
    let s_min = if s_max > 0.0 { (a * d - b * c).abs() / s_max } else { 0.0 };
    (s_max, s_min)
}

/// Singular values (descending) of a 4×2 matrix given by its columns.
fn singular_values_4x2(c1: &[f64; 4], c2: &[f64; 4]) -> (f64, f64) {
    // R factor of a QR decomposition, then the 2×2 formula
    let r11 = dot4(c1, c1).sqrt();
    if r11 == 0.0 {
        return (dot4(c2, c2).sqrt(), 0.0);
    }
    let q1 = c1.map(|x| x / r11);
    let r12 = dot4(&q1, c2);
    let rest: [f64; 4] = std::array::from_fn(|i| c2[i] - r12 * q1[i]);
    let r22 = dot4(&rest, &rest).sqrt();
    singular_values_2x2(r11, r12, 0.0, r22)
}

/// Principal angles (ascending, degrees) between two 2-subspaces.
pub fn principal_angles_deg(s1: &Subspace2, s2: &Subspace2) -> (f64, f64) {
    let (c_max, c_min) =
        singular_values_2x2(dot4(&s1.b1, &s2.b1), dot4(&s1.b1, &s2.b2), dot4(&s1.b2, &s2.b1), dot4(&s1.b2, &s2.b2));
    // sines from the residual of s1 after projecting onto s2
    let r1: [f64; 4] = {
        let p = s2.project(&s1.b1);
        std::array::from_fn(|i| s1.b1[i] - p[i])
    };
    let r2: [f64; 4] = {
        let p = s2.project(&s1.b2);
        std::array::from_fn(|i| s1.b2[i] - p[i])
    };
    let (s_max, s_min) = singular_values_4x2(&r1, &r2);
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    let t1 = clamp(s_min).atan2(clamp(c_max)).to_degrees();
    let t2 = clamp(s_max).atan2(clamp(c_min)).to_degrees();
    (t1, t2)
}

/// Sum of the two principal angles, in degrees.
pub fn gr_dist_deg(s1: &Subspace2, s2: &Subspace2) -> f64 {
    let (t1, t2) = principal_angles_deg(s1, s2);
    t1 + t2
}

fn face_point(face: usize, u: f64, v: f64) -> SpherePoint {
    let (x, y) = (u.tan(), v.tan());
    let p = match face {
        0 => [1.0, x, y],
        1 => [-1.0, -x, y],
        2 => [x, 1.0, -y],
        3 => [x, -1.0, y],
        4 => [x, y, 1.0],
        _ => [-x, y, -1.0],
    };
    SpherePoint::from_vec(p)
}

/// Largest central angle from a cell center to one of its corners, for an
/// equal-angle cube map with `m × m` cells per face. The worst cells sit on
/// the face diagonal and the boundary row, so only those are scanned.
fn cube_map_radius(m: usize) -> f64 {
    let h = std::f64::consts::FRAC_PI_2 / m as f64;
    let cell = |i: usize, j: usize| {
        let (u0, v0) = (-std::f64::consts::FRAC_PI_4 + i as f64 * h, -std::f64::consts::FRAC_PI_4 + j as f64 * h);
        let c = face_point(4, u0 + h / 2.0, v0 + h / 2.0);
        [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
            .iter()
            .map(|&(a, b)| c.dist_deg(&face_point(4, u0 + a * h, v0 + b * h)))
            .fold(0.0, f64::max)
    };
    (0..m).map(|i| cell(i, i).max(cell(i, 0))).fold(0.0, f64::max)
}

#[doc(hidden)]
pub fn cube_map_radius_full_scan(m: usize) -> f64 {
    let h = std::f64::consts::FRAC_PI_2 / m as f64;
    let mut worst: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let (u0, v0) = (-std::f64::consts::FRAC_PI_4 + i as f64 * h, -std::f64::consts::FRAC_PI_4 + j as f64 * h);
            let c = face_point(4, u0 + h / 2.0, v0 + h / 2.0);
            for (a, b) in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)] {
                worst = worst.max(c.dist_deg(&face_point(4, u0 + a * h, v0 + b * h)));
            }
        }
    }
    worst
}

fn cube_map_resolution(radius_deg: f64) -> usize {
    // radius shrinks monotonically in m
    let (mut lo, mut hi) = (1usize, 2usize);
    while cube_map_radius(hi) > radius_deg {
        lo = hi;
        hi *= 2;
    }
    if cube_map_radius(lo) <= radius_deg {
        return lo;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if cube_map_radius(mid) <= radius_deg {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Number of centers [`sphere_disk_cover`] would produce, without building
/// them.
pub fn sphere_disk_cover_size(delta_deg: f64) -> Result<usize> {
    check_delta(delta_deg)?;
    let r = delta_deg / 2.0;
    if r >= 180.0 {
        return Ok(1);
    }
    if r >= 90.0 {
        return Ok(2);
    }
    let m = cube_map_resolution(r);
    Ok(6 * m * m)
}

fn check_delta(delta_deg: f64) -> Result<()> {
    if delta_deg.is_nan() || delta_deg < 0.01 || !delta_deg.is_finite() {
        return Err(Error::InvalidParams(format!("disk diameter {delta_deg} below 0.01 degrees")));
    }
    Ok(())
}

/// Centers of closed caps of diameter `delta_deg` covering the sphere.
pub fn sphere_disk_cover(delta_deg: f64) -> Result<Vec<SpherePoint>> {
    check_delta(delta_deg)?;
    let r = delta_deg / 2.0;
    if r >= 180.0 {
        return Ok(vec![SpherePoint { v: [0.0, 0.0, 1.0] }]);
    }
    if r >= 90.0 {
        return Ok(vec![SpherePoint { v: [0.0, 0.0, 1.0] }, SpherePoint { v: [0.0, 0.0, -1.0] }]);
    }
    let m = cube_map_resolution(r);
    let h = std::f64::consts::FRAC_PI_2 / m as f64;
    let mut out = Vec::with_capacity(6 * m * m);
    for face in 0..6 {
        for i in 0..m {
            for j in 0..m {
                let u = -std::f64::consts::FRAC_PI_4 + (i as f64 + 0.5) * h;
                let v = -std::f64::consts::FRAC_PI_4 + (j as f64 + 0.5) * h;
                out.push(face_point(face, u, v));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn d(s: &str) -> Direction {
        s.parse().unwrap()
    }

    #[test]
    fn sphere_images() {
        assert_eq!(sphere_coords(&Direction::Infinity), [int(0), int(0), int(1)]);
        assert_eq!(sphere_coords(&d("0")), [int(0), int(0), int(0)]);
        assert_eq!(sphere_coords(&d("1")), [rat(1, 2), int(0), rat(1, 2)]);
        // the unit circle lands on the equator of the unit sphere
        assert_eq!(to_sphere(&d("3/5+4/5i")).v[2], 0.0);
    }

    #[test]
    fn distances() {
        assert!((dist_deg(&d("0"), &Direction::Infinity) - 180.0).abs() < 1e-9);
        assert_eq!(dist_deg(&d("2+i"), &d("2+i")), 0.0);
        assert!((dist_deg(&d("1"), &d("-1")) - 180.0).abs() < 1e-9);
        assert!((dist_deg(&d("1"), &d("i")) - 90.0).abs() < 1e-9);
    }

    #[test]
    fn orthogonality() {
        assert!(is_orthogonal(&d("0"), &Direction::Infinity));
        assert!(is_orthogonal(&d("1"), &d("-1")));
        assert!(!is_orthogonal(&d("i"), &d("i")));
        // the unconjugated product would say 2i·(1/2 i) = -1
        assert!(!is_orthogonal(&d("2i"), &d("1/2i")));
        assert!(is_orthogonal(&d("2i"), &d("-1/2i")));
    }

    #[test]
    fn mobius_examples() {
        let p = pi_lambda(&d("1"), &rat(1, 2)).unwrap();
        assert_eq!(apply_mobius(&p, &d("0")), d("1/2"));
        assert_eq!(apply_mobius(&p, &d("1")), d("1"));
        assert_eq!(apply_mobius(&p, &d("-1")), d("-1"));
        let q = pi_lambda(&d("i"), &rat(1, 2)).unwrap();
        assert_eq!(apply_mobius(&q, &d("i")), d("i"));
        let rho = ComplexLinearMap::rho(&2.into()).unwrap();
        assert_eq!(apply_mobius(&rho, &d("4")), d("2"));
        assert_eq!(apply_mobius(&ComplexLinearMap::invert_about(&d_g("1")), &Direction::Infinity), d("0"));
        assert!(pi_lambda(&d("1"), &int(1)).is_err());
        assert!(pi_lambda(&d("2"), &rat(1, 3)).is_err());
    }

    fn d_g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn lines_and_directions_transform_together() {
        let m = ComplexLinearMap::new(d_g("1"), d_g("2i"), d_g("-1"), d_g("3")).unwrap();
        let l = ComplexLine::slanted(d_g("1+i"), d_g("2"));
        assert_eq!(m.apply_line(&l).direction(), m.apply_direction(&l.direction()));
        let v = ComplexLine::vertical(d_g("5"));
        assert_eq!(m.apply_line(&v).direction(), m.apply_direction(&Direction::Infinity));
        assert_eq!(m.compose(&m.inverse()), ComplexLinearMap::identity());
    }

    #[test]
    fn gamma_arguments() {
        assert!((gamma_arg(&d("2i")).unwrap() - 90.0).abs() < 1e-12);
        assert_eq!(gamma_arg(&d("-5")).unwrap(), 180.0);
        assert!((gamma_arg(&d("1+i")).unwrap() - 45.0).abs() < 1e-12);
        assert!(gamma_arg(&d("0")).is_err());
        assert!(gamma_arg(&Direction::Infinity).is_err());
    }

    #[test]
    fn grassmann_distances() {
        let a = tau_hat(&d("0"));
        let b = tau_hat(&Direction::Infinity);
        assert!((gr_dist_deg(&a, &b) - 180.0).abs() < 1e-9);
        let s = tau_hat(&d("2-3i"));
        assert!(gr_dist_deg(&s, &s) < 1e-9);
        // complex lines are isoclinic: both principal angles agree
        let (t1, t2) = principal_angles_deg(&tau_hat(&d("1")), &tau_hat(&d("i")));
        assert!((t1 - t2).abs() < 1e-9);
    }

    #[test]
    fn diagonal_scan_matches_full_scan() {
        for m in 1..30 {
            assert!((cube_map_radius(m) - cube_map_radius_full_scan(m)).abs() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn disk_cover_counts() {
        assert!(sphere_disk_cover(360.0).unwrap().len() <= 2);
        assert!(sphere_disk_cover(90.0).unwrap().len() <= 50);
        assert!(sphere_disk_cover_size(1.0).unwrap() < 200_000);
        assert!(sphere_disk_cover(0.001).is_err());
    }
}
