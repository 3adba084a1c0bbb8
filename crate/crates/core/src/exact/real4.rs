use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::plane::{ComplexLine, ComplexPoint};
use super::rational::{int, rational_to_f64, Rational};
use crate::{Error, Result};

/// A vector of R⁴ with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector4(pub [Rational; 4]);

impl RVector4 {
    pub fn new(x1: Rational, x2: Rational, x3: Rational, x4: Rational) -> Self {
        RVector4([x1, x2, x3, x4])
    }

    pub fn from_ints(v: [i64; 4]) -> Self {
        RVector4(v.map(int))
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn dot(&self, o: &RVector4) -> Rational {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sqr(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, k: &Rational) -> RVector4 {
        RVector4(std::array::from_fn(|i| &self.0[i] * k))
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| rational_to_f64(&self.0[i]))
    }
}

impl Add for &RVector4 {
    type Output = RVector4;
    fn add(self, o: &RVector4) -> RVector4 {
        RVector4(std::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &RVector4 {
    type Output = RVector4;
    fn sub(self, o: &RVector4) -> RVector4 {
        RVector4(std::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

impl Neg for &RVector4 {
    type Output = RVector4;
    fn neg(self) -> RVector4 {
        RVector4(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Display for RVector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// An affine 2-flat `base + s·dir1 + t·dir2` in R⁴.
///
/// Equality compares the point sets, not the chosen parametrisation.
#[derive(Clone, Debug)]
pub struct Flat2 {
    base: RVector4,
    dir1: RVector4,
    dir2: RVector4,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatIntersection {
    Point(RVector4),
    Empty,
    Line,
    Coincide,
}

impl Flat2 {
    pub fn new(base: RVector4, dir1: RVector4, dir2: RVector4) -> Result<Self> {
        if rank(vec![dir1.0.to_vec(), dir2.0.to_vec()]) < 2 {
            return Err(Error::DegenerateFlat);
        }
        Ok(Self { base, dir1, dir2 })
    }

    pub fn base(&self) -> &RVector4 {
        &self.base
    }

    pub fn dirs(&self) -> (&RVector4, &RVector4) {
        (&self.dir1, &self.dir2)
    }

    pub fn contains(&self, p: &RVector4) -> bool {
        let w = p - &self.base;
        rank(vec![self.dir1.0.to_vec(), self.dir2.0.to_vec(), w.0.to_vec()]) == 2
    }

    /// Same direction space, ignoring the base point.
    pub fn is_parallel(&self, o: &Flat2) -> bool {
        let rows = vec![self.dir1.0.to_vec(), self.dir2.0.to_vec(), o.dir1.0.to_vec(), o.dir2.0.to_vec()];
        rank(rows) == 2
    }

    /// The point at parameters (s, t).
    pub fn at(&self, s: &Rational, t: &Rational) -> RVector4 {
        &(&self.base + &self.dir1.scale(s)) + &self.dir2.scale(t)
    }
}

impl PartialEq for Flat2 {
    fn eq(&self, o: &Flat2) -> bool {
        self.is_parallel(o) && self.contains(&o.base)
    }
}

impl Eq for Flat2 {}

/// τ: (z1, z2) ↦ (Re z1, Im z1, Re z2, Im z2).
pub fn embed_r4(p: &ComplexPoint) -> RVector4 {
    RVector4::new(p.z1.re.clone(), p.z1.im.clone(), p.z2.re.clone(), p.z2.im.clone())
}

pub fn embed_flat(l: &ComplexLine) -> Flat2 {
    let (base, dir1, dir2) = match l {
        ComplexLine::Slanted { a, b } => (
            RVector4::new(int(0), int(0), b.re.clone(), b.im.clone()),
            // images of the complex directions (1, a) and (i, i·a)
            RVector4::new(int(1), int(0), a.re.clone(), a.im.clone()),
            RVector4::new(int(0), int(1), -&a.im, a.re.clone()),
        ),
        ComplexLine::Vertical { c } => (
            RVector4::new(c.re.clone(), c.im.clone(), int(0), int(0)),
            RVector4::from_ints([0, 0, 1, 0]),
            RVector4::from_ints([0, 0, 0, 1]),
        ),
    };
    Flat2 { base, dir1, dir2 }
}

/// Classifies `f1 ∩ f2` by solving `b1 + s d1 + t d2 = b2 + u e1 + v e2`.
pub fn flat_intersect(f1: &Flat2, f2: &Flat2) -> FlatIntersection {
    let rhs = &f2.base - &f1.base;
    let (n1, n2) = (-&f2.dir1, -&f2.dir2);
    let aug: Vec<Vec<Rational>> = (0..4)
        .map(|i| vec![f1.dir1.0[i].clone(), f1.dir2.0[i].clone(), n1.0[i].clone(), n2.0[i].clone(), rhs.0[i].clone()])
        .collect();
    let (red, pivots) = row_reduce(aug, 4);
    if red.iter().any(|row| row[..4].iter().all(Zero::is_zero) && !row[4].is_zero()) {
        return FlatIntersection::Empty;
    }
    match pivots.len() {
        4 => {
            // reduced row echelon with identity on the left
            let (s, t) = (&red[0][4], &red[1][4]);
            FlatIntersection::Point(f1.at(s, t))
        }
        3 => FlatIntersection::Line,
        _ => FlatIntersection::Coincide,
    }
}

/// Gauss-Jordan elimination over the first `ncols` columns.
/// Returns the reduced rows and pivot columns.
fn row_reduce(mut m: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let k = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&k * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

fn rank(rows: Vec<Vec<Rational>>) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    row_reduce(rows, n).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{intersect_lines, GaussianRational};

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn embedding_reads_coordinates() {
        let p = ComplexPoint::new(g("1+2i"), g("3"));
        assert_eq!(embed_r4(&p), RVector4::from_ints([1, 2, 3, 0]));
    }

    #[test]
    fn diagonal_flat_from_two_points() {
        let l = ComplexLine::slanted(g("1"), g("0"));
        let f = embed_flat(&l);
        // independent construction: the origin plus differences of points on l
        let o = embed_r4(&ComplexPoint::new(g("0"), g("0")));
        let p = embed_r4(&ComplexPoint::new(g("1"), g("1")));
        let q = embed_r4(&ComplexPoint::new(g("i"), g("i")));
        let other = Flat2::new(o.clone(), &p - &o, &q - &o).unwrap();
        assert_eq!(f, other);
        assert!(f.contains(&RVector4::from_ints([1, 0, 1, 0])));
        assert!(f.contains(&RVector4::from_ints([0, 1, 0, 1])));
    }

    #[test]
    fn intersection_agrees_with_complex_solution() {
        let l1 = ComplexLine::slanted(g("i"), g("0"));
        let l2 = ComplexLine::slanted(g("0"), g("1"));
        let x = intersect_lines(&l1, &l2).unwrap().unwrap();
        assert_eq!(flat_intersect(&embed_flat(&l1), &embed_flat(&l2)), FlatIntersection::Point(embed_r4(&x)));
    }

    #[test]
    fn parallel_and_equal_flats() {
        let f = embed_flat(&ComplexLine::slanted(g("2-i"), g("1")));
        let t = embed_flat(&ComplexLine::slanted(g("2-i"), g("3")));
        assert_eq!(flat_intersect(&f, &t), FlatIntersection::Empty);
        assert_eq!(flat_intersect(&f, &f), FlatIntersection::Coincide);
    }

    #[test]
    fn real_flats_can_meet_in_a_line() {
        let e = |v| RVector4::from_ints(v);
        let f1 = Flat2::new(e([0, 0, 0, 0]), e([1, 0, 0, 0]), e([0, 1, 0, 0])).unwrap();
        let f2 = Flat2::new(e([0, 0, 0, 0]), e([1, 0, 0, 0]), e([0, 0, 1, 0])).unwrap();
        assert_eq!(flat_intersect(&f1, &f2), FlatIntersection::Line);
        let f3 = Flat2::new(e([0, 0, 0, 1]), e([1, 0, 0, 0]), e([0, 0, 1, 0])).unwrap();
        assert_eq!(flat_intersect(&f1, &f3), FlatIntersection::Empty);
    }

    #[test]
    fn dependent_directions_rejected() {
        let e = |v| RVector4::from_ints(v);
        assert_eq!(Flat2::new(e([0, 0, 0, 0]), e([1, 2, 0, 0]), e([2, 4, 0, 0])).unwrap_err(), Error::DegenerateFlat);
    }
}
