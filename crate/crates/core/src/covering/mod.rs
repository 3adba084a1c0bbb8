//! Hierarchical cube covering of point sets in R^d.
//!
//! [`run_covering`] builds non-overlapping cubes, each with at least `r`
//! points in its bottom side-cube, following a phase-by-phase labelling of
//! a nested lattice of grid cubes. [`build_shift_graph`] and
//! [`verify_cover`] check the resulting family.

mod algorithm;
mod boxes;
mod complement;
mod normalize;
mod shift_graph;
mod verify;

use std::fmt;

use num_traits::Zero;

use crate::exact::{int, Rational};

pub use algorithm::{run_covering, CoverResult, CoverStats, CubeState, PhaseStats, Selected};
pub use boxes::AxisBox;
pub use complement::complement_cover;
pub use normalize::{normalize_points, Normalization};
pub use shift_graph::{build_shift_graph, check_non_overlap, ShiftGraph};
pub use verify::{verify_cover, verify_family, SizeCheck, VerificationReport};

/// A signed coordinate axis, such as `−e₁` (axis 0, negative).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedAxis {
    pub axis: usize,
    pub positive: bool,
}

impl SignedAxis {
    pub const fn neg(axis: usize) -> Self {
        SignedAxis { axis, positive: false }
    }

    pub const fn pos(axis: usize) -> Self {
        SignedAxis { axis, positive: true }
    }

    /// The downward direction `−e₁`.
    pub const BOTTOM: SignedAxis = SignedAxis::neg(0);
}

impl fmt::Display for SignedAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}e{}", if self.positive { '+' } else { '-' }, self.axis + 1)
    }
}

/// An axis-aligned cube with integer corner and side, in lattice units.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridCube {
    pub lo: Vec<i128>,
    pub side: i128,
}

impl GridCube {
    pub fn new(lo: Vec<i128>, side: i128) -> Self {
        GridCube { lo, side }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn hi(&self, k: usize) -> i128 {
        self.lo[k] + self.side
    }

    /// Whether the unit cell with lower corner `cell` lies inside.
    pub fn contains_cell(&self, cell: &[i128]) -> bool {
        cell.iter().zip(&self.lo).all(|(c, l)| *l <= *c && *c < *l + self.side)
    }

    pub fn contains_cube(&self, o: &GridCube) -> bool {
        (0..self.dim()).all(|k| self.lo[k] <= o.lo[k] && o.hi(k) <= self.hi(k))
    }

    pub fn interiors_overlap(&self, o: &GridCube) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < o.hi(k) && o.lo[k] < self.hi(k))
    }

    pub fn to_free(&self) -> FreeCube {
        FreeCube {
            corner: self.lo.iter().map(|&x| Rational::from_integer(x.into())).collect(),
            side: Rational::from_integer(self.side.into()),
        }
    }
}

/// An axis-aligned cube with rational corner and positive side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeCube {
    pub corner: Vec<Rational>,
    pub side: Rational,
}

impl FreeCube {
    pub fn new(corner: Vec<Rational>, side: Rational) -> Self {
        debug_assert!(side > Rational::zero());
        FreeCube { corner, side }
    }

    pub fn dim(&self) -> usize {
        self.corner.len()
    }

    pub fn hi(&self, k: usize) -> Rational {
        &self.corner[k] + &self.side
    }

    pub fn to_box(&self) -> AxisBox {
        AxisBox::new(self.corner.clone(), (0..self.dim()).map(|k| self.hi(k)).collect())
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.to_box().contains(p)
    }
}

/// The side-cube of `q` on the face in direction `orientation`: the image of
/// `q` under scaling by `1/(2κ+1)` about that face's center.
pub fn side_cube(q: &FreeCube, orientation: SignedAxis, kappa: u32) -> FreeCube {
    let ratio = int(2 * kappa as i64 + 1);
    let half = &q.side / int(2);
    let center: Vec<Rational> = (0..q.dim())
        .map(|k| {
            if k == orientation.axis {
                if orientation.positive {
                    q.hi(k)
                } else {
                    q.corner[k].clone()
                }
            } else {
                &q.corner[k] + &half
            }
        })
        .collect();
    let corner = q.corner.iter().zip(&center).map(|(c, p)| p + (c - p) / &ratio).collect();
    FreeCube::new(corner, &q.side / ratio)
}

/// The bottom side-cube.
pub fn bott(q: &FreeCube, kappa: u32) -> FreeCube {
    side_cube(q, SignedAxis::BOTTOM, kappa)
}

/// `q` translated down by a tenth of its side along the first axis.
pub fn shift_cube(q: &FreeCube) -> FreeCube {
    let mut corner = q.corner.clone();
    corner[0] = &corner[0] - &q.side / int(10);
    FreeCube::new(corner, q.side.clone())
}

/// Integer version of [`side_cube`] for cubes whose side is a multiple of
/// `2κ+1`.
pub(crate) fn grid_side_cube(q: &GridCube, o: SignedAxis, kappa: u32) -> GridCube {
    let m = 2 * kappa as i128 + 1;
    let g = q.side / m;
    let lo = (0..q.dim())
        .map(|k| {
            if k == o.axis {
                if o.positive {
                    q.hi(k) - g
                } else {
                    q.lo[k]
                }
            } else {
                q.lo[k] + kappa as i128 * g
            }
        })
        .collect();
    GridCube::new(lo, g)
}

/// The cube having `g` as its side-cube in direction `o`.
pub(crate) fn grid_cube_with_side(g: &GridCube, o: SignedAxis, kappa: u32) -> GridCube {
    let k = kappa as i128;
    let lo = (0..g.dim())
        .map(|a| {
            if a == o.axis {
                if o.positive {
                    g.hi(a) - (2 * k + 1) * g.side
                } else {
                    g.lo[a]
                }
            } else {
                g.lo[a] - k * g.side
            }
        })
        .collect();
    GridCube::new(lo, (2 * k + 1) * g.side)
}

/// A signed permutation of coordinates: output coordinate `k` is
/// `±x[perm[k]]`, negated when `flip[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisMap {
    pub perm: Vec<usize>,
    pub flip: Vec<bool>,
}

impl AxisMap {
    pub fn identity(d: usize) -> Self {
        AxisMap { perm: (0..d).collect(), flip: vec![false; d] }
    }

    /// A map sending direction `o` to `−e₁`.
    pub fn sending_to_bottom(d: usize, o: SignedAxis) -> Self {
        let mut perm: Vec<usize> = (0..d).collect();
        perm.swap(0, o.axis);
        let mut flip = vec![false; d];
        flip[0] = o.positive;
        AxisMap { perm, flip }
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.perm.iter().zip(&self.flip).map(|(&p, &f)| if f { -&x[p] } else { x[p].clone() }).collect()
    }

    pub fn invert(&self, y: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); y.len()];
        for (k, (&p, &f)) in self.perm.iter().zip(&self.flip).enumerate() {
            x[p] = if f { -&y[k] } else { y[k].clone() };
        }
        x
    }

    pub fn apply_axis(&self, o: SignedAxis) -> SignedAxis {
        let k = self.perm.iter().position(|&p| p == o.axis).expect("permutation");
        SignedAxis { axis: k, positive: o.positive != self.flip[k] }
    }

    pub fn apply_cube(&self, q: &FreeCube) -> FreeCube {
        let lo = self.apply(&q.corner);
        let corner = lo.into_iter().zip(&self.flip).map(|(c, &f)| if f { c - &q.side } else { c }).collect();
        FreeCube::new(corner, q.side.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn unit(d: usize) -> FreeCube {
        FreeCube::new(vec![int(0); d], int(1))
    }

    #[test]
    fn side_and_shift_cubes() {
        let b = bott(&unit(2), 1);
        assert_eq!(b, FreeCube::new(vec![int(0), rat(1, 3)], rat(1, 3)));
        assert_eq!(shift_cube(&unit(3)).corner, vec![rat(-1, 10), int(0), int(0)]);
        assert_eq!(bott(&b, 1).side, rat(1, 9));
        let top = side_cube(&unit(2), SignedAxis::pos(1), 2);
        assert_eq!(top, FreeCube::new(vec![rat(2, 5), rat(4, 5)], rat(1, 5)));
    }

    #[test]
    fn grid_side_cubes_round_trip() {
        let g = GridCube::new(vec![4, -2, 7], 3);
        for axis in 0..3 {
            for positive in [false, true] {
                let o = SignedAxis { axis, positive };
                let q = grid_cube_with_side(&g, o, 2);
                assert_eq!(grid_side_cube(&q, o, 2), g);
                assert_eq!(side_cube(&q.to_free(), o, 2), g.to_free());
            }
        }
    }

    #[test]
    fn axis_maps() {
        for axis in 0..3 {
            for positive in [false, true] {
                let o = SignedAxis { axis, positive };
                let m = AxisMap::sending_to_bottom(3, o);
                assert_eq!(m.apply_axis(o), SignedAxis::BOTTOM);
                let x = vec![int(1), int(2), int(3)];
                assert_eq!(m.invert(&m.apply(&x)), x);
                let q = FreeCube::new(vec![int(1), int(2), int(3)], int(3));
                let s = side_cube(&q, o, 1);
                assert_eq!(m.apply_cube(&s), bott(&m.apply_cube(&q), 1));
            }
        }
    }
}
