use std::fmt;

use super::gaussian::GaussianRational;
use crate::direction::Direction;
use crate::{Error, Result};

/// A point (z1, z2) of C².
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexPoint {
    pub z1: GaussianRational,
    pub z2: GaussianRational,
}

impl ComplexPoint {
    pub fn new(z1: GaussianRational, z2: GaussianRational) -> Self {
        Self { z1, z2 }
    }

    /// Point with real coordinates.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(x.into(), y.into())
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.z1, self.z2)
    }
}

/// A complex line of C²: either `y = a x + b` or `x = c`.
///
/// The two variants never describe the same line, so derived equality is
/// equality of point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexLine {
    Slanted { a: GaussianRational, b: GaussianRational },
    Vertical { c: GaussianRational },
}

impl ComplexLine {
    pub fn slanted(a: GaussianRational, b: GaussianRational) -> Self {
        ComplexLine::Slanted { a, b }
    }

    pub fn vertical(c: GaussianRational) -> Self {
        ComplexLine::Vertical { c }
    }

    pub fn direction(&self) -> Direction {
        match self {
            ComplexLine::Slanted { a, .. } => Direction::Finite(a.clone()),
            ComplexLine::Vertical { .. } => Direction::Infinity,
        }
    }

    pub fn incident(&self, p: &ComplexPoint) -> bool {
        incident(p, self)
    }
}

impl fmt::Display for ComplexLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexLine::Slanted { a, b } => write!(f, "y = ({a})x + ({b})"),
            ComplexLine::Vertical { c } => write!(f, "x = {c}"),
        }
    }
}

pub fn incident(p: &ComplexPoint, l: &ComplexLine) -> bool {
    match l {
        ComplexLine::Slanted { a, b } => p.z2 == a * &p.z1 + b,
        ComplexLine::Vertical { c } => &p.z1 == c,
    }
}

/// The common point of two distinct lines, or `None` when they are parallel.
pub fn intersect_lines(l1: &ComplexLine, l2: &ComplexLine) -> Result<Option<ComplexPoint>> {
    use ComplexLine::*;
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    Ok(match (l1, l2) {
        (Vertical { .. }, Vertical { .. }) => None,
        (Vertical { c }, Slanted { a, b }) | (Slanted { a, b }, Vertical { c }) => {
            Some(ComplexPoint::new(c.clone(), a * c + b))
        }
        (Slanted { a: a1, b: b1 }, Slanted { a: a2, b: b2 }) => {
            if a1 == a2 {
                None
            } else {
                let x = (b2 - b1) / (a1 - a2);
                let y = a1 * &x + b1;
                Some(ComplexPoint::new(x, y))
            }
        }
    })
}

pub fn line_through(p: &ComplexPoint, q: &ComplexPoint) -> Result<ComplexLine> {
    if p == q {
        return Err(Error::EqualPoints);
    }
    if p.z1 == q.z1 {
        return Ok(ComplexLine::vertical(p.z1.clone()));
    }
    let a = (&q.z2 - &p.z2) / (&q.z1 - &p.z1);
    let b = &p.z2 - &(&a * &p.z1);
    Ok(ComplexLine::slanted(a, b))
}
