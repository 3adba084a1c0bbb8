//! Exact rational geometry in C² and R⁴.

mod gaussian;
mod plane;
mod rational;
mod real4;

pub use gaussian::GaussianRational;
pub use plane::{incident, intersect_lines, line_through, ComplexLine, ComplexPoint};
pub use rational::{int, parse_rational, rat, rational_from_f64, rational_to_f64, Rational};
pub use real4::{embed_flat, embed_r4, flat_intersect, Flat2, FlatIntersection, RVector4};
