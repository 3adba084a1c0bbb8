//! Exact incidence geometry for points and complex lines in C².
//!
//! The crate is organised by subsystem:
//!
//! - [`exact`]: Gaussian-rational points and complex lines, their embedding
//!   into R⁴ as 2-flats, and exact flat intersection.
//! - [`direction`]: the direction sphere of complex lines, its metric,
//!   Möbius actions, and the embedding into Gr(2,2).
//! - [`separation`]: hemisphere splitting, point classification, N(a) and
//!   Γ(A) tests, λ-balancing, and the refinement and orthogonalisation steps.
//! - [`incidence`]: incidence counting, rich lines, bound checks, and the
//!   sum-product / similar-copy counters.
//! - [`covering`]: the hierarchical cube covering algorithm, side cubes,
//!   complement covers, shift graphs, and a guarantee verifier.
//! - [`combination`]: region construction over a cover so that crossings of
//!   two near-orthogonal bundles of 2-flats land inside the regions.
//! - [`io`]: text formats and seeded generators.

pub mod combination;
pub mod covering;
pub mod direction;
mod error;
pub mod exact;
pub mod incidence;
pub mod io;
pub mod separation;

pub use error::{Error, Result};
pub use exact::{ComplexLine, ComplexPoint, Flat2, FlatIntersection, GaussianRational, RVector4, Rational};
