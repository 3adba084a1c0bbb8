use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{bott, build_shift_graph, check_non_overlap, CoverResult, FreeCube};
use crate::exact::Rational;
use crate::Error;

/// The cube-count guarantee: `|K| > n / (32 d (4κ+1)^{2d} r)`, promised
/// only when `4 (4κ+1)^{2d} r ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeCheck {
    pub cubes: usize,
    pub bound: Rational,
    pub precondition_met: bool,
}

impl SizeCheck {
    pub fn new(cubes: usize, n: usize, d: usize, kappa: u32, r: usize) -> Self {
        let base = BigInt::from(4 * kappa as i64 + 1).pow(2 * d as u32);
        let bound = Rational::new(BigInt::from(n), BigInt::from(32 * d) * &base * BigInt::from(r));
        let precondition_met = BigInt::from(4) * base * BigInt::from(r) <= BigInt::from(n);
        SizeCheck { cubes, bound, precondition_met }
    }

    /// `None` when the precondition fails.
    pub fn pass(&self) -> Option<bool> {
        self.precondition_met.then(|| Rational::from_integer(self.cubes.into()) > self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub overlap: Option<(usize, usize)>,
    /// Smallest number of points in a bottom side-cube, and the cubes
    /// holding fewer than `r`.
    pub min_bott: Option<usize>,
    pub short_botts: Vec<usize>,
    pub size: SizeCheck,
    pub edges: usize,
    pub max_in_degree: usize,
}

impl VerificationReport {
    pub fn non_overlap_ok(&self) -> bool {
        self.overlap.is_none()
    }

    pub fn bott_ok(&self) -> bool {
        self.short_botts.is_empty()
    }

    pub fn graph_ok(&self) -> bool {
        self.overlap.is_none() && self.edges <= self.size.cubes && self.max_in_degree <= 1
    }

    pub fn passed(&self) -> bool {
        self.non_overlap_ok() && self.bott_ok() && self.size.pass() != Some(false) && self.graph_ok()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        match self.overlap {
            None => writeln!(f, "non-overlap: pass")?,
            Some((a, b)) => writeln!(f, "non-overlap: FAIL (cubes {a} and {b})")?,
        }
        writeln!(
            f,
            "bott counts: {} (min {})",
            verdict(self.bott_ok()),
            self.min_bott.map_or("-".into(), |m| m.to_string())
        )?;
        let size = match self.size.pass() {
            None => "precondition unmet".to_string(),
            Some(ok) => verdict(ok).to_string(),
        };
        writeln!(f, "size: {size} (|K| = {}, bound {})", self.size.cubes, self.size.bound)?;
        write!(
            f,
            "shift graph: {} (edges {}, max in-degree {})",
            verdict(self.graph_ok()),
            self.edges,
            self.max_in_degree
        )
    }
}

/// Checks a cube family against points given in the same frame.
pub fn verify_family(points: &[Vec<Rational>], cubes: &[FreeCube], kappa: u32, r: usize) -> VerificationReport {
    let d = cubes.first().map_or_else(|| points.first().map_or(1, Vec::len), FreeCube::dim);
    let overlap = match check_non_overlap(cubes) {
        Err(Error::OverlappingInput(a, b)) => Some((a, b)),
        _ => None,
    };
    let mut sorted: Vec<&Vec<Rational>> = points.iter().collect();
    sorted.sort_by(|a, b| a[0].cmp(&b[0]));
    let counts: Vec<usize> = cubes
        .par_iter()
        .map(|q| {
            let b = bott(q, kappa).to_box();
            let start = sorted.partition_point(|p| p[0] < b.lo[0]);
            sorted[start..].iter().take_while(|p| p[0] <= b.hi[0]).filter(|p| b.contains(p)).count()
        })
        .collect();
    let short_botts = counts.iter().enumerate().filter(|(_, c)| **c < r).map(|(i, _)| i).collect();
    let (edges, max_in_degree) = match overlap {
        None => {
            let g = build_shift_graph(cubes, kappa).expect("cubes checked for overlap");
            (g.edges.len(), g.max_in_degree())
        }
        Some(_) => (0, 0),
    };
    VerificationReport {
        overlap,
        min_bott: counts.iter().copied().min(),
        short_botts,
        size: SizeCheck::new(cubes.len(), points.len(), d, kappa, r),
        edges,
        max_in_degree,
    }
}

/// Checks a covering result against the original (unnormalized) points.
pub fn verify_cover(points: &[Vec<Rational>], result: &CoverResult, kappa: u32, r: usize) -> VerificationReport {
    let framed: Vec<Vec<Rational>> = points.par_iter().map(|p| result.to_cover_frame(p)).collect();
    let mut report = verify_family(&framed, &result.cubes, kappa, r);
    report.size = SizeCheck::new(result.cubes.len(), points.len(), result.d, kappa, r);
    report
}
