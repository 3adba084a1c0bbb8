use rayon::prelude::*;

use super::boxes::survives;
use super::{bott, FreeCube};
use crate::exact::{int, Rational};
use crate::{Error, Result};

/// Directed graph on a cube family: `(a, b)` means `b` lies just below the
/// bottom side-cube of `a`, reachable by a free vertical segment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl ShiftGraph {
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for &(_, b) in &self.edges {
            deg[b] += 1;
        }
        deg
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes];
        for &(a, _) in &self.edges {
            deg[a] += 1;
        }
        deg
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn successors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.0 == a).map(|e| e.1)
    }
}

/// First pair (in index order of the sweep) of cubes with overlapping
/// interiors.
pub fn check_non_overlap(cubes: &[FreeCube]) -> Result<()> {
    let mut order: Vec<usize> = (0..cubes.len()).collect();
    order.sort_by(|&a, &b| cubes[a].corner[0].cmp(&cubes[b].corner[0]).then(a.cmp(&b)));
    for (i, &a) in order.iter().enumerate() {
        let top = cubes[a].hi(0);
        let boxed = cubes[a].to_box();
        for &b in &order[i + 1..] {
            if cubes[b].corner[0] >= top {
                break;
            }
            if boxed.interiors_overlap(&cubes[b].to_box()) {
                return Err(Error::OverlappingInput(a.min(b), a.max(b)));
            }
        }
    }
    Ok(())
}

fn lateral_open_overlap(a: &FreeCube, b: &FreeCube) -> bool {
    (1..a.dim()).all(|k| a.corner[k] < b.hi(k) && b.corner[k] < a.hi(k))
}

/// Builds the shift graph of pairwise non-overlapping cubes.
pub fn build_shift_graph(cubes: &[FreeCube], kappa: u32) -> Result<ShiftGraph> {
    check_non_overlap(cubes)?;
    let tenth = int(10);
    let mut by_top: Vec<(Rational, usize)> = cubes.iter().enumerate().map(|(i, c)| (c.hi(0), i)).collect();
    by_top.sort();
    // indices with top in (lo, hi]
    let tops_in = |lo: &Rational, hi: &Rational| {
        let start = by_top.partition_point(|(t, _)| t <= lo);
        let end = by_top.partition_point(|(t, _)| t <= hi);
        &by_top[start..end]
    };

    let mut edges: Vec<(usize, usize)> = (0..cubes.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let q1 = &cubes[a];
            let b = bott(q1, kappa);
            let b0 = &b.corner[0];
            let sliver_lo = b0 - &b.side / &tenth;
            let mut out = Vec::new();
            for (top2, c) in tops_in(&sliver_lo, b0) {
                let c = *c;
                if c == a {
                    continue;
                }
                let q2 = &cubes[c];
                let drop = &q2.side / &tenth;
                let cond1 = &q2.corner[0] - &drop < *b0 && top2 - &drop > sliver_lo && lateral_open_overlap(&b, q2);
                if !cond1 {
                    continue;
                }
                let corridor = b.to_box().intersect(&q2.to_box()).project_out(0);
                let holes: Vec<_> = tops_in(top2, b0)
                    .iter()
                    .map(|(_, k)| *k)
                    .filter(|&k| k != a && k != c && cubes[k].corner[0] < *b0)
                    .map(|k| cubes[k].to_box().project_out(0))
                    .filter(|h| h.interiors_overlap(&corridor))
                    .collect();
                if survives(&corridor, &holes) {
                    out.push((a, c));
                }
            }
            out
        })
        .collect();
    edges.sort();
    Ok(ShiftGraph { nodes: cubes.len(), edges })
}
