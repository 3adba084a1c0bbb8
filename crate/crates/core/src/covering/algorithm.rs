use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{
    complement_cover, grid_cube_with_side, grid_side_cube, normalize_points, AxisMap, FreeCube, GridCube,
    Normalization, SignedAxis,
};
use crate::exact::Rational;
use crate::{Error, Result};

/// Label of a grid cube at the end of a phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubeState {
    /// Not special and holds no special cube.
    A1,
    /// Green and yellow.
    A2,
    /// Yellow, holding one green cube and one maximal blue cube.
    A3,
    /// Holding exactly one maximal blue cube.
    A4,
    /// Blue, holding one selected cube.
    A5,
    /// Blue, holding at least two maximal blue cubes.
    A6,
}

impl CubeState {
    fn slot(self) -> usize {
        self as usize
    }
}

/// A selected cube together with the green cube sitting on its face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selected {
    pub cube: GridCube,
    pub orientation: SignedAxis,
    pub green: GridCube,
    pub phase: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseStats {
    pub level: u32,
    pub side: i128,
    pub processed: usize,
    /// Number of processed cubes ending in each state, A1 first.
    pub states: [usize; 6],
    pub yellow: usize,
    pub central_yellow: usize,
    pub deleted: usize,
    pub selected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverStats {
    pub phases: Vec<PhaseStats>,
    /// Selected, blue and green cube counts.
    pub s: usize,
    pub b: usize,
    pub g: usize,
    /// Cubes whose live point count broke the bound of their state.
    pub bound_violations: usize,
    /// Steps where no admissible cube could be placed.
    pub anomalies: usize,
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub d: usize,
    pub kappa: u32,
    pub r: usize,
    pub n: usize,
    /// The selected cubes of the most common orientation, in the cover
    /// frame, where that orientation is `−e₁`.
    pub cubes: Vec<FreeCube>,
    pub orientation: SignedAxis,
    /// Every selected cube, in the normalized frame.
    pub selected: Vec<Selected>,
    pub normalization: Normalization,
    pub axis_map: AxisMap,
    pub stats: CoverStats,
}

impl CoverResult {
    /// Maps an input point to the cover frame.
    pub fn to_cover_frame(&self, p: &[Rational]) -> Vec<Rational> {
        self.axis_map.apply(&self.normalization.apply(p))
    }

    pub fn from_cover_frame(&self, q: &[Rational]) -> Vec<Rational> {
        self.normalization.invert(&self.axis_map.invert(q))
    }
}

#[derive(Clone, Debug)]
struct Info {
    cube: GridCube,
    state: CubeState,
    green: Option<GridCube>,
    blue: Option<GridCube>,
}

struct Lattice {
    origin: Vec<i128>,
    side: i128,
}

impl Lattice {
    fn index(&self, lo: &[i128]) -> Vec<i128> {
        lo.iter().zip(&self.origin).map(|(x, o)| (x - o).div_euclid(self.side)).collect()
    }

    fn cube(&self, index: &[i128]) -> Result<GridCube> {
        let lo = index
            .iter()
            .zip(&self.origin)
            .map(|(k, o)| k.checked_mul(self.side).and_then(|x| x.checked_add(*o)).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        Ok(GridCube::new(lo, self.side))
    }
}

fn candidates(d: usize) -> impl Iterator<Item = SignedAxis> {
    (0..d).flat_map(|axis| [SignedAxis::neg(axis), SignedAxis::pos(axis)])
}

fn clearance(q: &GridCube, inner: &GridCube) -> Option<i128> {
    (0..q.dim()).map(|k| (inner.lo[k] - q.lo[k]).min(q.hi(k) - inner.hi(k))).min().filter(|c| *c >= 0)
}

/// Whether the facet of `g` in direction `o` separates `g` from `b`.
fn separates(g: &GridCube, o: SignedAxis, b: &GridCube) -> bool {
    if o.positive {
        b.lo[o.axis] >= g.hi(o.axis)
    } else {
        b.hi(o.axis) <= g.lo[o.axis]
    }
}

/// A cube inside `q` with side-cube `g`, lying beyond a facet of `g` that
/// separates it from `blue`; maximal clearance to the boundary of `q`.
fn place_selected(q: &GridCube, g: &GridCube, blue: Option<&GridCube>, kappa: u32) -> Option<(GridCube, SignedAxis)> {
    let mut best: Option<(i128, GridCube, SignedAxis)> = None;
    for o in candidates(q.dim()) {
        if blue.is_some_and(|b| !separates(g, o, b)) {
            continue;
        }
        let cube = grid_cube_with_side(g, o, kappa);
        if let Some(c) = clearance(q, &cube) {
            if best.as_ref().is_none_or(|(bc, _, _)| c > *bc) {
                best = Some((c, cube, o));
            }
        }
    }
    best.map(|(_, c, o)| (c, o))
}

fn to_cell(x: &Rational) -> Result<i128> {
    x.floor().to_integer().to_i128().ok_or(Error::CoordinateOverflow)
}

/// Runs the covering algorithm on `points` (any distinct points of R^d; they
/// are normalized first).
pub fn run_covering(points: &[Vec<Rational>], d: usize, kappa: u32, r: usize) -> Result<CoverResult> {
    if r < 1 || kappa < 1 || d < 1 {
        return Err(Error::InvalidParams(format!("need r, kappa, d >= 1 (got r={r}, kappa={kappa}, d={d})")));
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidParams(format!("points must have dimension {d}")));
    }
    let (normalized, normalization) = normalize_points(points)?;
    let normalization = if points.is_empty() { Normalization::identity(d) } else { normalization };
    let cells: Vec<Vec<i128>> =
        normalized.iter().map(|p| p.iter().map(to_cell).collect::<Result<_>>()).collect::<Result<_>>()?;

    let mu = (4 * kappa as i128 + 1).checked_pow(d as u32).ok_or(Error::CoordinateOverflow)?;
    let mu_d = (mu as u128).checked_pow(d as u32).ok_or(Error::CoordinateOverflow)?;
    let r128 = r as u128;
    let faces = 3u128.pow(d as u32) - 1;
    let half = (mu - 1) / 2;

    let mut live = vec![true; cells.len()];
    let mut lattice = Lattice { origin: vec![0; d], side: 1 };
    let mut level = 1u32;
    let mut prev: Vec<Info> = Vec::new();
    let mut selected: Vec<Selected> = Vec::new();
    let mut stats = CoverStats::default();

    loop {
        let mut groups: BTreeMap<Vec<i128>, Vec<usize>> = BTreeMap::new();
        for (p, cell) in cells.iter().enumerate() {
            if live[p] {
                groups.entry(lattice.index(cell)).or_default().push(p);
            }
        }
        let mut children: BTreeMap<Vec<i128>, Vec<Info>> = BTreeMap::new();
        for info in prev.drain(..) {
            children.entry(lattice.index(&info.cube.lo)).or_default().push(info);
        }
        let mut active: Vec<Vec<i128>> = groups.keys().chain(children.keys()).cloned().collect();
        active.sort();
        active.dedup();

        let mut phase = PhaseStats { level, side: lattice.side, processed: active.len(), ..Default::default() };
        let mut current: Vec<(Vec<i128>, Info)> = Vec::new();
        let mut new_blue = 0usize;
        let mut doomed: Vec<Vec<i128>> = Vec::new();
        let empty = Vec::new();

        for index in &active {
            let q = lattice.cube(index)?;
            let pts = groups.get(index).unwrap_or(&empty);
            let count = pts.len() as u128;
            let kids = children.remove(index).unwrap_or_default();
            let yellow: Vec<&Info> = kids.iter().filter(|k| matches!(k.state, CubeState::A2 | CubeState::A3)).collect();
            let blues: Vec<&Info> = kids.iter().filter(|k| k.state >= CubeState::A4).collect();
            debug_assert!(yellow.len() <= 1, "two yellow subcubes in one cube");
            let heavy = blues.len() + yellow.iter().filter(|y| y.state == CubeState::A3).count();

            let mut info = Info { cube: q.clone(), state: CubeState::A1, green: None, blue: None };
            if heavy >= 2 {
                info.state = CubeState::A6;
                info.blue = Some(q.clone());
                new_blue += 1;
            } else if let Some(y) = yellow.first() {
                // one central yellow subcube and at most one blue one
                let (g, b) = match y.state {
                    CubeState::A2 => (y.cube.clone(), blues.first().map(|b| b.cube.clone())),
                    _ => (y.green.clone().expect("A3 has a green cube"), y.blue.clone()),
                };
                info.blue = Some(q.clone());
                new_blue += 1;
                match place_selected(&q, &g, b.as_ref(), kappa) {
                    Some((qs, o)) => {
                        debug_assert_eq!(grid_side_cube(&qs, o, kappa), g);
                        if b.is_some() {
                            new_blue += 1;
                        }
                        selected.push(Selected { cube: qs, orientation: o, green: g, phase: level });
                        phase.selected += 1;
                    }
                    None => stats.anomalies += 1,
                }
                info.state = if b.is_none() { CubeState::A5 } else { CubeState::A6 };
            } else if let Some(b) = blues.first() {
                let b_max = b.blue.clone().expect("blue-bearing state");
                info.state = CubeState::A4;
                info.blue = Some(b_max.clone());
                if count >= faces * r128 {
                    let green = complement_cover(&q, &b_max)?
                        .into_iter()
                        .find(|c| pts.iter().filter(|&&p| c.contains_cell(&cells[p])).count() >= r);
                    match green {
                        Some(g) => {
                            info.state = CubeState::A3;
                            info.green = Some(g);
                        }
                        None => stats.anomalies += 1,
                    }
                }
            } else if count >= r128 {
                info.state = CubeState::A2;
                info.green = Some(q.clone());
            }

            let within = match info.state {
                CubeState::A1 => count < r128,
                CubeState::A2 => r128 <= count && count < mu_d * r128,
                CubeState::A3 => count < 2 * mu_d * r128,
                CubeState::A4 => count < faces * r128,
                CubeState::A5 => count < mu_d * r128,
                CubeState::A6 => count < 2 * mu_d.saturating_mul(mu_d) * r128,
            };
            debug_assert!(within, "state {:?} with {count} live points", info.state);
            if !within {
                stats.bound_violations += 1;
            }
            if matches!(info.state, CubeState::A2 | CubeState::A3) {
                stats.g += 1;
            }
            phase.states[info.state.slot()] += 1;
            if info.state.slot() >= 1 && info.state != CubeState::A4 {
                doomed.push(index.clone());
            }
            if info.state != CubeState::A1 {
                current.push((index.clone(), info));
            }
        }
        stats.b += new_blue;

        // next lattice: put as many yellow cubes as possible in central position
        let mut votes: BTreeMap<Vec<i128>, usize> = BTreeMap::new();
        for (index, info) in &current {
            if matches!(info.state, CubeState::A2 | CubeState::A3) {
                *votes.entry(index.iter().map(|k| (k - half).rem_euclid(mu)).collect()).or_default() += 1;
            }
        }
        // with nothing to center, align with the lowest occupied cell so that
        // the points eventually share a cube
        let mut offset: Vec<i128> =
            (0..d).map(|k| cells.iter().map(|c| lattice.index(c)[k]).min().unwrap_or(0).rem_euclid(mu)).collect();
        let mut top = 0;
        for (j, v) in &votes {
            if *v > top {
                top = *v;
                offset = j.clone();
            }
        }

        // every new blue or yellow cube is a current cube or lies inside one
        for index in &doomed {
            for &p in groups.get(index).unwrap_or(&empty) {
                live[p] = false;
                phase.deleted += 1;
            }
        }

        let mut next: Vec<Info> = Vec::with_capacity(current.len());
        for (index, mut info) in current {
            if matches!(info.state, CubeState::A2 | CubeState::A3) {
                phase.yellow += 1;
                let central = index.iter().zip(&offset).all(|(k, j)| (k - j).rem_euclid(mu) == half);
                if central {
                    phase.central_yellow += 1;
                } else if info.state == CubeState::A2 {
                    continue;
                } else {
                    info.state = CubeState::A4;
                    info.green = None;
                }
            }
            next.push(info);
        }
        debug_assert!(phase.yellow == 0 || phase.central_yellow * mu_d as usize >= phase.yellow);
        let yellow_left = phase.central_yellow > 0;
        stats.phases.push(phase);

        let together = cells.windows(2).all(|w| lattice.index(&w[0]) == lattice.index(&w[1]));
        if together && !yellow_left {
            break;
        }
        let origin = lattice
            .origin
            .iter()
            .zip(&offset)
            .map(|(o, j)| j.checked_mul(lattice.side).and_then(|x| x.checked_add(*o)).ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        let side = lattice.side.checked_mul(mu).ok_or(Error::CoordinateOverflow)?;
        lattice = Lattice { origin, side };
        level += 1;
        prev = next;
    }

    stats.s = selected.len();
    debug_assert!(stats.b <= 2 * stats.s, "b = {} > 2s = {}", stats.b, 2 * stats.s);

    let mut tally: BTreeMap<SignedAxis, usize> = BTreeMap::new();
    for s in &selected {
        *tally.entry(s.orientation).or_default() += 1;
    }
    let mut orientation = SignedAxis::BOTTOM;
    let mut top = 0;
    for (o, c) in &tally {
        if *c > top {
            top = *c;
            orientation = *o;
        }
    }
    let axis_map = AxisMap::sending_to_bottom(d, orientation);
    let cubes = selected
        .iter()
        .filter(|s| s.orientation == orientation)
        .map(|s| axis_map.apply_cube(&s.cube.to_free()))
        .collect();

    Ok(CoverResult { d, kappa, r, n: points.len(), cubes, orientation, selected, normalization, axis_map, stats })
}
