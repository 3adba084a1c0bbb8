use super::GridCube;
use crate::{Error, Result};

/// Covers `q ∖ b` by at most `3^d − 1` cubes inside `q` that avoid the
/// interior of `b`, where `b` is a cell of a lattice refining `q`.
///
/// The facet hyperplanes of `b` cut `q` into boxes. Each box other than `b`
/// is enlarged to a cube whose side is the box's longest edge, kept inside
/// `q` and on the far side of the facet of `b` across that edge.
pub fn complement_cover(q: &GridCube, b: &GridCube) -> Result<Vec<GridCube>> {
    let d = q.dim();
    let aligned = b.dim() == d
        && b.side > 0
        && q.side % b.side == 0
        && q.contains_cube(b)
        && (0..d).all(|k| (b.lo[k] - q.lo[k]) % b.side == 0);
    if !aligned {
        return Err(Error::NotNested);
    }
    // per axis: below, across, above b
    let pieces: Vec<[(i128, i128); 3]> =
        (0..d).map(|k| [(q.lo[k], b.lo[k]), (b.lo[k], b.hi(k)), (b.hi(k), q.hi(k))]).collect();
    let mut out: Vec<GridCube> = Vec::new();
    let mut choice = vec![0usize; d];
    loop {
        let live = (0..d).all(|k| {
            let (lo, hi) = pieces[k][choice[k]];
            lo < hi
        });
        if live && choice.iter().any(|&c| c != 1) {
            let (axis, q_side) = (0..d)
                .filter(|&k| choice[k] != 1)
                .map(|k| (k, pieces[k][choice[k]].1 - pieces[k][choice[k]].0))
                .fold((usize::MAX, 0), |best, (k, len)| if len > best.1 { (k, len) } else { best });
            let lo = (0..d)
                .map(|k| {
                    let (lo, _) = pieces[k][choice[k]];
                    if k == axis {
                        lo
                    } else {
                        q.lo[k].max(lo.min(q.hi(k) - q_side))
                    }
                })
                .collect();
            let cube = GridCube::new(lo, q_side);
            if !out.contains(&cube) {
                out.push(cube);
            }
        }
        // odometer over {0,1,2}^d
        let mut k = d;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < 3 {
                break;
            }
            choice[k] = 0;
        }
    }
}
