use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::exact::{int, Rational};
use crate::{Error, Result};

/// A similarity `x ↦ scale·x + translate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub scale: Rational,
    pub translate: Vec<Rational>,
}

impl Normalization {
    pub fn identity(d: usize) -> Self {
        Normalization { scale: Rational::one(), translate: vec![Rational::zero(); d] }
    }

    pub fn apply(&self, p: &[Rational]) -> Vec<Rational> {
        p.iter().zip(&self.translate).map(|(x, t)| x * &self.scale + t).collect()
    }

    pub fn invert(&self, q: &[Rational]) -> Vec<Rational> {
        q.iter().zip(&self.translate).map(|(y, t)| (y - t) / &self.scale).collect()
    }
}

fn linf(p: &[Rational], q: &[Rational]) -> Rational {
    p.iter().zip(q).map(|(a, b)| (a - b).abs()).max().unwrap_or_else(Rational::zero)
}

/// Smallest L∞ distance between two of the points (`None` below two points).
/// Errors on duplicates.
pub(crate) fn min_linf_distance(points: &[Vec<Rational>]) -> Result<Option<Rational>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].cmp(&points[b][0]).then_with(|| points[a].cmp(&points[b])));
    let mut best: Option<Rational> = None;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            let gap = &points[b][0] - &points[a][0];
            if best.as_ref().is_some_and(|m| gap >= *m) {
                break;
            }
            let dist = linf(&points[a], &points[b]);
            if dist.is_zero() {
                return Err(Error::DuplicatePoints);
            }
            if best.as_ref().is_none_or(|m| dist < *m) {
                best = Some(dist);
            }
        }
    }
    Ok(best)
}

/// Scales the points so that any two are more than `√d` apart (hence no unit
/// cube holds two of them) and translates them off the integer lattice.
pub fn normalize_points(points: &[Vec<Rational>]) -> Result<(Vec<Vec<Rational>>, Normalization)> {
    let Some(first) = points.first() else {
        return Ok((Vec::new(), Normalization::identity(0)));
    };
    let d = first.len();
    if d == 0 || points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidParams("points must share a positive dimension".into()));
    }
    let scale = match min_linf_distance(points)? {
        Some(delta) => int(d.sqrt() as i64 + 1) / delta,
        None => Rational::one(),
    };
    let scaled: Vec<Vec<Rational>> = points.iter().map(|p| p.iter().map(|x| x * &scale).collect()).collect();
    let max_den = scaled.iter().flatten().map(|x| x.denom().clone()).max().expect("nonempty");
    // y + 1/P is never an integer when P exceeds the denominator of y
    let shift = Rational::new(1.into(), max_den + 1u32);
    let translate = vec![shift.clone(); d];
    let out = scaled.into_iter().map(|p| p.into_iter().map(|x| x + &shift).collect()).collect();
    Ok((out, Normalization { scale, translate }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn spreads_and_shifts() {
        let pts = vec![vec![int(0), int(0)], vec![int(3), int(0)]];
        let (out, n) = normalize_points(&pts).unwrap();
        assert_eq!(n.scale, rat(2, 3));
        assert_eq!(out[1], vec![rat(5, 2), rat(1, 2)]);
        assert_eq!(n.invert(&out[1]), pts[1]);
        let (single, _) = normalize_points(&[vec![int(4), rat(1, 3)]]).unwrap();
        assert!(single[0].iter().all(|x| !x.is_integer()));
        assert_eq!(normalize_points(&[vec![int(1)], vec![int(1)]]), Err(Error::DuplicatePoints));
    }

    #[test]
    fn sweep_matches_all_pairs() {
        let pts: Vec<Vec<Rational>> =
            (0..40).map(|i| vec![rat((i * 37) % 101, 7), rat((i * i) % 53, 3), int(i % 5)]).collect();
        let mut naive: Option<Rational> = None;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let dist = linf(&pts[i], &pts[j]);
                if naive.as_ref().is_none_or(|m| dist < *m) {
                    naive = Some(dist);
                }
            }
        }
        assert_eq!(min_linf_distance(&pts).unwrap(), naive);
    }
}
