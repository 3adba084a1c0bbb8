//! Incidence counting, rich lines, bound checks and the application
//! counters (sum-product, similar copies).

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::exact::{incident, line_through, ComplexLine, ComplexPoint, GaussianRational};
use crate::{Error, Result};

/// Exact incidence count of a point set and a line set, with the
/// `C n^{2/3} e^{2/3} + 3n + 3e` bound evaluated in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceReport {
    pub incidences: u64,
    pub n: usize,
    pub e: usize,
    pub c: f64,
    pub st_bound: f64,
    pub ratio: f64,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RichLine {
    pub line: ComplexLine,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RichBoundReport {
    pub t: usize,
    pub rich: usize,
    pub c: f64,
    pub bound: f64,
    pub violated: bool,
}

fn check_distinct<T: std::hash::Hash + Eq + std::fmt::Display>(items: &[T], what: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(items.len());
    for x in items {
        if !seen.insert(x) {
            return Err(Error::DuplicateInput(format!("{what} {x}")));
        }
    }
    Ok(())
}

/// For every point, the indices of the incident lines (ascending).
///
/// Lines are bucketed by slope so each point needs one hash lookup per
/// distinct slope instead of one test per line.
pub fn point_line_index(points: &[ComplexPoint], lines: &[ComplexLine]) -> Vec<Vec<usize>> {
    let mut by_slope: HashMap<&GaussianRational, HashMap<&GaussianRational, usize>> = HashMap::new();
    let mut vertical: HashMap<&GaussianRational, usize> = HashMap::new();
    for (j, l) in lines.iter().enumerate() {
        match l {
            ComplexLine::Slanted { a, b } => {
                by_slope.entry(a).or_default().insert(b, j);
            }
            ComplexLine::Vertical { c } => {
                vertical.insert(c, j);
            }
        }
    }
    let groups: Vec<_> = by_slope.into_iter().collect();
    points
        .par_iter()
        .map(|p| {
            let mut hits: Vec<usize> =
                groups.iter().filter_map(|(a, bs)| bs.get(&(&p.z2 - &(*a * &p.z1))).copied()).collect();
            hits.extend(vertical.get(&p.z1));
            hits.sort_unstable();
            hits
        })
        .collect()
}

/// Incidences by the accelerated index. Inputs must be duplicate-free.
pub fn count_incidences_fast(points: &[ComplexPoint], lines: &[ComplexLine]) -> Result<u64> {
    check_distinct(points, "point")?;
    check_distinct(lines, "line")?;
    Ok(point_line_index(points, lines).iter().map(|v| v.len() as u64).sum())
}

/// Incidences by testing every point against every line.
pub fn count_incidences_naive(points: &[ComplexPoint], lines: &[ComplexLine]) -> Result<u64> {
    check_distinct(points, "point")?;
    check_distinct(lines, "line")?;
    Ok(points.par_iter().map(|p| lines.iter().filter(|l| incident(p, l)).count() as u64).sum())
}

pub fn st_bound(n: usize, e: usize, c: f64) -> f64 {
    let (n, e) = (n as f64, e as f64);
    c * (n * e).powf(2.0 / 3.0) + 3.0 * n + 3.0 * e
}

pub fn count_incidences(points: &[ComplexPoint], lines: &[ComplexLine]) -> Result<IncidenceReport> {
    check_bounds(points, lines, 1.0)
}

pub fn check_bounds(points: &[ComplexPoint], lines: &[ComplexLine], c: f64) -> Result<IncidenceReport> {
    let incidences = count_incidences_fast(points, lines)?;
    let bound = st_bound(points.len(), lines.len(), c);
    Ok(IncidenceReport {
        incidences,
        n: points.len(),
        e: lines.len(),
        c,
        st_bound: bound,
        ratio: incidences as f64 / bound,
        violated: incidences as f64 > bound,
    })
}

/// All lines through at least `t` of the points, sorted by line, with exact
/// counts.
pub fn rich_lines(points: &[ComplexPoint], t: usize) -> Result<Vec<RichLine>> {
    if t < 2 {
        return Err(Error::InvalidParams(format!("richness t = {t} must be at least 2")));
    }
    check_distinct(points, "point")?;
    // pairs on a line with c points: c(c-1)/2
    let pairs = (0..points.len())
        .into_par_iter()
        .fold(HashMap::<ComplexLine, usize>::new, |mut acc, i| {
            for q in &points[i + 1..] {
                let l = line_through(&points[i], q).expect("points are distinct");
                *acc.entry(l).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, std::mem::take(&mut a)) };
            for (l, k) in small {
                *big.entry(l).or_insert(0) += k;
            }
            big
        });
    let mut out: Vec<RichLine> = pairs
        .into_iter()
        .map(|(line, k)| RichLine { line, count: points_from_pairs(k) })
        .filter(|r| r.count >= t)
        .collect();
    out.sort_by(|x, y| x.line.cmp(&y.line));
    Ok(out)
}

fn points_from_pairs(k: usize) -> usize {
    let c = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0).round() as usize;
    debug_assert_eq!(c * (c - 1) / 2, k);
    c
}

pub fn check_rich_bound(points: &[ComplexPoint], t: usize, c: f64) -> Result<RichBoundReport> {
    let rich = rich_lines(points, t)?.len();
    let (n, tf) = (points.len() as f64, t as f64);
    let bound = c * (n * n / tf.powi(3) + n / tf);
    Ok(RichBoundReport { t, rich, c, bound, violated: rich as f64 > bound })
}

/// Number of lines through at least two points, and the largest number of
/// points on one line.
pub fn beck_stats(points: &[ComplexPoint]) -> Result<(usize, usize)> {
    if points.len() < 2 {
        return Err(Error::InvalidParams("need at least two points".into()));
    }
    let rich = rich_lines(points, 2)?;
    let max = rich.iter().map(|r| r.count).max().unwrap_or(0);
    Ok((rich.len(), max))
}

/// `(|A+A|, |A·A|)` over the distinct elements of `a`. With `strict`, zero
/// is rejected; otherwise it is allowed.
pub fn sum_product(a: &[GaussianRational], strict: bool) -> Result<(usize, usize)> {
    if strict && a.iter().any(GaussianRational::is_zero) {
        return Err(Error::ZeroElement);
    }
    let set: Vec<&GaussianRational> = a.iter().collect::<HashSet<_>>().into_iter().collect();
    let mut sums = HashSet::new();
    let mut prods = HashSet::new();
    for (i, x) in set.iter().enumerate() {
        for y in &set[i..] {
            sums.insert(*x + *y);
            prods.insert(*x * *y);
        }
    }
    Ok((sums.len(), prods.len()))
}

/// Number of subsets of `b` that are images of `a` under a map `z ↦ uz + v`
/// with `u ≠ 0` (rotation, scaling and translation; no reflections).
pub fn similar_copies(a: &[GaussianRational], b: &[GaussianRational]) -> Result<usize> {
    let pattern: Vec<&GaussianRational> = {
        let mut seen = HashSet::new();
        a.iter().filter(|x| seen.insert(*x)).collect()
    };
    if pattern.len() < 2 || pattern.len() != a.len() {
        return Err(Error::TooSmallPattern);
    }
    let target: HashSet<&GaussianRational> = b.iter().collect();
    let pts: Vec<&GaussianRational> = target.iter().copied().collect();
    let (a1, a2) = (pattern[0], pattern[1]);
    let da = a2 - a1;
    let copies: HashSet<Vec<GaussianRational>> = pts
        .par_iter()
        .flat_map_iter(|b1| {
            let (da, target, pts, pattern) = (&da, &target, &pts, &pattern);
            pts.iter().filter(move |b2| *b2 != b1).filter_map(move |b2| {
                let u = &(*b2 - *b1) / da;
                let v = *b1 - &(&u * a1);
                let mut image = Vec::with_capacity(pattern.len());
                for z in pattern {
                    let w = &(&u * *z) + &v;
                    if !target.contains(&w) {
                        return None;
                    }
                    image.push(w);
                }
                image.sort();
                Some(image)
            })
        })
        .collect();
    Ok(copies.len())
}
