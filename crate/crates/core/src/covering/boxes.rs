use std::fmt;

use crate::exact::Rational;

/// A closed axis-aligned box `∏ [lo_k, hi_k]`, possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisBox {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
}

impl AxisBox {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Self {
        debug_assert_eq!(lo.len(), hi.len());
        AxisBox { lo, hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l <= x && x <= h)
    }

    pub fn contains_interior(&self, p: &[Rational]) -> bool {
        p.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (l, h))| l < x && x < h)
    }

    /// Whether the open interiors meet.
    pub fn interiors_overlap(&self, o: &AxisBox) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < o.hi[k] && o.lo[k] < self.hi[k])
    }

    pub fn intersect(&self, o: &AxisBox) -> AxisBox {
        AxisBox::new(
            self.lo.iter().zip(&o.lo).map(|(a, b)| a.max(b).clone()).collect(),
            self.hi.iter().zip(&o.hi).map(|(a, b)| a.min(b).clone()).collect(),
        )
    }

    /// Drops coordinate `axis`.
    pub fn project_out(&self, axis: usize) -> AxisBox {
        let keep =
            |v: &Vec<Rational>| v.iter().enumerate().filter(|(k, _)| *k != axis).map(|(_, x)| x.clone()).collect();
        AxisBox::new(keep(&self.lo), keep(&self.hi))
    }

    /// This closed box minus the open interior of `o`, as closed boxes
    /// (which may overlap on their boundaries).
    pub fn minus_open(&self, o: &AxisBox) -> Vec<AxisBox> {
        if !self.interiors_overlap(o) {
            return vec![self.clone()];
        }
        let mut out = Vec::new();
        let mut core = self.clone();
        for k in 0..self.dim() {
            if core.lo[k] <= o.lo[k] {
                let mut below = core.clone();
                below.hi[k] = o.lo[k].clone();
                out.push(below);
                core.lo[k] = o.lo[k].clone();
            }
            if o.hi[k] <= core.hi[k] {
                let mut above = core.clone();
                above.lo[k] = o.hi[k].clone();
                out.push(above);
                core.hi[k] = o.hi[k].clone();
            }
        }
        out
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lo.iter().zip(&self.hi).map(|(l, h)| format!("[{l}, {h}]")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Whether a closed box survives after removing the open interiors of all
/// `holes`.
pub(crate) fn survives(b: &AxisBox, holes: &[AxisBox]) -> bool {
    let mut pieces = vec![b.clone()];
    for h in holes {
        pieces = pieces.iter().flat_map(|p| p.minus_open(h)).collect();
        if pieces.is_empty() {
            return false;
        }
    }
    !pieces.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn bx(lo: &[i64], hi: &[i64]) -> AxisBox {
        AxisBox::new(lo.iter().map(|&x| int(x)).collect(), hi.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn subtraction_keeps_boundaries() {
        // a closed square minus its own interior leaves the boundary
        let s = bx(&[0, 0], &[1, 1]);
        assert!(survives(&s, std::slice::from_ref(&s)));
        assert!(!survives(&s, &[bx(&[-1, -1], &[2, 2])]));
        assert!(survives(&s, &[bx(&[-1, -1], &[2, 1])]));
        assert!(!survives(&s, &[bx(&[-1, -1], &[2, 1]), bx(&[-1, 0], &[2, 2])]));
        let pieces = bx(&[0], &[3]).minus_open(&bx(&[1], &[2]));
        assert_eq!(pieces, vec![bx(&[0], &[1]), bx(&[2], &[3])]);
    }
}
