//! Normal curves in the triangulation dual to a track.
//!
//! Points on the side of dart `d` are numbered from the corner before `d` to
//! the corner after it; the same point seen from `α(d)` has index `x − 1 − p`.

use super::BoundsError;
use crate::traintrack::TrainTrack;

/// Intersection numbers with the dual edges, indexed by branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalCurve {
    pub coords: Vec<u64>,
}

impl NormalCurve {
    pub fn new(t: &TrainTrack, coords: Vec<u64>) -> Result<Self, BoundsError> {
        if coords.len() != t.num_branches() {
            return Err(BoundsError::DimensionMismatch);
        }
        let c = NormalCurve { coords };
        for w in 0..t.num_switches() {
            let x = c.sides(t, w);
            let sum: u64 = x.iter().sum();
            if !sum.is_multiple_of(2) || x.iter().any(|&v| 2 * v > sum) {
                return Err(BoundsError::IncompatibleCoordinates(w));
            }
        }
        Ok(c)
    }

    pub fn length(&self) -> u64 {
        self.coords.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.length() == 0
    }

    /// Coordinates on the three sides of the triangle at switch `w`, counterclockwise.
    pub fn sides(&self, t: &TrainTrack, w: usize) -> [u64; 3] {
        [0, 1, 2].map(|k| self.coords[t.dart_end(3 * w + k).branch])
    }

    /// Corner arc counts; entry i sits between sides i and i+1.
    pub fn corners(&self, t: &TrainTrack, w: usize) -> [u64; 3] {
        let x = self.sides(t, w);
        [0, 1, 2].map(|i| (x[i] + x[(i + 1) % 3] - x[(i + 2) % 3]) / 2)
    }

    /// Exit side and position of the arc entering dart `d` at position `p`.
    pub(crate) fn through(&self, t: &TrainTrack, d: usize, p: u64) -> (usize, u64) {
        let w = d / 3;
        let i = d % 3;
        let x = self.sides(t, w);
        let c = self.corners(t, w);
        let prev = (i + 2) % 3;
        if p < c[prev] {
            (3 * w + prev, x[prev] - 1 - p)
        } else {
            (3 * w + (i + 1) % 3, x[i] - 1 - p)
        }
    }

    /// Connected components, each as its own normal curve.
    pub fn components(&self, t: &TrainTrack) -> Vec<NormalCurve> {
        let l = t.num_branches();
        let mut seen: Vec<Vec<bool>> = self.coords.iter().map(|&x| vec![false; x as usize]).collect();
        let mut out = Vec::new();
        for b in 0..l {
            for idx in 0..self.coords[b] {
                if seen[b][idx as usize] {
                    continue;
                }
                let mut comp = vec![0u64; l];
                let start = (t.dart_of(crate::traintrack::BranchEnd::new(b, 0)), idx);
                let mut cur = start;
                loop {
                    let (d, p) = cur;
                    let br = t.dart_end(d).branch;
                    let gi = if t.dart_end(d).end == 0 { p } else { self.coords[br] - 1 - p };
                    if seen[br][gi as usize] {
                        break;
                    }
                    seen[br][gi as usize] = true;
                    comp[br] += 1;
                    let (d2, p2) = self.through(t, d, p);
                    let x = self.coords[t.dart_end(d2).branch];
                    cur = (t.alpha(d2), x - 1 - p2);
                }
                out.push(NormalCurve { coords: comp });
            }
        }
        out
    }

    pub fn add(&self, o: &NormalCurve) -> NormalCurve {
        NormalCurve { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}
