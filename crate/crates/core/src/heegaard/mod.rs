//! Bordered-sutured Heegaard diagrams built from a track and a compressing
//! basis written in normal coordinates, with exact generator counts.
//!
//! The surface is cut into pieces by the dual triangulation and the basis:
//! one central piece per switch and, at every corner of every triangle, one
//! piece per depth (depth 0 touches the vertex, depth d lies between the
//! corner arcs d−1 and d).

mod diagram;
mod generators;
mod graph;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bounds::{BoundsError, NormalCurve};
use crate::traintrack::{BranchEnd, TrainTrack};

pub use diagram::{build_diagram, AlphaObject, BetaObject, BorderedSuturedDiagram, BoundaryCircle, Foot};
pub use generators::{
    attach_tube_cutting, count_generators, tube_bound, verify_bound, BoundVerdict, Generator, GeneratorSet,
    TubeCutting, TubePiece, ALPHA_ONE_BETA_ARC_MAX, BETA_ONE_ALPHA_ARC_MAX, FIRST_KIND,
};
pub use graph::{dual_graph, hall_matching, sigma_prime, Chain, ReducedGraph, Reduction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeegaardError {
    #[error("basis must be nonempty")]
    EmptyBasis,
    #[error("curve {0} is empty")]
    EmptyCurve(usize),
    #[error("curves are not pairwise disjoint")]
    NotDisjoint,
    #[error("curve {0} has more than one component")]
    NotConnected(usize),
    #[error("curve {0} bounds a disk around a vertex of the triangulation")]
    Inessential(usize),
    #[error("a component of the complement of the basis contains no switch")]
    ComponentWithoutSwitch,
    #[error("no injective assignment of regions to boundary vertices")]
    HallViolation,
    #[error("diagram invariant failed: {0}")]
    Invariant(String),
    #[error("bad basis file: {0}")]
    Parse(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// A piece of the surface cut along the triangulation and the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Central(usize),
    Corner { switch: usize, corner: usize, depth: u64 },
}

/// How one branch of the track meets the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCrossing {
    /// Segment of the dual edge, numbered from the end-0 side, where the branch crosses it.
    pub segment: u64,
    /// Curve index of every arc crossed, from end 0 to end 1.
    pub arcs: Vec<usize>,
    /// Pieces entered through one arc and left through another.
    pub strips: Vec<Piece>,
    /// Whether the dual-graph half-edge at each end sits counterclockwise after the branch.
    pub ccw_after: [bool; 2],
}

/// Pairwise disjoint essential curves with the resolution of their union
/// against the track: each switch sits in the central piece of its triangle
/// and each branch crosses the fewest arcs its dual edge allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalBasis {
    pub curves: Vec<NormalCurve>,
    pub total: NormalCurve,
    /// Curve index of each point on each dual edge, numbered from the end-0 side.
    pub labels: Vec<Vec<usize>>,
    pub crossings: Vec<BranchCrossing>,
}

impl NormalBasis {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// ℓ(γ): total crossings with the dual triangulation.
    pub fn length(&self) -> u64 {
        self.total.length()
    }

    /// #(γ ∩ τ).
    pub fn track_crossings(&self) -> usize {
        self.crossings.iter().map(|c| c.arcs.len()).sum()
    }

    /// Corner arc counts of the union at switch `w`.
    pub fn corners(&self, t: &TrainTrack, w: usize) -> [u64; 3] {
        self.total.corners(t, w)
    }

    /// Arcs of the union on the side of dart `d` lying in the corner before it.
    pub(crate) fn before(&self, t: &TrainTrack, d: usize) -> u64 {
        self.corners(t, d / 3)[(d % 3 + 2) % 3]
    }

    /// Basis file text: one `curve <name>: <coords>` line per curve.
    pub fn to_text(&self) -> String {
        self.curves
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let xs: Vec<String> = c.coords.iter().map(u64::to_string).collect();
                format!("curve c{i}: {}\n", xs.join(" "))
            })
            .collect()
    }
}

/// Parses `curve <name>: x₀ x₁ …` lines; `#` starts a comment.
pub fn parse_basis(t: &TrainTrack, text: &str) -> Result<Vec<NormalCurve>, HeegaardError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| HeegaardError::Parse(format!("line {}: {m}", n + 1));
        let rest = line.strip_prefix("curve").ok_or_else(|| err("expected `curve`"))?;
        let (_, coords) = rest.split_once(':').ok_or_else(|| err("expected `:`"))?;
        let xs: Result<Vec<u64>, _> = coords.split_whitespace().map(str::parse).collect();
        let xs = xs.map_err(|_| err("coordinates must be nonnegative integers"))?;
        if xs.len() != t.num_branches() {
            return Err(err(&format!("{} coordinates for {} branches", xs.len(), t.num_branches())));
        }
        out.push(NormalCurve::new(t, xs)?);
    }
    Ok(out)
}

fn is_vertex_link(t: &TrainTrack, c: &NormalCurve) -> bool {
    let f = t.faces();
    (0..f.regions.len()).any(|r| {
        (0..t.num_switches()).all(|w| {
            let corners = c.corners(t, w);
            (0..3).all(|j| corners[j] == u64::from(f.of_dart[3 * w + (j + 1) % 3] == r))
        })
    })
}

/// Traces every component of `total`, returning its points as (branch, index from end 0).
fn trace_components(t: &TrainTrack, total: &NormalCurve) -> Vec<(NormalCurve, Vec<(usize, u64)>)> {
    let l = t.num_branches();
    let mut seen: Vec<Vec<bool>> = total.coords.iter().map(|&x| vec![false; x as usize]).collect();
    let mut out = Vec::new();
    for b in 0..l {
        for idx in 0..total.coords[b] {
            if seen[b][idx as usize] {
                continue;
            }
            let mut coords = vec![0u64; l];
            let mut points = Vec::new();
            let mut cur = (t.dart_of(BranchEnd::new(b, 0)), idx);
            loop {
                let (d, p) = cur;
                let be = t.dart_end(d);
                let gi = if be.end == 0 { p } else { total.coords[be.branch] - 1 - p };
                if seen[be.branch][gi as usize] {
                    break;
                }
                seen[be.branch][gi as usize] = true;
                coords[be.branch] += 1;
                points.push((be.branch, gi));
                let (d2, p2) = total.through(t, d, p);
                let x = total.coords[t.dart_end(d2).branch];
                cur = (t.alpha(d2), x - 1 - p2);
            }
            out.push((NormalCurve { coords }, points));
        }
    }
    out
}

/// Placement of the half-edge at the end seen through dart side with
/// `own = (segment, arcs before)` and the opposite side `other`.
fn ccw_after(own: (u64, u64), other: (u64, u64)) -> bool {
    use std::cmp::Ordering::*;
    match own.0.cmp(&own.1) {
        Less => true,
        Greater => false,
        Equal => other.0 <= other.1,
    }
}

fn branch_crossing(t: &TrainTrack, total: &NormalCurve, labels: &[usize], b: usize) -> BranchCrossing {
    let d0 = t.dart_of(BranchEnd::new(b, 0));
    let d1 = t.dart_of(BranchEnd::new(b, 1));
    let x = total.coords[b];
    let before = |d: usize| total.corners(t, d / 3)[(d % 3 + 2) % 3];
    let (a, bb) = (before(d0), before(d1));
    let (w0, w1) = (d0 / 3, d1 / 3);
    let mut arcs = Vec::new();
    let mut strips = Vec::new();
    let segment = if a + bb <= x {
        // every crossing happens in the triangle at end 1, through corner arcs after α(d1)
        let k1 = x - a;
        for q in (bb..k1).rev() {
            arcs.push(labels[(x - 1 - q) as usize]);
            if q + 1 < k1 {
                strips.push(Piece::Corner { switch: w1, corner: d1 % 3, depth: x - 1 - q });
            }
        }
        a
    } else {
        // every crossing happens in the triangle at end 0, through corner arcs before d0
        let k = x - bb;
        for p in (k..a).rev() {
            arcs.push(labels[p as usize]);
            if p + 1 < a {
                strips.push(Piece::Corner { switch: w0, corner: (d0 % 3 + 2) % 3, depth: p + 1 });
            }
        }
        k
    };
    let own0 = (segment, a);
    let own1 = (x - segment, bb);
    BranchCrossing { segment, arcs, strips, ccw_after: [ccw_after(own0, own1), ccw_after(own1, own0)] }
}

/// Checks the curves and resolves their union against the track.
pub fn normalize_basis(t: &TrainTrack, curves: &[NormalCurve]) -> Result<NormalBasis, HeegaardError> {
    if curves.is_empty() {
        return Err(HeegaardError::EmptyBasis);
    }
    let l = t.num_branches();
    for (i, c) in curves.iter().enumerate() {
        if c.coords.len() != l {
            return Err(BoundsError::DimensionMismatch.into());
        }
        if c.is_empty() {
            return Err(HeegaardError::EmptyCurve(i));
        }
        if c.components(t).len() != 1 {
            return Err(HeegaardError::NotConnected(i));
        }
        if is_vertex_link(t, c) {
            return Err(HeegaardError::Inessential(i));
        }
    }
    let total = curves.iter().skip(1).fold(curves[0].clone(), |acc, c| acc.add(c));
    let total = NormalCurve::new(t, total.coords)?;
    // disjoint curves are exactly the components of their normal sum
    let mut pending: BTreeMap<&[u64], Vec<usize>> = BTreeMap::new();
    for (i, c) in curves.iter().enumerate().rev() {
        pending.entry(&c.coords).or_default().push(i);
    }
    let mut labels: Vec<Vec<usize>> = total.coords.iter().map(|&x| vec![usize::MAX; x as usize]).collect();
    let comps = trace_components(t, &total);
    if comps.len() != curves.len() {
        return Err(HeegaardError::NotDisjoint);
    }
    for (c, points) in &comps {
        let i = pending.get_mut(c.coords.as_slice()).and_then(Vec::pop).ok_or(HeegaardError::NotDisjoint)?;
        for &(b, gi) in points {
            labels[b][gi as usize] = i;
        }
    }
    let crossings = (0..l).map(|b| branch_crossing(t, &total, &labels[b], b)).collect();
    Ok(NormalBasis { curves: curves.to_vec(), total, labels, crossings })
}

#[cfg(test)]
mod tests;
