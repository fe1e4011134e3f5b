//! Action of arcslide loops on H₁(F(𝒵), S₊) and on the homology of the capped surface.
//!
//! A handle is oriented from foot 0 to foot 1. The boundary walk crossing
//! handle h from foot f contributes +h when f = 0 and −h otherwise.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ArcDiagram, ArcError, Arcslide, ArcslideSequence, Dart};
use crate::lattice::{self, Quotient};
use crate::matrix::{self, IntMatrix};

fn foot_sign(p: usize) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Chain map C₁(after) → C₁(before): the slid handle picks up ± the handle it crossed.
pub(crate) fn slide_matrix(s: &Arcslide) -> IntMatrix {
    let mut m = matrix::identity(s.diagram.handles);
    // crossing from M(a′) to a″ equals crossing to a′ then across the other handle from a
    let sign = -foot_sign(s.slid) * foot_sign(s.over);
    m[s.over / 2][s.slid / 2] += BigInt::from(sign);
    m
}

/// Interval-by-handle boundary operator: ∂h = interval(foot 1) − interval(foot 0).
pub fn boundary_operator(d: &ArcDiagram) -> IntMatrix {
    let loc = d.locations();
    let mut m = matrix::zeros(d.intervals.len(), d.handles);
    for h in 0..d.handles {
        m[loc[2 * h + 1].0][h] += BigInt::one();
        m[loc[2 * h].0][h] -= BigInt::one();
    }
    m
}

/// One cycle per boundary component of F(𝒵).
pub fn boundary_cycles(d: &ArcDiagram) -> Vec<Vec<BigInt>> {
    d.faces()
        .iter()
        .map(|f| {
            let mut z = vec![BigInt::zero(); d.handles];
            for dart in f {
                if let Dart::Point(p) = *dart {
                    z[p / 2] += foot_sign(p);
                }
            }
            z
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Action {
    /// On the handle basis of H₁(F(𝒵), S₊).
    pub full: IntMatrix,
    /// On H₁ of the surface with every boundary component capped, rank 2g.
    pub capped: IntMatrix,
}

/// Positional identification of `start` with `end` as a signed handle matrix.
fn identification(start: &ArcDiagram, end: &ArcDiagram) -> IntMatrix {
    let mut at = std::collections::HashMap::new();
    for (i, iv) in end.intervals.iter().enumerate() {
        for (k, &p) in iv.iter().enumerate() {
            at.insert((i, k), p);
        }
    }
    let loc = start.locations();
    let mut m = matrix::zeros(start.handles, start.handles);
    for h in 0..start.handles {
        let p = at[&loc[2 * h]];
        m[p / 2][h] = BigInt::from(foot_sign(p));
    }
    m
}

/// The map of a loop on H₁(F, S₊) and on H₁ of the capped surface.
pub fn h1_action(seq: &ArcslideSequence) -> Result<H1Action, ArcError> {
    if !seq.is_loop() {
        return Err(ArcError::NotALoop);
    }
    let d = &seq.start;
    let full = matrix::mul(&seq.h1_matrix, &identification(d, &seq.end)).expect("square");
    let q = Quotient::new(&boundary_operator(d), d.intervals.len(), d.handles, &boundary_cycles(d));
    if !q.torsion.is_empty() {
        let t: Vec<String> = q.torsion.iter().map(ToString::to_string).collect();
        return Err(ArcError::Torsion(t.join(",")));
    }
    let capped = q.induced(&full);
    debug_assert!(lattice::determinant(&capped).abs().is_one());
    Ok(H1Action { full, capped })
}
