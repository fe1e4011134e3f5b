//! Carrying of diagonal extensions through one period.
//!
//! Switch ids follow cusps through Left and Right splits, and the new switch
//! at either end of a split branch is carried to the switch at the opposite
//! end. The path from the image of a cusp back to its original position is
//! therefore the image of the split branch, accumulated over the period.

use num_bigint::BigInt;
use num_traits::One;

use super::{power_positive_k_checked, BoundsError};
use crate::matrix::{self, IntMatrix};
use crate::splitting::{split, AgolCycle, SplitCase};
use crate::traintrack::{BranchEnd, DiagonalExtension, TrainTrack};

/// Per cusp of τ_n: where ψ sends it and the branch counts of the connecting path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspPaths {
    /// Cusp s maps to cusp `image[s]`.
    pub image: Vec<usize>,
    /// Branch counts in τ_n of the path for cusp s.
    pub path: Vec<Vec<BigInt>>,
}

impl CuspPaths {
    /// One period of the cycle.
    pub fn of_cycle(cycle: &AgolCycle) -> Result<Self, BoundsError> {
        let (t0, _) = cycle.start();
        let l = t0.num_branches();
        let s = t0.num_switches();
        let mut gamma: Vec<Vec<BigInt>> = vec![vec![BigInt::default(); l]; s];
        let mut carry = matrix::identity(l);
        for step in &cycle.steps {
            let mut t = step.track.clone();
            let mut m = step.measure.clone();
            for ev in &step.events {
                if ev.case == SplitCase::Central {
                    return Err(BoundsError::CentralInPeriod);
                }
                let (u, _) = t.position(BranchEnd::new(ev.branch, 0));
                let (v, _) = t.position(BranchEnd::new(ev.branch, 1));
                for w in [u, v] {
                    for (r, row) in carry.iter().enumerate() {
                        gamma[w][r] += &row[ev.branch];
                    }
                }
                let out = split(&t, &m, ev.branch)?;
                carry = matrix::mul(&carry, &out.elem.entries).ok_or(BoundsError::DimensionMismatch)?;
                t = out.track;
                m = out.measure;
            }
        }
        // ψ(cusp w) is the cusp of τ_{n+m} that ι sends to w
        let mut image = vec![0; s];
        for (x, &w) in cycle.iso_switch.iter().enumerate() {
            image[w] = x;
        }
        let path = (0..s).map(|w| gamma[image[w]].clone()).collect();
        Ok(CuspPaths { image, path })
    }

    /// Paths for ψ^k given the period matrix.
    pub fn power(&self, pm: &IntMatrix, k: u32) -> CuspPaths {
        let s = self.image.len();
        let mut image: Vec<usize> = (0..s).collect();
        let mut path: Vec<Vec<BigInt>> = vec![vec![BigInt::default(); pm.len()]; s];
        for _ in 0..k {
            for w in 0..s {
                let pushed: Vec<BigInt> =
                    pm.iter().map(|row| row.iter().zip(&path[w]).map(|(a, b)| a * b).sum()).collect();
                path[w] = pushed.iter().zip(&self.path[image[w]]).map(|(a, b)| a + b).collect();
                image[w] = self.image[image[w]];
            }
        }
        CuspPaths { image, path }
    }
}

/// Checks that `ext` triangulates every region of `t`.
pub fn check_extension(t: &TrainTrack, ext: &DiagonalExtension) -> Result<(), BoundsError> {
    let faces = t.faces();
    let mut per_region = vec![Vec::new(); faces.regions.len()];
    for &(a, b) in &ext.diagonals {
        let (ra, rb) = (faces.of_cusp(t, a), faces.of_cusp(t, b));
        if ra != rb {
            return Err(BoundsError::NotAnExtension(format!("diagonal {a}-{b} joins two regions")));
        }
        let cusps = &faces.regions[ra].cusps;
        let i = cusps.iter().position(|&x| x == a).unwrap();
        let j = cusps.iter().position(|&x| x == b).unwrap();
        let (i, j) = (i.min(j), i.max(j));
        if j == i || j == i + 1 || (i == 0 && j == cusps.len() - 1) {
            return Err(BoundsError::NotAnExtension(format!("{a}-{b} is not a diagonal")));
        }
        per_region[ra].push((i, j));
    }
    for (r, diags) in per_region.iter().enumerate() {
        let k = faces.regions[r].cusps.len();
        if diags.len() != k.saturating_sub(3) {
            return Err(BoundsError::NotAnExtension(format!("region {r} is not triangulated")));
        }
        for (x, &(a, b)) in diags.iter().enumerate() {
            for &(c, d) in &diags[x + 1..] {
                let crosses = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                if crosses || (a, b) == (c, d) {
                    return Err(BoundsError::NotAnExtension(format!("diagonals cross in region {r}")));
                }
            }
        }
    }
    Ok(())
}

/// The image extension and the incidence matrix of ψ^K(τ̃) carried by it.
pub fn extension_incidence(
    cycle: &AgolCycle,
    ext: &DiagonalExtension,
) -> Result<(DiagonalExtension, IntMatrix), BoundsError> {
    let (t, _) = cycle.start();
    check_extension(t, ext)?;
    let pm = &cycle.cycle_matrix.entries;
    let k = power_positive_k_checked(pm)?;
    let mk = matrix::pow(pm, k);
    let paths = CuspPaths::of_cycle(cycle)?.power(pm, k);
    let mut image: Vec<(usize, usize)> = ext
        .diagonals
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (paths.image[a], paths.image[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    image.sort();
    let ext2 = DiagonalExtension { diagonals: image.clone() };
    check_extension(t, &ext2)?;
    let l = t.num_branches();
    let n = l + ext.diagonals.len();
    let mut out = matrix::zeros(n, n);
    for i in 0..l {
        out[i][..l].clone_from_slice(&mk[i]);
    }
    for (c, &(a, b)) in ext.diagonals.iter().enumerate() {
        for r in 0..l {
            out[r][l + c] = &paths.path[a][r] + &paths.path[b][r];
        }
        let (x, y) = (paths.image[a], paths.image[b]);
        let row = image.binary_search(&(x.min(y), x.max(y))).unwrap();
        out[l + row][l + c] = BigInt::one();
    }
    Ok((ext2, out))
}
