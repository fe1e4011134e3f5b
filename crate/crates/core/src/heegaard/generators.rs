//! Generator counts: partial matchings between α and β objects in which every
//! β-circle is used exactly once and every arc at most once.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{BetaObject, BorderedSuturedDiagram};
use crate::bounds::BoundReport;

/// Points of α₁ᶜ ∩ β₁ in a tube-cutting piece.
pub const FIRST_KIND: u64 = 2;
/// Most crossings of α₁ᶜ with a single β-arc.
pub const ALPHA_ONE_BETA_ARC_MAX: u64 = 2;
/// Most crossings of β₁ with a single α-arc.
pub const BETA_ONE_ALPHA_ARC_MAX: u64 = 5;

/// Explicit generators stop being listed past this many.
const ENUMERATE_LIMIT: usize = 200_000;

/// A generator as (α object, β object, index of the crossing between them).
pub type Generator = Vec<(usize, usize, u64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub count: BigUint,
    /// Counts by number of points; more than one nonzero entry means the
    /// generators spread over several idempotents.
    pub by_size: Vec<BigUint>,
    pub generators: Option<Vec<Generator>>,
}

impl GeneratorSet {
    /// Whether the occupancy rules admit generators of different sizes.
    pub fn mixed_sizes(&self) -> bool {
        self.by_size.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

fn choices(d: &BorderedSuturedDiagram, j: usize) -> Vec<(usize, u64)> {
    (0..d.alpha.len()).filter(|&i| d.intersections[i][j] > 0).map(|i| (i, d.intersections[i][j])).collect()
}

fn enumerate(d: &BorderedSuturedDiagram) -> Option<Vec<Generator>> {
    let nb = d.beta.len();
    let opts: Vec<Vec<(usize, u64)>> = (0..nb).map(|j| choices(d, j)).collect();
    let mut out = Vec::new();
    let mut used = vec![false; d.alpha.len()];
    let mut cur = Vec::new();
    fn go(
        j: usize,
        d: &BorderedSuturedDiagram,
        opts: &[Vec<(usize, u64)>],
        used: &mut [bool],
        cur: &mut Generator,
        out: &mut Vec<Generator>,
    ) -> bool {
        if out.len() > ENUMERATE_LIMIT {
            return false;
        }
        if j == opts.len() {
            out.push(cur.clone());
            return true;
        }
        if !matches!(d.beta[j], BetaObject::Circle(_)) && !go(j + 1, d, opts, used, cur, out) {
            return false;
        }
        for &(i, mult) in &opts[j] {
            if used[i] {
                continue;
            }
            used[i] = true;
            for k in 0..mult {
                cur.push((i, j, k));
                let ok = go(j + 1, d, opts, used, cur, out);
                cur.pop();
                if !ok {
                    used[i] = false;
                    return false;
                }
            }
            used[i] = false;
        }
        true
    }
    go(0, d, &opts, &mut used, &mut cur, &mut out).then_some(out)
}

/// Counts generators by dynamic programming over sets of used α objects.
pub fn count_generators(d: &BorderedSuturedDiagram, list: bool) -> GeneratorSet {
    let na = d.alpha.len();
    let words = na.div_ceil(64).max(1);
    let nb = d.beta.len();
    // state: used α objects → counts by number of points
    let mut states: HashMap<Vec<u64>, Vec<BigUint>> = HashMap::new();
    let mut zero = vec![BigUint::zero(); nb + 1];
    zero[0] = BigUint::one();
    states.insert(vec![0; words], zero);
    for j in 0..nb {
        let opts = choices(d, j);
        let optional = !matches!(d.beta[j], BetaObject::Circle(_));
        let mut next: HashMap<Vec<u64>, Vec<BigUint>> = HashMap::new();
        for (mask, counts) in &states {
            if optional {
                let e = next.entry(mask.clone()).or_insert_with(|| vec![BigUint::zero(); nb + 1]);
                for (x, c) in e.iter_mut().zip(counts) {
                    *x += c;
                }
            }
            for &(i, mult) in &opts {
                if mask[i / 64] >> (i % 64) & 1 == 1 {
                    continue;
                }
                let mut m2 = mask.clone();
                m2[i / 64] |= 1 << (i % 64);
                let e = next.entry(m2).or_insert_with(|| vec![BigUint::zero(); nb + 1]);
                for k in 0..nb {
                    if !counts[k].is_zero() {
                        e[k + 1] += &counts[k] * mult;
                    }
                }
            }
        }
        states = next;
    }
    let mut by_size = vec![BigUint::zero(); nb + 1];
    for counts in states.values() {
        for (x, c) in by_size.iter_mut().zip(counts) {
            *x += c;
        }
    }
    while by_size.len() > 1 && by_size.last().is_some_and(Zero::is_zero) {
        by_size.pop();
    }
    let count = by_size.iter().sum();
    GeneratorSet { count, by_size, generators: if list { enumerate(d) } else { None } }
}

/// One tube-cutting piece glued at a boundary circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubePiece {
    pub switch: usize,
    pub first_kind: u64,
    pub second_kind: u64,
}

impl TubePiece {
    pub fn multiplier(&self) -> u64 {
        self.first_kind + self.second_kind
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeCutting {
    pub pieces: Vec<TubePiece>,
    pub count_before: BigUint,
    pub count: BigUint,
}

/// 20(g+s−m)−18, the largest multiplier of one piece.
pub fn tube_bound(g: usize, s: usize, m: usize) -> BigInt {
    BigInt::from(20) * BigInt::from(g + s) - BigInt::from(20 * m) - 18
}

/// Glues one piece per boundary circle. Each generator extends in
/// [`FIRST_KIND`] ways through α₁ᶜ ∩ β₁, and in the second kind once per
/// point of α₁ᶜ on a β-arc end at the circle times the choices of β₁ on the
/// matching α-arc.
pub fn attach_tube_cutting(d: &BorderedSuturedDiagram, gens: &GeneratorSet) -> TubeCutting {
    let m = d.num_beta_circles();
    let mut pieces = Vec::with_capacity(d.switches);
    let mut count = gens.count.clone();
    for w in 0..d.switches {
        let mut per_arc: HashMap<usize, u64> = HashMap::new();
        for j in d.beta_feet(w) {
            if j >= m {
                *per_arc.entry(j).or_default() += 1;
            }
        }
        let second_kind = per_arc.values().map(|&a| a.min(ALPHA_ONE_BETA_ARC_MAX) * BETA_ONE_ALPHA_ARC_MAX).sum();
        let p = TubePiece { switch: w, first_kind: FIRST_KIND, second_kind };
        count *= p.multiplier();
        pieces.push(p);
    }
    TubeCutting { pieces, count_before: gens.count.clone(), count }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundVerdict {
    Pass { count: BigUint, bound: BigInt },
    Fail { count: BigUint, bound: BigInt, reason: String },
}

impl BoundVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BoundVerdict::Pass { .. })
    }
}

/// Compares the count after tube-cutting with the bound of the report; the
/// bound only applies to bases no longer than M(ψ).
pub fn verify_bound(tube: &TubeCutting, report: &BoundReport, basis_length: u64) -> BoundVerdict {
    let count = tube.count.clone();
    let bound = report.dd_bound.clone();
    let fail = |reason: String| BoundVerdict::Fail { count: count.clone(), bound: bound.clone(), reason };
    if report.m_psi <= BigInt::zero() {
        return fail("M(psi) is zero, so the bound is degenerate".into());
    }
    if BigInt::from(basis_length) > report.m_psi {
        return fail(format!("basis length {basis_length} exceeds M(psi)"));
    }
    if BigInt::from(count.clone()) > bound {
        return fail("generator count exceeds the bound".into());
    }
    BoundVerdict::Pass { count, bound }
}
