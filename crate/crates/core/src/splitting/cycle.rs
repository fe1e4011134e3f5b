use std::collections::HashMap;

use num_bigint::BigInt;

use super::{maximal_split, CarryingMatrix, SplitError, SplitEvent};
use crate::matrix::{self, IntMatrix};
use crate::numberfield::NFElement;
use crate::traintrack::{isomorphisms, Measure, TrainTrack};

/// One maximal split inside the period.
#[derive(Clone, Debug)]
pub struct CycleStep {
    pub track: TrainTrack,
    pub measure: Measure,
    pub events: Vec<SplitEvent>,
    /// Carrying of the next track into `track`.
    pub elem: IntMatrix,
}

/// Periodic tail of a maximal splitting sequence.
#[derive(Clone, Debug)]
pub struct AgolCycle {
    pub preperiod: usize,
    pub period: usize,
    /// Switch bijection τ_{n+m} → τ_n.
    pub iso_switch: Vec<usize>,
    /// Branch bijection τ_{n+m} → τ_n.
    pub iso_branch: Vec<usize>,
    pub lambda: NFElement,
    /// Period matrix on τ_n: `cycle_matrix · μ_n = λ · μ_n`.
    pub cycle_matrix: CarryingMatrix,
    /// Events of every maximal split from the start, one list per step.
    pub events: Vec<Vec<SplitEvent>>,
    /// τ_n, …, τ_{n+m−1} with the data of the split leaving each.
    pub steps: Vec<CycleStep>,
    /// τ_{n+m} and μ_{n+m}.
    pub end: (TrainTrack, Measure),
}

impl AgolCycle {
    pub fn start(&self) -> (&TrainTrack, &Measure) {
        (&self.steps[0].track, &self.steps[0].measure)
    }
}

fn scale_match(mi: &Measure, mj: &Measure, beta: &[usize]) -> Option<NFElement> {
    let lambda = mi.weights[beta[0]].try_div(&mj.weights[0]).ok()?;
    for (b, &bb) in beta.iter().enumerate() {
        if mi.weights[bb] != &lambda * &mj.weights[b] {
            return None;
        }
    }
    let one = NFElement::one(lambda.field());
    if (&lambda - &one).sign() > 0 {
        Some(lambda)
    } else {
        None
    }
}

/// Iterates maximal splits until a state repeats up to isomorphism and scaling by λ > 1.
pub fn find_agol_cycle(t: &TrainTrack, m: &Measure, max_iters: usize) -> Result<AgolCycle, SplitError> {
    let mut tracks = vec![t.clone()];
    let mut measures = vec![m.clone()];
    let mut elems: Vec<IntMatrix> = Vec::new();
    let mut events: Vec<Vec<SplitEvent>> = Vec::new();
    let mut seen: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    seen.entry(t.canonical_form().code).or_default().push(0);
    for _ in 0..max_iters {
        let j = tracks.len() - 1;
        let step = maximal_split(&tracks[j], &measures[j])?;
        elems.push(step.elem.entries);
        events.push(step.events);
        tracks.push(step.track);
        measures.push(step.measure);
        let j = j + 1;
        let code = tracks[j].canonical_form().code;
        let candidates = seen.get(&code).cloned().unwrap_or_default();
        for i in candidates {
            for sw in isomorphisms(&tracks[j], &tracks[i]) {
                let beta = tracks[j].branch_map(&tracks[i], &sw);
                let Some(lambda) = scale_match(&measures[i], &measures[j], &beta) else {
                    continue;
                };
                let mut e = matrix::identity(tracks[i].num_branches());
                for x in &elems[i..j] {
                    e = matrix::mul(&e, x).ok_or(SplitError::ChainMismatch)?;
                }
                let l = beta.len();
                let mut p: IntMatrix = vec![vec![BigInt::default(); l]; l];
                for (r, row) in e.iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        p[r][beta[c]] = x.clone();
                    }
                }
                let steps = (i..j)
                    .map(|k| CycleStep {
                        track: tracks[k].clone(),
                        measure: measures[k].clone(),
                        events: events[k].clone(),
                        elem: elems[k].clone(),
                    })
                    .collect();
                return Ok(AgolCycle {
                    preperiod: i,
                    period: j - i,
                    iso_switch: sw,
                    iso_branch: beta,
                    lambda,
                    cycle_matrix: CarryingMatrix { entries: p, source: i, target: i },
                    events,
                    steps,
                    end: (tracks[j].clone(), measures[j].clone()),
                });
            }
        }
        seen.entry(code).or_default().push(j);
    }
    Err(SplitError::NoCycleWithinBudget(max_iters))
}
