//! Arcslides realizing splits, moves between special marks, and the
//! factorization of a periodic splitting sequence.

use std::collections::{HashMap, VecDeque};

use super::{special_arc_diagram, ArcDiagram, ArcError, Arcslide, ArcslideSequence, SpecialMark};
use crate::splitting::{split_combinatorial, AgolCycle, SplitCase, SplitEvent};
use crate::traintrack::TrainTrack;

/// Upper limit on diagrams visited while routing one extra handle.
const ROUTE_LIMIT: usize = 500_000;

fn neighbour(d: &ArcDiagram, p: usize, above: bool) -> Option<usize> {
    let (i, k) = d.locate(p)?;
    let iv = &d.intervals[i];
    if above {
        iv.get(k + 1).copied()
    } else {
        k.checked_sub(1).map(|j| iv[j])
    }
}

/// The two slides of a Left or Right split of branch `event.branch`.
///
/// Left slides the foot above e₀ over e₀, then the foot above e₁ over e₁;
/// Right does the same with the feet below.
pub fn split_to_arcslides(pre: &ArcDiagram, event: SplitEvent) -> Result<(Arcslide, Arcslide), ArcError> {
    let above = match event.case {
        SplitCase::Left => true,
        SplitCase::Right => false,
        SplitCase::Central => return Err(ArcError::CentralSplit),
    };
    let (e0, e1) = (2 * event.branch, 2 * event.branch + 1);
    let first_foot = neighbour(pre, e0, above).ok_or(ArcError::NotAdjacent(e0, e0))?;
    let first = Arcslide::new(pre, first_foot, e0)?;
    let mid = first.apply();
    let second_foot = neighbour(&mid, e1, above).ok_or(ArcError::NotAdjacent(e1, e1))?;
    let second = Arcslide::new(&mid, second_foot, e1)?;
    Ok((first, second))
}

/// Stars follow cusps, and switch ids follow cusps through Left and Right splits.
pub fn sigma_transport(t: &TrainTrack, event: SplitEvent, sigma: &SpecialMark) -> Result<SpecialMark, ArcError> {
    if event.case == SplitCase::Central {
        return Err(ArcError::CentralSplit);
    }
    sigma.check(t)?;
    let (t2, _) = split_combinatorial(t, event.branch, event.case)?;
    SpecialMark::new(&t2, sigma.switches.iter().copied())
}

/// Shortest slide route of handle `h` alone from `d` to a diagram with pattern `goal`.
fn route(d: &ArcDiagram, h: usize, goal: &[Vec<(usize, usize)>]) -> Result<Vec<(usize, usize)>, ArcError> {
    let mut prev: HashMap<Vec<Vec<usize>>, Option<(Vec<Vec<usize>>, usize, usize)>> = HashMap::new();
    let mut queue = VecDeque::new();
    prev.insert(d.intervals.clone(), None);
    queue.push_back(d.clone());
    while let Some(cur) = queue.pop_front() {
        if cur.pattern() == goal {
            let mut moves = Vec::new();
            let mut key = cur.intervals.clone();
            while let Some(Some((from, slid, over))) = prev.get(&key) {
                moves.push((*slid, *over));
                key = from.clone();
            }
            moves.reverse();
            return Ok(moves);
        }
        if prev.len() > ROUTE_LIMIT {
            break;
        }
        for slid in [2 * h, 2 * h + 1] {
            for above in [false, true] {
                let Some(over) = neighbour(&cur, slid, above) else {
                    continue;
                };
                let Ok(s) = Arcslide::new(&cur, slid, over) else {
                    continue;
                };
                let next = s.apply();
                if !prev.contains_key(&next.intervals) {
                    prev.insert(next.intervals.clone(), Some((cur.intervals.clone(), slid, over)));
                    queue.push_back(next);
                }
            }
        }
    }
    Err(ArcError::NoRoute)
}

/// Slides from `d`, a diagram for `sigma1`, to one for `sigma2`, moving only
/// the extra handles, one region at a time in order of the target star.
pub fn boundary_adjustment_from(
    d: &ArcDiagram,
    t: &TrainTrack,
    sigma1: &SpecialMark,
    sigma2: &SpecialMark,
) -> Result<ArcslideSequence, ArcError> {
    sigma1.check(t)?;
    sigma2.check(t)?;
    if !d.structurally_equal(&special_arc_diagram(t, sigma1)?) {
        return Err(ArcError::InvalidMark("diagram does not match the starting mark".into()));
    }
    let l = t.num_branches();
    let mut seq = ArcslideSequence::empty(d.clone());
    let mut cur = sigma1.clone();
    for &w2 in &sigma2.switches {
        let w1 = cur.star_of_region(t, w2).expect("valid mark");
        if w1 == w2 {
            continue;
        }
        // the handle around w2 moves to surround w1
        let h = seq.end.intervals[w2].iter().find(|&&p| p >= 2 * l).map(|&p| p / 2).expect("extra handle");
        cur.switches.remove(&w1);
        cur.switches.insert(w2);
        let goal = special_arc_diagram(t, &cur)?.pattern();
        for (slid, over) in route(&seq.end, h, &goal)? {
            seq.push(slid, over)?;
        }
    }
    Ok(seq)
}

/// Slides from 𝒵_{σ₁} to 𝒵_{σ₂} fixing every track point.
pub fn boundary_adjustment(
    sigma1: &SpecialMark,
    sigma2: &SpecialMark,
    t: &TrainTrack,
) -> Result<ArcslideSequence, ArcError> {
    boundary_adjustment_from(&special_arc_diagram(t, sigma1)?, t, sigma1, sigma2)
}

/// A loop on 𝒵_σ: adjust σ to the preimage mark, slide through the period,
/// then identify the last track with the first.
pub fn factorize(cycle: &AgolCycle, sigma: &SpecialMark) -> Result<ArcslideSequence, ArcError> {
    let (t, _) = cycle.start();
    sigma.check(t)?;
    let pre =
        SpecialMark::new(t, cycle.iso_switch.iter().enumerate().filter(|&(_, y)| sigma.contains(*y)).map(|(x, _)| x))?;
    let mut seq = boundary_adjustment(sigma, &pre, t)?;
    for step in &cycle.steps {
        for &ev in &step.events {
            let (a, b) = split_to_arcslides(&seq.end, ev)?;
            seq.push(a.slid, a.over)?;
            seq.push(b.slid, b.over)?;
        }
    }
    seq.relabel_end(&cycle.iso_switch);
    if !seq.is_loop() {
        return Err(ArcError::NotALoop);
    }
    Ok(seq)
}
