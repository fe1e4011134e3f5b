//! Splits, shifts and folds of measured tracks, carrying matrices, and
//! detection of the periodic tail of the maximal splitting sequence.

mod cycle;
mod file;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::{self, IntMatrix};
use crate::numberfield::{FieldError, NFElement};
use crate::traintrack::{BranchEnd, Measure, Slot, Switch, TrackError, TrainTrack};

pub use cycle::{find_agol_cycle, AgolCycle, CycleStep};
pub use file::{cycle_to_text, parse_cycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("branch {0} is not large")]
    NotLargeBranch(usize),
    #[error("measure is not a positive solution of the switch conditions")]
    InvalidMeasure,
    #[error("branch {0} is not a shiftable mixed branch")]
    NotShiftable(usize),
    #[error("event cannot be folded: {0}")]
    NotFoldable(String),
    #[error("track has no large branch")]
    NoLargeBranch,
    #[error("no periodic splitting found within {0} maximal splits")]
    NoCycleWithinBudget(usize),
    #[error("central split changes the surface: {0}")]
    Degenerate(String),
    #[error("corrupt cycle file: {0}")]
    CorruptCycle(String),
    #[error("carrying matrices do not chain")]
    ChainMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Track(#[from] TrackError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitCase {
    Left,
    Right,
    Central,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitEvent {
    pub branch: usize,
    pub case: SplitCase,
}

/// Incidence of a carrying `source < target`: entry (i, j) counts traversals
/// of target branch i by the image of source branch j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryingMatrix {
    pub entries: IntMatrix,
    pub source: usize,
    pub target: usize,
}

impl CarryingMatrix {
    pub fn identity(n: usize, id: usize) -> Self {
        CarryingMatrix { entries: matrix::identity(n), source: id, target: id }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        matrix::cols(&self.entries)
    }

    /// Weights on the target track carried from weights on the source track.
    pub fn apply(&self, w: &[NFElement]) -> Vec<NFElement> {
        let f = w[0].field().clone();
        self.entries
            .iter()
            .map(|row| {
                let mut acc = NFElement::zero(&f);
                for (x, y) in row.iter().zip(w) {
                    if !x.is_zero() {
                        acc = &acc + &y.scale(&num_rational::BigRational::from_integer(x.clone()));
                    }
                }
                acc
            })
            .collect()
    }
}

/// `a · b`, carrying `b.source` into `a.target`.
pub fn incidence_compose(a: &CarryingMatrix, b: &CarryingMatrix) -> Result<CarryingMatrix, SplitError> {
    if a.source != b.target {
        return Err(SplitError::ChainMismatch);
    }
    let entries = matrix::mul(&a.entries, &b.entries).ok_or(SplitError::ChainMismatch)?;
    Ok(CarryingMatrix { entries, source: b.source, target: a.target })
}

#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub track: TrainTrack,
    pub measure: Measure,
    pub elem: CarryingMatrix,
    pub event: SplitEvent,
    /// Old branch id → new branch id; only a central split deletes or renumbers.
    pub branch_map: Vec<Option<usize>>,
}

/// Ends around a large branch: a = u.sr, b = u.sl, c = v.sl, d = v.sr.
struct Quad {
    u: usize,
    v: usize,
    a: BranchEnd,
    b: BranchEnd,
    c: BranchEnd,
    d: BranchEnd,
}

fn quad(t: &TrainTrack, e: usize) -> Result<Quad, SplitError> {
    if e >= t.num_branches() || !t.is_large(e) {
        return Err(SplitError::NotLargeBranch(e));
    }
    let (u, _) = t.position(BranchEnd::new(e, 0));
    let (v, _) = t.position(BranchEnd::new(e, 1));
    let (su, sv) = (t.switch(u), t.switch(v));
    Ok(Quad { u, v, a: su.small_right(), b: su.small_left(), c: sv.small_left(), d: sv.small_right() })
}

fn unit_elem(l: usize, e: usize, plus: [usize; 3]) -> IntMatrix {
    let mut m = matrix::identity(l);
    m[e][e] = BigInt::zero();
    for p in plus {
        m[e][p] += BigInt::one();
    }
    m
}

/// Splits the large branch `e`, the case chosen by comparing μ(a) with μ(c).
pub fn split(t: &TrainTrack, m: &Measure, e: usize) -> Result<SplitOutcome, SplitError> {
    let q = quad(t, e)?;
    if m.len() != t.num_branches() {
        return Err(SplitError::InvalidMeasure);
    }
    let wa = &m.weights[q.a.branch];
    let wc = &m.weights[q.c.branch];
    let l = t.num_branches();
    let case = match wa.cmp_value(wc) {
        std::cmp::Ordering::Greater => SplitCase::Left,
        std::cmp::Ordering::Less => SplitCase::Right,
        std::cmp::Ordering::Equal => return central_split(t, m, e, &q),
    };
    let (track, entries) = split_combinatorial(t, e, case)?;
    let mut w = m.weights.clone();
    w[e] = if case == SplitCase::Left { wa - wc } else { wc - wa };
    Ok(SplitOutcome {
        track,
        measure: Measure::new(w),
        elem: CarryingMatrix { entries, source: 1, target: 0 },
        event: SplitEvent { branch: e, case },
        branch_map: (0..l).map(Some).collect(),
    })
}

/// Left or Right split of a large branch without reference to a measure.
pub fn split_combinatorial(t: &TrainTrack, e: usize, case: SplitCase) -> Result<(TrainTrack, IntMatrix), SplitError> {
    let q = quad(t, e)?;
    let e0 = BranchEnd::new(e, 0);
    let e1 = BranchEnd::new(e, 1);
    let l = t.num_branches();
    let mut t2 = t.clone();
    match case {
        SplitCase::Left => {
            write_switch(&mut t2, q.u, Switch::new(q.d, q.b, e0));
            write_switch(&mut t2, q.v, Switch::new(q.a, q.c, e1));
            Ok((t2, unit_elem(l, e, [q.c.branch, q.b.branch, e])))
        }
        SplitCase::Right => {
            write_switch(&mut t2, q.u, Switch::new(q.c, e0, q.a));
            write_switch(&mut t2, q.v, Switch::new(q.b, e1, q.d));
            Ok((t2, unit_elem(l, e, [q.a.branch, q.d.branch, e])))
        }
        SplitCase::Central => Err(SplitError::Degenerate("central splits depend on the measure".into())),
    }
}

fn write_switch(t: &mut TrainTrack, w: usize, sw: Switch) {
    for s in Slot::ALL {
        t.set_slot(w, s, sw.slot(s));
    }
}

/// Deletes e, u, v and joins a to c and b to d.
fn central_split(t: &TrainTrack, m: &Measure, e: usize, q: &Quad) -> Result<SplitOutcome, SplitError> {
    let faces = t.faces();
    let rw = faces.of_cusp(t, q.u);
    let re = faces.of_cusp(t, q.v);
    if rw == re {
        return Err(SplitError::Degenerate("the two cusps share a region".into()));
    }
    let l = t.num_branches();
    // union of branches glued at u and v
    let mut parent: Vec<usize> = (0..l).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (x, y) in [(q.a.branch, q.c.branch), (q.b.branch, q.d.branch)] {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            return Err(SplitError::Degenerate("a closed curve would be created".into()));
        }
        parent[rx.max(ry)] = rx.min(ry);
    }
    let glued: BTreeMap<BranchEnd, BranchEnd> = [(q.a, q.c), (q.c, q.a), (q.b, q.d), (q.d, q.b)].into_iter().collect();
    let mut new_id = vec![usize::MAX; l];
    let mut names = Vec::new();
    for b in 0..l {
        if b != e && find(&mut parent, b) == b {
            new_id[b] = names.len();
            names.push(t.branch_name(b).to_string());
        }
    }
    for b in 0..l {
        if b != e {
            new_id[b] = new_id[find(&mut parent, b)];
        }
    }
    // each surviving end is relabelled by following the glued chain to its far end
    let chain_far = |start: BranchEnd| -> BranchEnd {
        let mut cur = start.other();
        while let Some(&next) = glued.get(&cur) {
            cur = next.other();
        }
        cur
    };
    let mut end_label: BTreeMap<BranchEnd, BranchEnd> = BTreeMap::new();
    for b in 0..l {
        if b == e {
            continue;
        }
        for end in 0..2u8 {
            let be = BranchEnd::new(b, end);
            if glued.contains_key(&be) || end_label.contains_key(&be) {
                continue;
            }
            let far = chain_far(be);
            let (lo, hi) = if be <= far { (be, far) } else { (far, be) };
            let id = new_id[b];
            end_label.insert(lo, BranchEnd::new(id, 0));
            end_label.insert(hi, BranchEnd::new(id, 1));
        }
    }
    let keep: Vec<usize> = (0..t.num_switches()).filter(|&w| w != q.u && w != q.v).collect();
    let mut punctured: Vec<bool> = keep.iter().map(|&w| t.is_punctured_mark(w)).collect();
    if t.is_punctured_mark(q.u) || t.is_punctured_mark(q.v) {
        let heir = faces.regions[rw]
            .cusps
            .iter()
            .chain(&faces.regions[re].cusps)
            .copied()
            .filter(|&w| w != q.u && w != q.v)
            .min()
            .ok_or_else(|| SplitError::Degenerate("merged region has no cusp".into()))?;
        let k = keep.iter().position(|&w| w == heir).unwrap();
        punctured[k] = true;
    }
    let switches: Vec<Switch> = keep
        .iter()
        .map(|&w| {
            let sw = t.switch(w);
            let f = |be: BranchEnd| end_label[&be];
            Switch::new(f(sw.large()), f(sw.small_left()), f(sw.small_right()))
        })
        .collect();
    let names_sw = keep.iter().map(|&w| t.switch_name(w).to_string()).collect();
    let t2 = TrainTrack::new(t.genus(), t.punctures(), names, names_sw, switches, punctured)?;
    if !t2.is_filling() || t2.derived_genus() != t.derived_genus() {
        return Err(SplitError::Degenerate("result does not fill".into()));
    }
    let nl = t2.num_branches();
    let mut elem = matrix::zeros(l, nl);
    let mut w = vec![NFElement::zero(m.weights[0].field()); nl];
    let mut branch_map = vec![None; l];
    for b in 0..l {
        if b != e {
            elem[b][new_id[b]] = BigInt::one();
            w[new_id[b]] = m.weights[b].clone();
            branch_map[b] = Some(new_id[b]);
        }
    }
    elem[e][new_id[q.a.branch]] += BigInt::one();
    elem[e][new_id[q.b.branch]] += BigInt::one();
    Ok(SplitOutcome {
        track: t2,
        measure: Measure::new(w),
        elem: CarryingMatrix { entries: elem, source: 1, target: 0 },
        event: SplitEvent { branch: e, case: SplitCase::Central },
        branch_map,
    })
}

/// Inverse of a Left or Right split.
pub fn fold(t: &TrainTrack, m: &Measure, ev: SplitEvent) -> Result<(TrainTrack, Measure), SplitError> {
    let e = ev.branch;
    if e >= t.num_branches() {
        return Err(SplitError::NotFoldable(format!("no branch {e}")));
    }
    let (u, su) = t.position(BranchEnd::new(e, 0));
    let (v, sv) = t.position(BranchEnd::new(e, 1));
    let want = match ev.case {
        SplitCase::Left => Slot::SmallRight,
        SplitCase::Right => Slot::SmallLeft,
        SplitCase::Central => return Err(SplitError::NotFoldable("central splits are not invertible".into())),
    };
    if u == v || su != want || sv != want {
        return Err(SplitError::NotFoldable(format!("branch {e} is not a {:?} diagonal", ev.case)));
    }
    let (x, y) = (*t.switch(u), *t.switch(v));
    let e0 = BranchEnd::new(e, 0);
    let e1 = BranchEnd::new(e, 1);
    let (a, b, c, d) = match ev.case {
        SplitCase::Left => (y.large(), x.small_left(), y.small_left(), x.large()),
        _ => (x.small_right(), y.large(), x.large(), y.small_right()),
    };
    let mut t2 = t.clone();
    write_switch(&mut t2, u, Switch::new(e0, b, a));
    write_switch(&mut t2, v, Switch::new(e1, c, d));
    let mut w = m.weights.clone();
    let extra = match ev.case {
        SplitCase::Left => &w[c.branch] + &w[b.branch],
        _ => &w[a.branch] + &w[d.branch],
    };
    w[e] = &w[e] + &extra;
    Ok((t2, Measure::new(w)))
}

/// Result of a shift along a mixed branch.
#[derive(Clone, Debug)]
pub struct ShiftOutcome {
    pub track: TrainTrack,
    pub elem: CarryingMatrix,
    /// Branches whose weights sum to the new weight of the shifted branch.
    pub new_weight_of: [usize; 2],
    pub branch: usize,
}

impl ShiftOutcome {
    pub fn transport(&self, m: &Measure) -> Measure {
        let mut w = m.weights.clone();
        w[self.branch] = &m.weights[self.new_weight_of[0]] + &m.weights[self.new_weight_of[1]];
        Measure::new(w)
    }
}

/// Slides the switch at the large end of mixed branch f past the switch at its small end.
pub fn shift(t: &TrainTrack, f: usize) -> Result<ShiftOutcome, SplitError> {
    if f >= t.num_branches() || !t.is_mixed(f) {
        return Err(SplitError::NotShiftable(f));
    }
    let ends = [BranchEnd::new(f, 0), BranchEnd::new(f, 1)];
    let (fp, fq) = if t.position(ends[0]).1 == Slot::Large { (ends[0], ends[1]) } else { (ends[1], ends[0]) };
    let (p, _) = t.position(fp);
    let (qs, fslot) = t.position(fq);
    if p == qs {
        return Err(SplitError::NotShiftable(f));
    }
    let (sp, sq) = (*t.switch(p), *t.switch(qs));
    let (y, z) = (sp.small_left(), sp.small_right());
    let mut t2 = t.clone();
    let weight_of = if fslot == Slot::SmallRight {
        let o = sq.small_left();
        write_switch(&mut t2, qs, Switch::new(sq.large(), fq, z));
        write_switch(&mut t2, p, Switch::new(fp, o, y));
        [o.branch, y.branch]
    } else {
        let o = sq.small_right();
        write_switch(&mut t2, qs, Switch::new(sq.large(), y, fq));
        write_switch(&mut t2, p, Switch::new(fp, z, o));
        [z.branch, o.branch]
    };
    let l = t.num_branches();
    let mut e = matrix::identity(l);
    e[f][f] = BigInt::zero();
    e[f][y.branch] += BigInt::one();
    e[f][z.branch] += BigInt::one();
    Ok(ShiftOutcome {
        track: t2,
        elem: CarryingMatrix { entries: e, source: 1, target: 0 },
        new_weight_of: weight_of,
        branch: f,
    })
}

/// One maximal split step.
#[derive(Clone, Debug)]
pub struct MaximalSplit {
    pub track: TrainTrack,
    pub measure: Measure,
    pub elem: CarryingMatrix,
    pub events: Vec<SplitEvent>,
}

/// Splits every large branch of maximal weight, in ascending branch id.
pub fn maximal_split(t: &TrainTrack, m: &Measure) -> Result<MaximalSplit, SplitError> {
    if m.len() != t.num_branches() || !m.is_positive() {
        return Err(SplitError::InvalidMeasure);
    }
    let large = t.large_branches();
    let Some(max) = large.iter().map(|&b| &m.weights[b]).max_by(|a, b| a.cmp_value(b)) else {
        return Err(SplitError::NoLargeBranch);
    };
    let targets: Vec<usize> = large.iter().copied().filter(|&b| m.weights[b] == *max).collect();
    let mut cur: Vec<Option<usize>> = (0..t.num_branches()).map(Some).collect();
    let mut track = t.clone();
    let mut measure = m.clone();
    let mut elem = matrix::identity(t.num_branches());
    let mut events = Vec::new();
    for b in targets {
        let Some(id) = cur[b] else { continue };
        let out = split(&track, &measure, id)?;
        elem = matrix::mul(&elem, &out.elem.entries).ok_or(SplitError::ChainMismatch)?;
        for c in cur.iter_mut() {
            *c = c.and_then(|x| out.branch_map[x]);
        }
        events.push(out.event);
        track = out.track;
        measure = out.measure;
    }
    Ok(MaximalSplit { track, measure, elem: CarryingMatrix { entries: elem, source: 1, target: 0 }, events })
}
