//! Arc diagrams of train tracks, arcslides, and the arcslide factorization
//! of a periodic splitting sequence.
//!
//! Point `2h + f` is foot `f` of handle `h`, so the matching is `p ↦ p ^ 1`.
//! Around an interval the ribbon order is its points bottom to top followed
//! by the gap, which is the negative boundary arc. For a track, interval `w`
//! reads `[small_left, large, small_right]` and the gap sits in the cusp.

mod homology;
mod slides;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::traintrack::{Slot, TrackError, TrainTrack};

pub use homology::{h1_action, H1Action};
pub use slides::{boundary_adjustment, boundary_adjustment_from, factorize, sigma_transport, split_to_arcslides};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("points {0} and {1} are not adjacent on one interval")]
    NotAdjacent(usize, usize),
    #[error("cannot slide a foot over its own handle")]
    SameHandle,
    #[error("invalid special mark: {0}")]
    InvalidMark(String),
    #[error("central splits have no arcslide pair")]
    CentralSplit,
    #[error("sequence does not end on its starting diagram")]
    NotALoop,
    #[error("no arcslide route between the marks")]
    NoRoute,
    #[error("malformed arc diagram: {0}")]
    Malformed(String),
    #[error("capped homology has torsion {0}")]
    Torsion(String),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Split(#[from] crate::splitting::SplitError),
}

/// Ribbon position on the boundary of an interval's disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dart {
    Point(usize),
    Gap(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    /// Point ids along each interval, bottom to top.
    pub intervals: Vec<Vec<usize>>,
    pub handles: usize,
}

impl ArcDiagram {
    pub fn new(intervals: Vec<Vec<usize>>, handles: usize) -> Result<Self, ArcError> {
        let mut seen = vec![false; 2 * handles];
        for &p in intervals.iter().flatten() {
            if p >= 2 * handles || std::mem::replace(&mut seen[p], true) {
                return Err(ArcError::Malformed(format!("point {p} repeated or out of range")));
            }
        }
        if seen.iter().any(|&x| !x) {
            return Err(ArcError::Malformed("unplaced point".into()));
        }
        Ok(ArcDiagram { intervals, handles })
    }

    pub fn matching(p: usize) -> usize {
        p ^ 1
    }

    pub fn num_points(&self) -> usize {
        2 * self.handles
    }

    /// Interval and index of every point.
    pub fn locations(&self) -> Vec<(usize, usize)> {
        let mut loc = vec![(0, 0); self.num_points()];
        for (i, iv) in self.intervals.iter().enumerate() {
            for (k, &p) in iv.iter().enumerate() {
                loc[p] = (i, k);
            }
        }
        loc
    }

    pub fn locate(&self, p: usize) -> Option<(usize, usize)> {
        self.intervals.iter().enumerate().find_map(|(i, iv)| iv.iter().position(|&x| x == p).map(|k| (i, k)))
    }

    /// Partner location at every position; equal patterns mean equal abstract diagrams.
    pub fn pattern(&self) -> Vec<Vec<(usize, usize)>> {
        let loc = self.locations();
        self.intervals.iter().map(|iv| iv.iter().map(|&p| loc[p ^ 1]).collect()).collect()
    }

    pub fn structurally_equal(&self, other: &ArcDiagram) -> bool {
        self.pattern() == other.pattern()
    }

    /// Next dart counterclockwise around the same interval.
    fn next(&self, d: Dart, loc: &[(usize, usize)]) -> Dart {
        match d {
            Dart::Gap(i) => self.intervals[i].first().map_or(Dart::Gap(i), |&p| Dart::Point(p)),
            Dart::Point(p) => {
                let (i, k) = loc[p];
                self.intervals[i].get(k + 1).map_or(Dart::Gap(i), |&q| Dart::Point(q))
            }
        }
    }

    /// Boundary components of F(𝒵) as dart cycles.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let loc = self.locations();
        let mut all: Vec<Dart> = (0..self.num_points()).map(Dart::Point).collect();
        all.extend((0..self.intervals.len()).map(Dart::Gap));
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &all {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while seen.insert(d) {
                face.push(d);
                let across = match d {
                    Dart::Point(p) => Dart::Point(p ^ 1),
                    g => g,
                };
                d = self.next(across, &loc);
            }
            out.push(face);
        }
        out
    }

    /// Every boundary component meets exactly one negative arc.
    pub fn is_special(&self) -> bool {
        self.faces().iter().all(|f| f.iter().filter(|d| matches!(d, Dart::Gap(_))).count() == 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.intervals.len() as i64 - self.handles as i64
    }

    /// Intervals with their handles relabelled by position, for display and comparison.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            let pts: Vec<String> = iv.iter().map(|&p| format!("h{}.{}", p / 2, p % 2)).collect();
            let _ = writeln!(s, "interval {i}: {}", pts.join(" "));
        }
        s
    }

    /// Intervals permuted: interval `i` becomes interval `map[i]`.
    pub fn relabel_intervals(&self, map: &[usize]) -> ArcDiagram {
        let mut intervals = vec![Vec::new(); self.intervals.len()];
        for (i, iv) in self.intervals.iter().enumerate() {
            intervals[map[i]] = iv.clone();
        }
        ArcDiagram { intervals, handles: self.handles }
    }
}

/// Point id of the branch end in slot `k` of switch `w`.
fn track_point(t: &TrainTrack, w: usize, k: Slot) -> usize {
    let be = t.switch(w).slot(k);
    2 * be.branch + be.end as usize
}

/// One interval per switch, one handle per branch.
pub fn arc_diagram_from_track(t: &TrainTrack) -> ArcDiagram {
    let intervals = (0..t.num_switches())
        .map(|w| [Slot::SmallLeft, Slot::Large, Slot::SmallRight].map(|k| track_point(t, w, k)).to_vec())
        .collect();
    ArcDiagram { intervals, handles: t.num_branches() }
}

/// Switches whose cusps carry a star, one per complementary region.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecialMark {
    pub switches: BTreeSet<usize>,
}

impl SpecialMark {
    pub fn new(t: &TrainTrack, switches: impl IntoIterator<Item = usize>) -> Result<Self, ArcError> {
        let mark = SpecialMark { switches: switches.into_iter().collect() };
        mark.check(t)?;
        Ok(mark)
    }

    /// The least cusp of every region.
    pub fn canonical(t: &TrainTrack) -> SpecialMark {
        SpecialMark { switches: t.regions().iter().filter_map(|r| r.cusps.iter().min().copied()).collect() }
    }

    pub fn contains(&self, w: usize) -> bool {
        self.switches.contains(&w)
    }

    pub fn check(&self, t: &TrainTrack) -> Result<(), ArcError> {
        if let Some(&w) = self.switches.iter().find(|&&w| w >= t.num_switches()) {
            return Err(ArcError::InvalidMark(format!("no switch {w}")));
        }
        let faces = t.faces();
        let mut stars = vec![0usize; faces.regions.len()];
        for &w in &self.switches {
            stars[faces.of_cusp(t, w)] += 1;
        }
        match stars.iter().position(|&k| k != 1) {
            Some(r) => Err(ArcError::InvalidMark(format!("region {r} has {} stars", stars[r]))),
            None => Ok(()),
        }
    }

    /// Star of the region containing the cusp of `w`.
    pub fn star_of_region(&self, t: &TrainTrack, w: usize) -> Option<usize> {
        let faces = t.faces();
        let r = faces.of_cusp(t, w);
        self.switches.iter().copied().find(|&x| faces.of_cusp(t, x) == r)
    }
}

/// Adds a handle around the triple of every unstarred switch, numbered
/// after the branches in ascending switch order.
pub fn special_arc_diagram(t: &TrainTrack, sigma: &SpecialMark) -> Result<ArcDiagram, ArcError> {
    sigma.check(t)?;
    let mut d = arc_diagram_from_track(t);
    for w in 0..t.num_switches() {
        if sigma.contains(w) {
            continue;
        }
        let h = d.handles;
        d.handles += 1;
        d.intervals[w].insert(0, 2 * h);
        d.intervals[w].push(2 * h + 1);
    }
    Ok(d)
}

/// Sliding the foot `slid` over the adjacent point `over`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arcslide {
    pub diagram: ArcDiagram,
    pub slid: usize,
    pub over: usize,
}

impl Arcslide {
    pub fn new(diagram: &ArcDiagram, slid: usize, over: usize) -> Result<Self, ArcError> {
        if slid / 2 == over / 2 {
            return Err(ArcError::SameHandle);
        }
        let (Some((i, j)), Some((k, m))) = (diagram.locate(slid), diagram.locate(over)) else {
            return Err(ArcError::NotAdjacent(slid, over));
        };
        if i != k || j.abs_diff(m) != 1 {
            return Err(ArcError::NotAdjacent(slid, over));
        }
        Ok(Arcslide { diagram: diagram.clone(), slid, over })
    }

    /// Whether the slid foot starts above the point it slides over.
    pub fn from_above(&self) -> bool {
        let (_, j) = self.diagram.locate(self.slid).unwrap();
        let (_, m) = self.diagram.locate(self.over).unwrap();
        j > m
    }

    /// The diagram after the slide: the foot lands beside M(over) on the opposite side.
    pub fn apply(&self) -> ArcDiagram {
        let above = self.from_above();
        let mut d = self.diagram.clone();
        let (i, j) = d.locate(self.slid).unwrap();
        d.intervals[i].remove(j);
        let (k, m) = d.locate(self.over ^ 1).unwrap();
        d.intervals[k].insert(if above { m } else { m + 1 }, self.slid);
        d
    }

    /// `(interval, index of a′, index of a, direction)` in the diagram before the slide.
    pub fn to_text(&self) -> String {
        let (i, j) = self.diagram.locate(self.slid).unwrap();
        let (_, m) = self.diagram.locate(self.over).unwrap();
        format!("({i}, {j}, {m}, {})", if j > m { "down" } else { "up" })
    }
}

/// Slides in order, with the end diagram optionally relabelled by an interval map.
#[derive(Clone, Debug)]
pub struct ArcslideSequence {
    pub start: ArcDiagram,
    pub slides: Vec<Arcslide>,
    pub end: ArcDiagram,
    /// Interval map applied after the last slide.
    pub interval_map: Vec<usize>,
    /// Chain map C₁(end) → C₁(start) on handle labels.
    pub h1_matrix: crate::matrix::IntMatrix,
}

impl ArcslideSequence {
    pub fn empty(start: ArcDiagram) -> Self {
        let n = start.intervals.len();
        let h = start.handles;
        ArcslideSequence {
            end: start.clone(),
            start,
            slides: Vec::new(),
            interval_map: (0..n).collect(),
            h1_matrix: crate::matrix::identity(h),
        }
    }

    pub fn len(&self) -> usize {
        self.slides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slides.is_empty()
    }

    /// Diagram after the last slide, before relabelling.
    pub fn last(&self) -> ArcDiagram {
        self.slides.last().map_or_else(|| self.start.clone(), Arcslide::apply)
    }

    pub fn push(&mut self, slid: usize, over: usize) -> Result<(), ArcError> {
        if self.interval_map.iter().enumerate().any(|(i, &j)| i != j) {
            return Err(ArcError::Malformed("sequence already relabelled".into()));
        }
        let s = Arcslide::new(&self.end, slid, over)?;
        self.h1_matrix = crate::matrix::mul(&self.h1_matrix, &homology::slide_matrix(&s)).expect("square");
        self.end = s.apply();
        self.slides.push(s);
        Ok(())
    }

    /// Appends `other`, whose start must be this sequence's end.
    pub fn extend(&mut self, other: &ArcslideSequence) -> Result<(), ArcError> {
        if other.start != self.end {
            return Err(ArcError::Malformed("sequences do not compose".into()));
        }
        for s in &other.slides {
            self.push(s.slid, s.over)?;
        }
        Ok(())
    }

    pub fn relabel_end(&mut self, map: &[usize]) {
        self.end = self.end.relabel_intervals(map);
        self.interval_map = map.to_vec();
    }

    pub fn is_loop(&self) -> bool {
        self.start.structurally_equal(&self.end)
    }

    /// Start diagram, then one line per slide, then the interval map.
    pub fn to_text(&self) -> String {
        let mut s = String::from("start\n");
        s.push_str(&self.start.to_text());
        for sl in &self.slides {
            let _ = writeln!(s, "slide {}", sl.to_text());
        }
        let map: Vec<String> = self.interval_map.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "relabel {}", map.join(" "));
        s
    }
}

#[cfg(test)]
mod tests;
