//! Generic train tracks as ribbon data: three labelled slots per switch, with
//! complementary regions recovered by face tracing.
//!
//! Darts are numbered `3·switch + slot`, and the slots are listed in
//! counterclockwise order: large, small right, small left. The cusp of a switch
//! is the corner running counterclockwise from its small right slot to its small
//! left slot.

mod canon;
pub(crate) mod lp;
mod parse;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numberfield::{Field, FieldError, NFElement};

pub use canon::{isomorphisms, CanonicalForm};
pub use parse::{parse_track, validate_text};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("branch end {0} is not attached to any switch")]
    DanglingBranchEnd(String),
    #[error("branch end {0} occupies more than one slot")]
    SlotReuse(String),
    #[error("switch {0} is not trivalent")]
    NonGeneric(String),
    #[error("track does not fill the surface")]
    NotFilling,
    #[error("measure has {got} weights for {want} branches")]
    MeasureLength { got: usize, want: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchEnd {
    pub branch: usize,
    pub end: u8,
}

impl BranchEnd {
    pub fn new(branch: usize, end: u8) -> Self {
        BranchEnd { branch, end }
    }

    pub fn other(self) -> Self {
        BranchEnd { branch: self.branch, end: 1 - self.end }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Large = 0,
    SmallRight = 1,
    SmallLeft = 2,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Large, Slot::SmallRight, Slot::SmallLeft];

    pub fn from_index(i: usize) -> Slot {
        Slot::ALL[i % 3]
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::Large => "large",
            Slot::SmallRight => "small_right",
            Slot::SmallLeft => "small_left",
        }
    }
}

/// Slots of one switch, indexed by `Slot as usize`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Switch(pub [BranchEnd; 3]);

impl Switch {
    pub fn new(large: BranchEnd, small_left: BranchEnd, small_right: BranchEnd) -> Self {
        Switch([large, small_right, small_left])
    }

    pub fn large(&self) -> BranchEnd {
        self.0[0]
    }

    pub fn small_right(&self) -> BranchEnd {
        self.0[1]
    }

    pub fn small_left(&self) -> BranchEnd {
        self.0[2]
    }

    pub fn slot(&self, s: Slot) -> BranchEnd {
        self.0[s as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainTrack {
    pub(crate) genus: usize,
    pub(crate) punctures: usize,
    pub(crate) branch_names: Vec<String>,
    pub(crate) switch_names: Vec<String>,
    pub(crate) switches: Vec<Switch>,
    /// Per switch: the region holding this switch's cusp carries a puncture.
    pub(crate) punctured: Vec<bool>,
    /// Dart holding each branch end.
    pub(crate) loc: Vec<[usize; 2]>,
}

/// Exact branch weights, indexed by branch id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub weights: Vec<NFElement>,
}

impl Measure {
    pub fn new(weights: Vec<NFElement>) -> Self {
        Measure { weights }
    }

    pub fn field(&self) -> Option<&Field> {
        self.weights.first().map(|w| w.field())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|w| w.sign() > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    /// Leaving darts in traversal order; each dart occurs in exactly one region.
    pub darts: Vec<usize>,
    /// Switches whose cusp lies on this region, in traversal order.
    pub cusps: Vec<usize>,
    pub punctured: bool,
    /// Number of puncture marks placed in the region (more than one is invalid).
    pub marks: usize,
}

impl Region {
    pub fn cusp_count(&self) -> usize {
        self.cusps.len()
    }

    /// Traversed branch ends: each entry leaves its switch along its branch.
    pub fn boundary(&self, t: &TrainTrack) -> Vec<BranchEnd> {
        self.darts.iter().map(|&d| t.dart_end(d)).collect()
    }

    /// Euler condition for a complementary region: k ≥ 3, or k ≥ 1 when punctured.
    pub fn euler_ok(&self) -> bool {
        if self.punctured {
            self.cusp_count() >= 1
        } else {
            self.cusp_count() >= 3
        }
    }
}

/// Face decomposition of a track.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub regions: Vec<Region>,
    /// Region index of each leaving dart.
    pub of_dart: Vec<usize>,
}

impl Faces {
    /// Region containing the cusp of switch `w`.
    pub fn of_cusp(&self, t: &TrainTrack, w: usize) -> usize {
        self.of_dart[t.alpha(3 * w + Slot::SmallRight as usize)]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub generic: bool,
    pub filling: bool,
    pub euler: bool,
    pub switch_conditions: bool,
    pub positive: bool,
    pub recurrent: bool,
    pub genus: Option<usize>,
    pub s: usize,
    pub l: usize,
    pub kappa: usize,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.generic && self.filling && self.euler && self.switch_conditions && self.positive && self.recurrent
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generic: {}", self.generic)?;
        writeln!(f, "filling: {}", self.filling)?;
        writeln!(f, "euler: {}", self.euler)?;
        writeln!(f, "switch_conditions: {}", self.switch_conditions)?;
        writeln!(f, "positive: {}", self.positive)?;
        writeln!(f, "recurrent: {}", self.recurrent)?;
        match self.genus {
            Some(g) => writeln!(f, "genus: {g}")?,
            None => writeln!(f, "genus: undefined")?,
        }
        writeln!(f, "switches: {}", self.s)?;
        writeln!(f, "branches: {}", self.l)?;
        writeln!(f, "regions: {}", self.kappa)?;
        for p in &self.problems {
            writeln!(f, "problem: {p}")?;
        }
        Ok(())
    }
}

impl TrainTrack {
    /// Assembles a track, checking that every branch end occupies exactly one slot.
    pub fn new(
        genus: usize,
        punctures: usize,
        branch_names: Vec<String>,
        switch_names: Vec<String>,
        switches: Vec<Switch>,
        punctured: Vec<bool>,
    ) -> Result<Self, TrackError> {
        let l = branch_names.len();
        let mut loc = vec![[usize::MAX; 2]; l];
        for (w, sw) in switches.iter().enumerate() {
            for (k, be) in sw.0.iter().enumerate() {
                if be.branch >= l || be.end > 1 {
                    return Err(TrackError::DanglingBranchEnd(format!("{}.{}", be.branch, be.end)));
                }
                let slot = &mut loc[be.branch][be.end as usize];
                if *slot != usize::MAX {
                    return Err(TrackError::SlotReuse(format!("{}.{}", branch_names[be.branch], be.end)));
                }
                *slot = 3 * w + k;
            }
        }
        for (b, ends) in loc.iter().enumerate() {
            for (e, &d) in ends.iter().enumerate() {
                if d == usize::MAX {
                    return Err(TrackError::DanglingBranchEnd(format!("{}.{}", branch_names[b], e)));
                }
            }
        }
        let punctured = if punctured.len() == switches.len() { punctured } else { vec![false; switches.len()] };
        Ok(TrainTrack { genus, punctures, branch_names, switch_names, switches, punctured, loc })
    }

    pub fn num_switches(&self) -> usize {
        self.switches.len()
    }

    pub fn num_branches(&self) -> usize {
        self.branch_names.len()
    }

    /// Genus declared in the file header.
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    pub fn switches(&self) -> &[Switch] {
        &self.switches
    }

    pub fn switch(&self, w: usize) -> &Switch {
        &self.switches[w]
    }

    pub fn branch_name(&self, b: usize) -> &str {
        &self.branch_names[b]
    }

    pub fn branch_names(&self) -> &[String] {
        &self.branch_names
    }

    pub fn switch_name(&self, w: usize) -> &str {
        &self.switch_names[w]
    }

    pub fn switch_names(&self) -> &[String] {
        &self.switch_names
    }

    pub fn branch_by_name(&self, name: &str) -> Option<usize> {
        self.branch_names.iter().position(|n| n == name)
    }

    pub fn is_punctured_mark(&self, w: usize) -> bool {
        self.punctured[w]
    }

    pub fn dart_end(&self, d: usize) -> BranchEnd {
        self.switches[d / 3].0[d % 3]
    }

    pub fn dart_of(&self, be: BranchEnd) -> usize {
        self.loc[be.branch][be.end as usize]
    }

    /// Switch and slot holding a branch end.
    pub fn position(&self, be: BranchEnd) -> (usize, Slot) {
        let d = self.dart_of(be);
        (d / 3, Slot::from_index(d % 3))
    }

    /// The dart at the other end of the same branch.
    pub fn alpha(&self, d: usize) -> usize {
        self.dart_of(self.dart_end(d).other())
    }

    /// Counterclockwise successor at the same switch.
    pub fn sigma(d: usize) -> usize {
        3 * (d / 3) + (d % 3 + 1) % 3
    }

    pub fn sigma_inv(d: usize) -> usize {
        3 * (d / 3) + (d % 3 + 2) % 3
    }

    /// Branches whose two ends both occupy large slots.
    pub fn is_large(&self, b: usize) -> bool {
        self.loc[b].iter().all(|&d| d % 3 == Slot::Large as usize)
    }

    pub fn large_branches(&self) -> Vec<usize> {
        (0..self.num_branches()).filter(|&b| self.is_large(b)).collect()
    }

    /// A mixed branch has exactly one large end.
    pub fn is_mixed(&self, b: usize) -> bool {
        self.loc[b].iter().filter(|&&d| d % 3 == Slot::Large as usize).count() == 1
    }

    pub(crate) fn set_slot(&mut self, w: usize, s: Slot, be: BranchEnd) {
        self.switches[w].0[s as usize] = be;
        self.loc[be.branch][be.end as usize] = 3 * w + s as usize;
    }

    pub fn is_connected(&self) -> bool {
        let s = self.num_switches();
        if s == 0 {
            return false;
        }
        let mut seen = vec![false; s];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(w) = stack.pop() {
            for k in 0..3 {
                let v = self.alpha(3 * w + k) / 3;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Orbits of `h ↦ σ(α(h))` on leaving darts.
    pub fn faces(&self) -> Faces {
        let n = 3 * self.num_switches();
        let mut of_dart = vec![usize::MAX; n];
        let mut regions = Vec::new();
        for start in 0..n {
            if of_dart[start] != usize::MAX {
                continue;
            }
            let idx = regions.len();
            let mut darts = Vec::new();
            let mut cusps = Vec::new();
            let mut marks = 0;
            let mut h = start;
            loop {
                of_dart[h] = idx;
                darts.push(h);
                let a = self.alpha(h);
                if a % 3 == Slot::SmallRight as usize {
                    cusps.push(a / 3);
                    if self.punctured[a / 3] {
                        marks += 1;
                    }
                }
                h = Self::sigma(a);
                if h == start {
                    break;
                }
            }
            regions.push(Region { darts, cusps, punctured: marks > 0, marks });
        }
        Faces { regions, of_dart }
    }

    pub fn regions(&self) -> Vec<Region> {
        self.faces().regions
    }

    /// Euler characteristic of the closed-up surface, s − l + κ.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_switches() as i64 - self.num_branches() as i64 + self.faces().regions.len() as i64
    }

    /// Genus of the ribbon surface, when the Euler characteristic is even and at most 2.
    pub fn derived_genus(&self) -> Option<usize> {
        let chi = self.euler_characteristic();
        if chi > 2 || chi % 2 != 0 {
            return None;
        }
        Some(((2 - chi) / 2) as usize)
    }

    /// Connected, genus as declared, at most one puncture per region and the declared puncture count.
    pub fn is_filling(&self) -> bool {
        if !self.is_connected() || self.derived_genus() != Some(self.genus) {
            return false;
        }
        let f = self.faces();
        f.regions.iter().all(|r| r.marks <= 1) && f.regions.iter().filter(|r| r.punctured).count() == self.punctures
    }

    /// Switch matrix: row w is `μ(large) − μ(small_right) − μ(small_left)`.
    pub fn switch_matrix(&self) -> Vec<Vec<BigRational>> {
        let l = self.num_branches();
        let mut a = vec![vec![BigRational::zero(); l]; self.num_switches()];
        for (w, sw) in self.switches.iter().enumerate() {
            a[w][sw.large().branch] += BigRational::one();
            a[w][sw.small_right().branch] -= BigRational::one();
            a[w][sw.small_left().branch] -= BigRational::one();
        }
        a
    }

    /// Exact recurrence test: some measure has every weight at least 1.
    pub fn is_recurrent(&self) -> bool {
        self.positive_rational_measure().is_some()
    }

    /// A rational measure with all weights ≥ 1, if the track is recurrent.
    pub fn positive_rational_measure(&self) -> Option<Vec<BigRational>> {
        let a = self.switch_matrix();
        // μ = 1 + y with y ≥ 0, so A y = −A·1
        let b: Vec<BigRational> = a.iter().map(|row| -row.iter().sum::<BigRational>()).collect();
        let y = lp::feasible_point(&a, &b)?;
        Some(y.into_iter().map(|v| v + BigRational::one()).collect())
    }

    pub fn validate(&self, m: Option<&Measure>) -> ValidationReport {
        let faces = self.faces();
        let mut rep = ValidationReport {
            generic: true,
            s: self.num_switches(),
            l: self.num_branches(),
            kappa: faces.regions.len(),
            genus: self.derived_genus(),
            ..Default::default()
        };
        rep.filling = self.is_filling();
        if !rep.filling {
            if !self.is_connected() {
                rep.problems.push("track is disconnected".into());
            }
            if rep.genus != Some(self.genus) {
                rep.problems.push(format!("derived genus {:?} differs from declared genus {}", rep.genus, self.genus));
            }
            if faces.regions.iter().any(|r| r.marks > 1) {
                rep.problems.push("a region carries more than one puncture".into());
            }
        }
        rep.euler = faces.regions.iter().all(Region::euler_ok);
        if !rep.euler {
            rep.problems.push("a complementary region violates the Euler condition".into());
        }
        match m {
            Some(m) => match check_measure(self, m) {
                Ok(ok) => {
                    rep.switch_conditions = ok;
                    rep.positive = m.is_positive();
                    if !ok {
                        rep.problems.push("measure violates a switch condition".into());
                    }
                    if !rep.positive {
                        rep.problems.push("measure is not positive".into());
                    }
                }
                Err(e) => rep.problems.push(e.to_string()),
            },
            None => rep.problems.push("no measure supplied".into()),
        }
        rep.recurrent = self.is_recurrent();
        if !rep.recurrent {
            rep.problems.push("track supports no positive measure".into());
        }
        rep
    }

    pub fn dual_triangulation(&self) -> Result<DualTriangulation, TrackError> {
        if !self.is_filling() {
            return Err(TrackError::NotFilling);
        }
        let f = self.faces();
        let edges = (0..self.num_branches()).map(|b| (f.of_dart[self.loc[b][0]], f.of_dart[self.loc[b][1]])).collect();
        let triangles = self.switches.iter().map(|sw| [sw.0[0].branch, sw.0[1].branch, sw.0[2].branch]).collect();
        Ok(DualTriangulation { vertices: f.regions.len(), edges, triangles })
    }

    /// All maximal diagonal extensions, one triangulation per region polygon.
    pub fn diagonal_extensions(&self) -> Vec<DiagonalExtension> {
        let mut acc: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for r in self.regions() {
            let tris = polygon_triangulations(r.cusps.len());
            let mut next = Vec::with_capacity(acc.len() * tris.len());
            for base in &acc {
                for tri in &tris {
                    let mut d = base.clone();
                    d.extend(tri.iter().map(|&(i, j)| ordered(r.cusps[i], r.cusps[j])));
                    next.push(d);
                }
            }
            acc = next;
        }
        acc.into_iter()
            .map(|mut d| {
                d.sort();
                DiagonalExtension { diagonals: d }
            })
            .collect()
    }

    /// Serialises in the track file format.
    pub fn to_text(&self, m: Option<&Measure>) -> String {
        let mut s = format!("surface genus={} punctures={}\n", self.genus, self.punctures);
        for n in &self.branch_names {
            s += &format!("branch {n}\n");
        }
        let be = |e: BranchEnd| format!("{}.{}", self.branch_names[e.branch], e.end);
        for (w, sw) in self.switches.iter().enumerate() {
            s += &format!(
                "switch {}: large={} small_left={} small_right={}\n",
                self.switch_names[w],
                be(sw.large()),
                be(sw.small_left()),
                be(sw.small_right())
            );
        }
        for (w, &p) in self.punctured.iter().enumerate() {
            if p {
                s += &format!("puncture in region containing cusp {}\n", self.switch_names[w]);
            }
        }
        if let Some(m) = m {
            if let Some(f) = m.field() {
                s += &f.declaration();
                s.push('\n');
            }
            for (b, w) in m.weights.iter().enumerate() {
                s += &format!("measure {} = {}\n", self.branch_names[b], w);
            }
        }
        s
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Exact check of every switch condition and nonnegativity.
pub fn check_measure(t: &TrainTrack, m: &Measure) -> Result<bool, TrackError> {
    if m.len() != t.num_branches() {
        return Err(TrackError::MeasureLength { got: m.len(), want: t.num_branches() });
    }
    if let Some(f) = m.field() {
        if m.weights.iter().any(|w| w.field() != f) {
            return Err(FieldError::FieldMismatch.into());
        }
    }
    if m.weights.iter().any(|w| w.sign() < 0) {
        return Ok(false);
    }
    for sw in &t.switches {
        let w = &m.weights;
        let rhs = &w[sw.small_left().branch] + &w[sw.small_right().branch];
        if w[sw.large().branch] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Triangulation dual to a filling track.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTriangulation {
    pub vertices: usize,
    /// Per branch, the regions on its two sides.
    pub edges: Vec<(usize, usize)>,
    /// Per switch, the dual edges in counterclockwise order.
    pub triangles: Vec<[usize; 3]>,
}

impl DualTriangulation {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Triangles up to cyclic rotation, sorted; identifies the triangulation with edge labels fixed.
    pub fn signature(&self) -> Vec<[usize; 3]> {
        let mut v: Vec<[usize; 3]> = self.triangles.iter().map(|t| min_rotation(*t)).collect();
        v.sort();
        v
    }

    /// Flip of edge `e`: triangles (e,p,q), (e,r,t) become (e,q,r), (e,t,p).
    pub fn whitehead(&self, e: usize) -> Option<DualTriangulation> {
        let holders: Vec<usize> = (0..self.triangles.len()).filter(|&i| self.triangles[i].contains(&e)).collect();
        if holders.len() != 2 || holders.iter().any(|&i| self.triangles[i].iter().filter(|&&x| x == e).count() != 1) {
            return None;
        }
        let rot = |t: [usize; 3]| {
            let k = t.iter().position(|&x| x == e).unwrap();
            [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
        };
        let [_, p, q] = rot(self.triangles[holders[0]]);
        let [_, r, t] = rot(self.triangles[holders[1]]);
        let mut triangles = self.triangles.clone();
        triangles[holders[0]] = [e, q, r];
        triangles[holders[1]] = [e, t, p];
        Some(DualTriangulation { vertices: self.vertices, edges: self.edges.clone(), triangles })
    }
}

fn min_rotation(t: [usize; 3]) -> [usize; 3] {
    let r = [t, [t[1], t[2], t[0]], [t[2], t[0], t[1]]];
    *r.iter().min().unwrap()
}

/// Diagonals as unordered pairs of cusp switches within one region.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalExtension {
    pub diagonals: Vec<(usize, usize)>,
}

/// Triangulations of a convex k-gon on vertices 0..k as diagonal lists.
pub fn polygon_triangulations(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k < 4 {
        return vec![Vec::new()];
    }
    fn rec(i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
        if j <= i + 1 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in i + 1..j {
            for left in rec(i, m) {
                for right in rec(m, j) {
                    let mut d = left.clone();
                    d.extend(right.iter().copied());
                    if m > i + 1 {
                        d.push((i, m));
                    }
                    if j > m + 1 {
                        d.push((m, j));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    rec(0, k - 1)
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}
