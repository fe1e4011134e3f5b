//! The graph dual to the pieces outside the basis, with degree-two pieces
//! smoothed, and its reduction to a graph whose faces on the surgered surface
//! all have at least three corners.

use std::collections::HashMap;

use super::{HeegaardError, NormalBasis, Piece};
use crate::traintrack::TrainTrack;

/// An edge of the dual graph: a chain of corner pieces between two half-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    /// Half-edges `3·switch + side` at the two ends.
    pub ends: [usize; 2],
    /// Corner pieces crossed, from `ends[0]` to `ends[1]`.
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Side of a bigon around a vertex of the triangulation.
    VertexBigon,
    /// Loop bounding a monogon capped by the surgery.
    CappedMonogon,
    /// Side of any remaining face with fewer than three corners.
    Bigon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub num_vertices: usize,
    pub chains: Vec<Chain>,
    pub alive: Vec<bool>,
    /// Edge deletions in order.
    pub removed: Vec<(usize, Reduction)>,
    /// Faces as dart orbits of `h ↦ σ(α(h))`, after reduction.
    pub faces: Vec<Vec<usize>>,
    /// Connected components of the graph, one per component of the surgered surface.
    pub components: usize,
    /// Whether two faces with fewer than three corners ever shared an edge.
    pub adjacent_small_faces: bool,
    piece_chain: HashMap<Piece, usize>,
    edge_at: Vec<usize>,
    corner_type: Vec<bool>,
}

/// Crosses the dual edge at dart `d`, segment `k`: either the central segment
/// of the far side (`Ok`) or the corner piece entered.
fn exit(t: &TrainTrack, basis: &NormalBasis, d: usize, k: u64) -> Result<usize, Piece> {
    let d2 = t.alpha(d);
    let x = basis.total.coords[t.dart_end(d).branch];
    let k2 = x - k;
    let (w2, i2) = (d2 / 3, d2 % 3);
    let a2 = basis.before(t, d2);
    if k2 == a2 {
        Ok(d2)
    } else if k2 < a2 {
        Err(Piece::Corner { switch: w2, corner: (i2 + 2) % 3, depth: k2 })
    } else {
        Err(Piece::Corner { switch: w2, corner: i2, depth: x - k2 })
    }
}

impl ReducedGraph {
    fn other_end(&self, h: usize) -> usize {
        let c = &self.chains[self.edge_of(h)];
        if c.ends[0] == h {
            c.ends[1]
        } else {
            c.ends[0]
        }
    }

    /// Edge containing half-edge `h`.
    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_at[h]
    }

    pub fn is_live(&self, h: usize) -> bool {
        self.alive[self.edge_of(h)]
    }

    /// Next live half-edge counterclockwise at the same vertex.
    pub fn next_at_vertex(&self, h: usize) -> usize {
        let w = h / 3;
        (1..=3).map(|k| 3 * w + (h % 3 + k) % 3).find(|&x| self.is_live(x)).unwrap_or(h)
    }

    /// `h ↦ σ(α(h))`.
    pub fn face_step(&self, h: usize) -> usize {
        self.next_at_vertex(self.other_end(h))
    }

    pub fn opposite(&self, h: usize) -> usize {
        self.other_end(h)
    }

    /// Chain carrying a corner piece, if it survives reduction.
    pub fn chain_of_piece(&self, p: &Piece) -> Option<usize> {
        self.piece_chain.get(p).copied().filter(|&e| self.alive[e])
    }

    pub fn live_edges(&self) -> Vec<usize> {
        (0..self.chains.len()).filter(|&e| self.alive[e]).collect()
    }

    /// Distinct vertices met by face `f`.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces[f].iter().map(|&h| self.opposite(h) / 3).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Faces with fewer than three corners.
    pub fn small_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].len() < 3).collect()
    }

    pub fn audit_passed(&self) -> bool {
        self.small_faces().is_empty()
    }

    fn recompute_faces(&mut self) {
        let n = 3 * self.num_vertices;
        let mut seen = vec![false; n];
        let mut faces = Vec::new();
        for h in 0..n {
            if seen[h] || !self.is_live(h) {
                continue;
            }
            let mut f = Vec::new();
            let mut cur = h;
            while !seen[cur] {
                seen[cur] = true;
                f.push(cur);
                cur = self.face_step(cur);
            }
            faces.push(f);
        }
        self.faces = faces;
    }

    /// 1 when every corner of the face touches a vertex of the triangulation,
    /// 2 when every corner faces the basis, 0 when mixed.
    fn face_type(&self, f: usize) -> u8 {
        let kinds: Vec<bool> = self.faces[f].iter().map(|&h| self.corner_type[self.opposite(h)]).collect();
        if kinds.iter().all(|&k| k) {
            1
        } else if kinds.iter().all(|&k| !k) {
            2
        } else {
            0
        }
    }

    fn face_of(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for (f, hs) in self.faces.iter().enumerate() {
            for &h in hs {
                m.insert(h, f);
            }
        }
        m
    }

    /// Smallest edge of face `f` whose other side is a different face.
    fn deletable(&self, f: usize, face_of: &HashMap<usize, usize>) -> Option<usize> {
        self.faces[f].iter().filter(|&&h| face_of[&self.opposite(h)] != f).map(|&h| self.edge_of(h)).min()
    }

    fn applies(&self, kind: Reduction, f: usize) -> bool {
        let n = self.faces[f].len();
        match kind {
            Reduction::VertexBigon => n == 2 && self.face_type(f) == 1,
            Reduction::CappedMonogon => n == 1 && self.face_type(f) == 2,
            Reduction::Bigon => n < 3,
        }
    }

    fn reduce(&mut self) {
        loop {
            self.recompute_faces();
            let face_of = self.face_of();
            let small = self.small_faces();
            for &f in &small {
                if self.faces[f]
                    .iter()
                    .any(|&h| small.contains(&face_of[&self.opposite(h)]) && face_of[&self.opposite(h)] != f)
                {
                    self.adjacent_small_faces = true;
                }
            }
            let mut step = None;
            'outer: for kind in [Reduction::VertexBigon, Reduction::CappedMonogon, Reduction::Bigon] {
                for f in 0..self.faces.len() {
                    if self.applies(kind, f) {
                        if let Some(e) = self.deletable(f, &face_of) {
                            step = Some((e, kind));
                            break 'outer;
                        }
                    }
                }
            }
            let Some((e, kind)) = step else { return };
            self.alive[e] = false;
            self.removed.push((e, kind));
        }
    }

    fn count_components(&self) -> usize {
        let n = self.num_vertices;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for c in self.chains.iter().zip(&self.alive).filter(|(_, &a)| a).map(|(c, _)| c) {
            let (a, b) = (find(&mut parent, c.ends[0] / 3), find(&mut parent, c.ends[1] / 3));
            parent[a] = b;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// Builds the dual graph of the pieces outside the basis and reduces it.
pub fn dual_graph(t: &TrainTrack, basis: &NormalBasis) -> Result<ReducedGraph, HeegaardError> {
    let s = t.num_switches();
    let total_pieces: u64 = s as u64 + (0..s).map(|w| basis.corners(t, w).iter().sum::<u64>()).sum::<u64>();
    let mut chains: Vec<Chain> = Vec::new();
    let mut covered = s as u64;
    for h in 0..3 * s {
        let mut pieces = Vec::new();
        let (mut d, mut k) = (h, basis.before(t, h));
        let end = loop {
            match exit(t, basis, d, k) {
                Ok(d2) => break d2,
                Err(p) => {
                    let Piece::Corner { switch, corner, depth } = p else { unreachable!() };
                    if pieces.len() as u64 > total_pieces {
                        return Err(HeegaardError::ComponentWithoutSwitch);
                    }
                    pieces.push(p);
                    let sides = basis.total.sides(t, switch);
                    let entered = t.alpha(d) % 3;
                    // a corner piece at corner j meets side j at x_j − depth and side j+1 at depth
                    if entered == corner {
                        d = 3 * switch + (corner + 1) % 3;
                        k = depth;
                    } else {
                        d = 3 * switch + corner;
                        k = sides[corner] - depth;
                    }
                }
            }
        };
        if h < end {
            covered += pieces.len() as u64;
            chains.push(Chain { ends: [h, end], pieces });
        } else if h == end {
            return Err(HeegaardError::Invariant("chain returned to its own half-edge".into()));
        }
    }
    // corner pieces on no chain form closed bands with no switch
    if covered != total_pieces {
        return Err(HeegaardError::ComponentWithoutSwitch);
    }
    let mut piece_chain = HashMap::new();
    for (e, c) in chains.iter().enumerate() {
        for p in &c.pieces {
            piece_chain.insert(*p, e);
        }
    }
    let corner_type = (0..3 * s).map(|h| basis.corners(t, h / 3)[h % 3] == 0).collect();
    let mut edge_at = vec![usize::MAX; 3 * s];
    for (e, c) in chains.iter().enumerate() {
        edge_at[c.ends[0]] = e;
        edge_at[c.ends[1]] = e;
    }
    let mut g = ReducedGraph {
        edge_at,
        num_vertices: s,
        alive: vec![true; chains.len()],
        chains,
        removed: Vec::new(),
        faces: Vec::new(),
        components: 0,
        adjacent_small_faces: false,
        piece_chain,
        corner_type,
    };
    g.reduce();
    g.components = g.count_components();
    Ok(g)
}

/// A system of distinct representatives: `options[i]` lists the right-hand
/// vertices allowed for left vertex i.
pub fn hall_matching(options: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; n_right];
    fn augment(i: usize, options: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &v in &options[i] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|j| augment(j, options, owner, seen)) {
                owner[v] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..options.len() {
        let mut seen = vec![false; n_right];
        if !augment(i, options, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; options.len()];
    for (v, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            out[*i] = v;
        }
    }
    Some(out)
}

/// σ′: an injection from faces to vertices on their boundary.
pub fn sigma_prime(g: &ReducedGraph) -> Result<Vec<usize>, HeegaardError> {
    let options: Vec<Vec<usize>> = (0..g.faces.len()).map(|f| g.face_vertices(f)).collect();
    hall_matching(&options, g.num_vertices).ok_or(HeegaardError::HallViolation)
}
