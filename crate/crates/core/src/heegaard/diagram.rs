//! Assembly of the diagram: α-arcs from the track and the unstarred cusps,
//! β-circles from the basis, β-arcs from the reduced graph and the boundary
//! circles left unassigned by σ′.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{HeegaardError, NormalBasis, ReducedGraph};
use crate::arcdiagram::SpecialMark;
use crate::traintrack::TrainTrack;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlphaObject {
    /// The part of a branch outside the disks at the switches.
    Track(usize),
    /// Arc cutting off the sutures at an unstarred switch.
    Extra(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BetaObject {
    Circle(usize),
    /// Edge of the reduced graph.
    Edge(usize),
    /// Arc around a boundary circle not chosen by σ′.
    Extra(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Foot {
    Alpha(usize),
    Beta(usize),
}

/// The boundary circle around a switch. Going counterclockwise from the
/// cusp: the first suture, the β-feet, the second suture, then the α-feet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCircle {
    pub switch: usize,
    pub feet: Vec<Foot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderedSuturedDiagram {
    pub genus: usize,
    pub switches: usize,
    pub alpha: Vec<AlphaObject>,
    pub beta: Vec<BetaObject>,
    pub circles: Vec<BoundaryCircle>,
    /// Crossing counts, α objects by β objects.
    pub intersections: Vec<Vec<u64>>,
    pub sigma: Vec<usize>,
    /// Switch chosen for each face of the reduced graph.
    pub sigma_prime: Vec<usize>,
    /// The standard half diagram of the identity is glued along the β side;
    /// it changes no generator count, so it is recorded here only.
    pub half_identity_glued: bool,
    /// Largest number of α crossings on a single β-arc.
    pub max_beta_arc_crossings: u64,
}

impl BorderedSuturedDiagram {
    pub fn num_beta_circles(&self) -> usize {
        self.beta.iter().filter(|b| matches!(b, BetaObject::Circle(_))).count()
    }

    pub fn num_beta_arcs(&self) -> usize {
        self.beta.len() - self.num_beta_circles()
    }

    pub fn beta_column(&self, j: usize) -> u64 {
        self.intersections.iter().map(|r| r[j]).sum()
    }

    /// β-arc endpoints on the boundary circle of `w`, by β object.
    pub fn beta_feet(&self, w: usize) -> Vec<usize> {
        self.circles[w]
            .feet
            .iter()
            .filter_map(|f| match f {
                Foot::Beta(j) => Some(*j),
                Foot::Alpha(_) => None,
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "genus {}", self.genus);
        let _ = writeln!(s, "boundary_circles {}", self.switches);
        let _ = writeln!(s, "sutures_per_circle 2");
        let _ = writeln!(s, "half_identity_glued {}", self.half_identity_glued);
        for (i, a) in self.alpha.iter().enumerate() {
            let _ = match a {
                AlphaObject::Track(b) => writeln!(s, "alpha {i} track branch={b}"),
                AlphaObject::Extra(w) => writeln!(s, "alpha {i} extra switch={w}"),
            };
        }
        for (j, b) in self.beta.iter().enumerate() {
            let _ = match b {
                BetaObject::Circle(c) => writeln!(s, "beta {j} circle curve={c}"),
                BetaObject::Edge(e) => writeln!(s, "beta {j} arc edge={e}"),
                BetaObject::Extra(w) => writeln!(s, "beta {j} arc extra switch={w}"),
            };
        }
        for c in &self.circles {
            let feet: Vec<String> = c
                .feet
                .iter()
                .map(|f| match f {
                    Foot::Alpha(i) => format!("a{i}"),
                    Foot::Beta(j) => format!("b{j}"),
                })
                .collect();
            let _ = writeln!(s, "circle {}: {}", c.switch, feet.join(" "));
        }
        let _ = writeln!(s, "intersections {}x{}", self.alpha.len(), self.beta.len());
        for row in &self.intersections {
            let r: Vec<String> = row.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "  {}", r.join(" "));
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Alpha(usize),
    End(usize),
}

/// Builds the diagram and checks |α^a| = 2(g+s−1) and |β^a| = 2(g+s−m−1).
pub fn build_diagram(
    t: &TrainTrack,
    basis: &NormalBasis,
    graph: &ReducedGraph,
    sigma: &SpecialMark,
    sigma_prime: &[usize],
) -> Result<BorderedSuturedDiagram, HeegaardError> {
    if basis.is_empty() {
        return Err(HeegaardError::EmptyBasis);
    }
    sigma.check(t).map_err(|e| HeegaardError::Invariant(e.to_string()))?;
    let (s, l, m) = (t.num_switches(), t.num_branches(), basis.len());
    let g = t.genus();

    let mut alpha: Vec<AlphaObject> = (0..l).map(AlphaObject::Track).collect();
    let mut extra_alpha = vec![usize::MAX; s];
    for w in (0..s).filter(|w| !sigma.contains(*w)) {
        extra_alpha[w] = alpha.len();
        alpha.push(AlphaObject::Extra(w));
    }
    let mut beta: Vec<BetaObject> = (0..m).map(BetaObject::Circle).collect();
    let mut edge_col = vec![usize::MAX; graph.chains.len()];
    for e in graph.live_edges() {
        edge_col[e] = beta.len();
        beta.push(BetaObject::Edge(e));
    }
    let chosen: BTreeSet<usize> = sigma_prime.iter().copied().collect();
    let mut extra_beta = vec![usize::MAX; s];
    for w in (0..s).filter(|w| !chosen.contains(w)) {
        extra_beta[w] = beta.len();
        beta.push(BetaObject::Extra(w));
    }
    let mut x = vec![vec![0u64; beta.len()]; alpha.len()];

    for (b, c) in basis.crossings.iter().enumerate() {
        for &j in &c.arcs {
            x[b][j] += 1;
        }
        for p in &c.strips {
            if let Some(e) = graph.chain_of_piece(p) {
                x[b][edge_col[e]] += 1;
            }
        }
    }

    let mut circles = Vec::with_capacity(s);
    for w in 0..s {
        // counterclockwise from the cusp, before any sliding
        let mut items = Vec::new();
        if extra_alpha[w] != usize::MAX {
            items.push(Item::Alpha(extra_alpha[w]));
        }
        for slot in [2, 0, 1] {
            let h = 3 * w + slot;
            let be = t.dart_end(h);
            let after = basis.crossings[be.branch].ccw_after[be.end as usize];
            let live = graph.is_live(h);
            if live && !after {
                items.push(Item::End(h));
            }
            items.push(Item::Alpha(be.branch));
            if live && after {
                items.push(Item::End(h));
            }
        }
        if extra_alpha[w] != usize::MAX {
            items.push(Item::Alpha(extra_alpha[w]));
        }
        let ends: Vec<(usize, usize)> = items
            .iter()
            .enumerate()
            .filter_map(|(p, it)| if let Item::End(h) = it { Some((p, *h)) } else { None })
            .collect();
        let crossed = |q: usize, t_split: usize| -> Vec<usize> {
            let p = ends[q].0;
            let range: Box<dyn Iterator<Item = &Item>> =
                if q < t_split { Box::new(items[..p].iter()) } else { Box::new(items[p + 1..].iter()) };
            range.filter_map(|it| if let Item::Alpha(a) = it { Some(*a) } else { None }).collect()
        };
        let cost = |t_split: usize| (0..ends.len()).map(|q| crossed(q, t_split).len()).sum::<usize>();
        let d = ends.len();
        // σ′ fixes which end comes first on ∂_R; otherwise take the cheapest
        let first = sigma_prime.iter().position(|&v| v == w).and_then(|f| {
            graph.faces[f]
                .iter()
                .find(|&&h| graph.opposite(h) / 3 == w)
                .map(|&h| graph.next_at_vertex(graph.opposite(h)))
        });
        let options: Vec<usize> = match first {
            Some(j) => {
                let q = ends.iter().position(|&(_, h)| h == j).expect("live end");
                if q == 0 {
                    vec![0, d]
                } else {
                    vec![q]
                }
            }
            None => (0..=d).collect(),
        };
        let t_split = options.into_iter().min_by_key(|&o| (cost(o), o)).unwrap_or(0);
        for q in 0..d {
            let col = edge_col[graph.edge_of(ends[q].1)];
            for a in crossed(q, t_split) {
                x[a][col] += 1;
            }
        }
        let mut feet = Vec::new();
        let extra = extra_beta[w];
        if extra != usize::MAX {
            feet.push(Foot::Beta(extra));
        }
        for q in (t_split..d).chain(0..t_split) {
            feet.push(Foot::Beta(edge_col[graph.edge_of(ends[q].1)]));
        }
        if extra != usize::MAX {
            feet.push(Foot::Beta(extra));
        }
        for it in &items {
            if let Item::Alpha(a) = it {
                feet.push(Foot::Alpha(*a));
                if extra != usize::MAX {
                    x[*a][extra] += 1;
                }
            }
        }
        circles.push(BoundaryCircle { switch: w, feet });
    }

    let alpha_expected = 2 * (g + s - 1);
    if alpha.len() != alpha_expected {
        return Err(HeegaardError::Invariant(format!("{} alpha arcs, expected {alpha_expected}", alpha.len())));
    }
    let arcs = beta.len() - m;
    if g + s < m + 1 || arcs != 2 * (g + s - m - 1) {
        return Err(HeegaardError::Invariant(format!("{arcs} beta arcs for genus {g}, {s} switches, {m} curves")));
    }
    let max_beta_arc_crossings = (m..beta.len()).map(|j| x.iter().map(|r| r[j]).sum()).max().unwrap_or(0);
    Ok(BorderedSuturedDiagram {
        genus: g,
        switches: s,
        alpha,
        beta,
        circles,
        intersections: x,
        sigma: sigma.switches.iter().copied().collect(),
        sigma_prime: sigma_prime.to_vec(),
        half_identity_glued: true,
        max_beta_arc_crossings,
    })
}
