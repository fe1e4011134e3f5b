//! Canonical labelling of tracks up to orientation-preserving isomorphism.

use std::collections::VecDeque;

use super::TrainTrack;

/// Lexicographically least breadth-first code over all starting switches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub code: Vec<u32>,
    /// Every switch relabelling (old id → canonical label) that attains `code`.
    pub labellings: Vec<Vec<usize>>,
}

impl TrainTrack {
    /// Code of the breadth-first labelling from `start`; `None` when disconnected.
    fn bfs_code(&self, start: usize) -> Option<(Vec<u32>, Vec<usize>)> {
        let s = self.num_switches();
        let mut label = vec![usize::MAX; s];
        let mut order = Vec::with_capacity(s);
        let mut q = VecDeque::new();
        label[start] = 0;
        order.push(start);
        q.push_back(start);
        while let Some(w) = q.pop_front() {
            for k in 0..3 {
                let v = self.alpha(3 * w + k) / 3;
                if label[v] == usize::MAX {
                    label[v] = order.len();
                    order.push(v);
                    q.push_back(v);
                }
            }
        }
        if order.len() != s {
            return None;
        }
        let mut code = Vec::with_capacity(4 * s);
        for &w in &order {
            for k in 0..3 {
                let a = self.alpha(3 * w + k);
                code.push((3 * label[a / 3] + a % 3) as u32);
            }
            code.push(self.punctured[w] as u32);
        }
        Some((code, label))
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let mut best: Option<Vec<u32>> = None;
        let mut labellings = Vec::new();
        for start in 0..self.num_switches() {
            let Some((code, label)) = self.bfs_code(start) else {
                continue;
            };
            match &best {
                Some(b) if code > *b => {}
                Some(b) if code == *b => labellings.push(label),
                _ => {
                    best = Some(code);
                    labellings = vec![label];
                }
            }
        }
        CanonicalForm { code: best.unwrap_or_default(), labellings }
    }

    /// Branch map induced by a switch map into `other`.
    pub fn branch_map(&self, other: &TrainTrack, switch_map: &[usize]) -> Vec<usize> {
        (0..self.num_branches())
            .map(|b| {
                let d = self.loc[b][0];
                other.dart_end(3 * switch_map[d / 3] + d % 3).branch
            })
            .collect()
    }
}

/// All switch maps `a → b` that carry slots to like slots and preserve puncture marks.
pub fn isomorphisms(a: &TrainTrack, b: &TrainTrack) -> Vec<Vec<usize>> {
    let ca = a.canonical_form();
    let cb = b.canonical_form();
    if ca.code != cb.code || ca.labellings.is_empty() {
        return Vec::new();
    }
    let la = &ca.labellings[0];
    cb.labellings
        .iter()
        .map(|lb| {
            let mut inv = vec![0; lb.len()];
            for (w, &x) in lb.iter().enumerate() {
                inv[x] = w;
            }
            la.iter().map(|&x| inv[x]).collect()
        })
        .collect()
}
