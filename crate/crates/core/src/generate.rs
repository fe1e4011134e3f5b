//! Random valid tracks and measures, and search for periodic split words.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::matrix::{self, IntMatrix};
use crate::numberfield::{rational_field, Field, NFElement};
use crate::splitting::{split_combinatorial, SplitCase};
use crate::traintrack::{isomorphisms, BranchEnd, Measure, Switch, TrainTrack};

/// Random filling, recurrent track with `s` switches on a surface of genus `g` with `p` punctures.
pub fn random_track<R: Rng>(rng: &mut R, s: usize, g: usize, p: usize, attempts: usize) -> Option<TrainTrack> {
    if !s.is_multiple_of(2) || s == 0 {
        return None;
    }
    let l = 3 * s / 2;
    for _ in 0..attempts {
        let mut darts: Vec<usize> = (0..3 * s).collect();
        darts.shuffle(rng);
        let mut slots = vec![BranchEnd::new(0, 0); 3 * s];
        for (b, pair) in darts.chunks(2).enumerate() {
            slots[pair[0]] = BranchEnd::new(b, 0);
            slots[pair[1]] = BranchEnd::new(b, 1);
        }
        let switches: Vec<Switch> =
            (0..s).map(|w| Switch([slots[3 * w], slots[3 * w + 1], slots[3 * w + 2]])).collect();
        let names = (0..l).map(|b| format!("b{b}")).collect();
        let snames = (0..s).map(|w| format!("s{w}")).collect();
        let Ok(mut t) = TrainTrack::new(g, p, names, snames, switches, vec![false; s]) else {
            continue;
        };
        if !t.is_connected() || t.derived_genus() != Some(g) {
            continue;
        }
        let regions = t.regions();
        let mut forced: Vec<usize> = (0..regions.len()).filter(|&r| regions[r].cusp_count() < 3).collect();
        if forced.len() > p || regions.iter().any(|r| r.cusp_count() == 0) || regions.len() < p {
            continue;
        }
        let mut rest: Vec<usize> = (0..regions.len()).filter(|r| !forced.contains(r)).collect();
        rest.shuffle(rng);
        forced.extend(rest.into_iter().take(p - forced.len()));
        for r in forced {
            t.punctured[regions[r].cusps[0]] = true;
        }
        if t.is_filling() && t.is_recurrent() {
            return Some(t);
        }
    }
    None
}

/// Integer basis of the rational kernel of the switch matrix.
pub fn measure_space_basis(t: &TrainTrack) -> Vec<Vec<BigRational>> {
    let mut a = t.switch_matrix();
    let n = t.num_branches();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// Random positive integer measure on a recurrent track.
pub fn random_measure<R: Rng>(rng: &mut R, t: &TrainTrack, spread: i64) -> Option<Measure> {
    let base = t.positive_rational_measure()?;
    let basis = measure_space_basis(t);
    let f = rational_field();
    for _ in 0..64 {
        let k = BigRational::from_integer(BigInt::from(rng.gen_range(1..=spread.max(1))));
        let mut w: Vec<BigRational> = base.iter().map(|x| x * &k).collect();
        for v in &basis {
            let c = BigRational::from_integer(BigInt::from(rng.gen_range(-spread..=spread)));
            for (x, y) in w.iter_mut().zip(v) {
                *x += &c * y;
            }
        }
        if w.iter().all(|x| x.is_positive()) {
            let mut lcm = BigInt::one();
            for x in &w {
                lcm = num_integer::Integer::lcm(&lcm, x.denom());
            }
            let l = BigRational::from_integer(lcm);
            return Some(Measure::new(w.into_iter().map(|x| NFElement::from_rational(&f, x * &l)).collect()));
        }
    }
    Some(Measure::new(base.into_iter().map(|x| NFElement::from_rational(&f, x)).collect()))
}

/// Rational measure lifted into another field.
pub fn lift_measure(m: &Measure, f: &Field) -> Measure {
    Measure::new(
        m.weights.iter().map(|w| NFElement::from_rational(f, w.as_rational().cloned().unwrap_or_default())).collect(),
    )
}

/// A primitive period matrix for a random walk of recurrent Left/Right splits
/// that returns to the starting track up to isomorphism.
pub fn periodic_word<R: Rng>(rng: &mut R, t: &TrainTrack, steps: usize) -> Option<(TrainTrack, IntMatrix)> {
    let start = t.canonical_form().code;
    let n = t.num_branches();
    let mut cur = t.clone();
    let mut e = matrix::identity(n);
    for _ in 0..steps {
        let mut large = cur.large_branches();
        large.shuffle(rng);
        let mut moved = None;
        'outer: for b in large {
            let mut cases = [SplitCase::Left, SplitCase::Right];
            cases.shuffle(rng);
            for c in cases {
                if let Ok((t2, el)) = split_combinatorial(&cur, b, c) {
                    if t2.is_recurrent() {
                        moved = Some((t2, el));
                        break 'outer;
                    }
                }
            }
        }
        let (t2, el) = moved?;
        e = matrix::mul(&e, &el)?;
        cur = t2;
        if cur.canonical_form().code != start {
            continue;
        }
        for iso in isomorphisms(&cur, t) {
            let beta = cur.branch_map(t, &iso);
            let mut p = matrix::zeros(n, n);
            for (r, row) in e.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    p[r][beta[c]] = x.clone();
                }
            }
            if crate::bounds::power_positive_k(&p).is_some() {
                return Some((t.clone(), p));
            }
        }
    }
    None
}
