use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use super::*;
use crate::arcdiagram::SpecialMark;
use crate::bounds::BoundReport;
use crate::splitting::find_agol_cycle;
use crate::traintrack::parse_track;

const TORUS: &str = include_str!("../../../../fixtures/tracks/torus.track");
const TORUS2: &str = include_str!("../../../../fixtures/tracks/torus2.track");
const GENUS2: &str = include_str!("../../../../fixtures/tracks/genus2.track");

fn track(text: &str) -> TrainTrack {
    parse_track(text).unwrap().0
}

fn basis(t: &TrainTrack, text: &str) -> Vec<NormalCurve> {
    parse_basis(t, text).unwrap()
}

fn fixtures() -> Vec<(TrainTrack, Vec<NormalCurve>)> {
    [
        (TORUS, include_str!("../../../../fixtures/bases/torus.basis")),
        (TORUS2, include_str!("../../../../fixtures/bases/torus2.basis")),
        (GENUS2, include_str!("../../../../fixtures/bases/genus2.basis")),
        (GENUS2, include_str!("../../../../fixtures/bases/genus2_single.basis")),
    ]
    .into_iter()
    .map(|(tt, bt)| {
        let t = track(tt);
        let b = basis(&t, bt);
        (t, b)
    })
    .collect()
}

fn pipeline(t: &TrainTrack, curves: &[NormalCurve]) -> (NormalBasis, ReducedGraph, BorderedSuturedDiagram) {
    let b = normalize_basis(t, curves).unwrap();
    let g = dual_graph(t, &b).unwrap();
    let sp = sigma_prime(&g).unwrap();
    let d = build_diagram(t, &b, &g, &SpecialMark::canonical(t), &sp).unwrap();
    (b, g, d)
}

/// Every valid connected normal curve with coordinates at most `max`.
fn candidates(t: &TrainTrack, max: u64) -> Vec<NormalCurve> {
    let l = t.num_branches();
    let mut out = Vec::new();
    let mut xs = vec![0u64; l];
    loop {
        if let Ok(c) = NormalCurve::new(t, xs.clone()) {
            if !c.is_empty() && c.components(t).len() == 1 && !is_vertex_link(t, &c) {
                out.push(c);
            }
        }
        let Some(i) = xs.iter().position(|&x| x < max) else {
            break;
        };
        xs[..i].iter_mut().for_each(|x| *x = 0);
        xs[i] += 1;
    }
    out
}

/// Brute force over every choice of one point (or none, for arcs) per β object.
fn brute_force(d: &BorderedSuturedDiagram) -> Option<BigUint> {
    let cols: Vec<Vec<Option<usize>>> = (0..d.beta.len())
        .map(|j| {
            let mut pts: Vec<Option<usize>> = Vec::new();
            if !matches!(d.beta[j], BetaObject::Circle(_)) {
                pts.push(None);
            }
            for (i, row) in d.intersections.iter().enumerate() {
                pts.extend(std::iter::repeat_n(Some(i), row[j] as usize));
            }
            pts
        })
        .collect();
    let total: u128 = cols.iter().map(|c| c.len() as u128).product();
    if total > 1_000_000 {
        return None;
    }
    let mut count = 0u64;
    for mut code in 0..total {
        let mut used = vec![false; d.alpha.len()];
        let mut ok = true;
        for c in &cols {
            let pick = c[(code % c.len() as u128) as usize];
            code /= c.len() as u128;
            if let Some(i) = pick {
                ok &= !std::mem::replace(&mut used[i], true);
            }
        }
        count += u64::from(ok);
    }
    Some(BigUint::from(count))
}

#[test]
fn basis_file_round_trip() {
    let t = track(GENUS2);
    let cs = basis(&t, include_str!("../../../../fixtures/bases/genus2.basis"));
    let b = normalize_basis(&t, &cs).unwrap();
    assert_eq!(parse_basis(&t, &b.to_text()).unwrap(), cs);
    assert!(matches!(parse_basis(&t, "curve c0 1 1 0"), Err(HeegaardError::Parse(_))));
}

#[test]
fn basis_errors() {
    let t = track(TORUS);
    assert_eq!(normalize_basis(&t, &[]).unwrap_err(), HeegaardError::EmptyBasis);
    let zero = NormalCurve::new(&t, vec![0, 0, 0]).unwrap();
    assert_eq!(normalize_basis(&t, &[zero]).unwrap_err(), HeegaardError::EmptyCurve(0));
    let crossing = basis(&t, include_str!("../../../../fixtures/bases/torus_crossing.basis"));
    assert_eq!(normalize_basis(&t, &crossing).unwrap_err(), HeegaardError::NotDisjoint);
    let double = NormalCurve::new(&t, vec![2, 2, 0]).unwrap();
    assert_eq!(normalize_basis(&t, &[double]).unwrap_err(), HeegaardError::NotConnected(0));
    // the link of a vertex crosses each dual edge once per side of the region it bounds
    let g2 = track(GENUS2);
    let f = g2.faces();
    let mut link = vec![0u64; g2.num_branches()];
    for &h in &f.regions[0].darts {
        link[g2.dart_end(h).branch] += 1;
    }
    let link = NormalCurve::new(&g2, link).unwrap();
    assert_eq!(normalize_basis(&g2, &[link]).unwrap_err(), HeegaardError::Inessential(0));
}

#[test]
fn parallel_copies_leave_a_component_without_switch() {
    let t = track(TORUS);
    let cs = basis(&t, include_str!("../../../../fixtures/bases/torus_parallel.basis"));
    let b = normalize_basis(&t, &cs).unwrap();
    assert_eq!(dual_graph(&t, &b).unwrap_err(), HeegaardError::ComponentWithoutSwitch);
}

#[test]
fn track_crossings_within_twice_length() {
    for (t, cs) in fixtures() {
        let b = normalize_basis(&t, &cs).unwrap();
        assert!(b.track_crossings() as u64 <= 2 * b.length());
        for c in &b.crossings {
            assert_eq!(c.strips.len(), c.arcs.len().saturating_sub(1));
        }
    }
}

#[test]
fn handlebody_basis_graph() {
    let t = track(GENUS2);
    let cs = basis(&t, include_str!("../../../../fixtures/bases/genus2.basis"));
    let (_, g, _) = pipeline(&t, &cs);
    assert_eq!(g.components, 1);
    assert!(g.audit_passed());
    assert!(!g.adjacent_small_faces);
    // Euler characteristic of the surgered sphere: v − e + f = 2
    let e = g.live_edges().len() as i64;
    assert_eq!(g.num_vertices as i64 - e + g.faces.len() as i64, 2);
}

#[test]
fn torus_graph_cannot_pass_the_corner_audit() {
    // on the surgered sphere with two vertices, f = e and 3f ≤ 2e fails
    let (t, cs) = fixtures().swap_remove(0);
    let (_, g, d) = pipeline(&t, &cs);
    assert_eq!(g.num_vertices, 2);
    assert!(!g.audit_passed());
    assert_eq!(g.faces.len(), g.live_edges().len());
    assert_eq!(d.num_beta_arcs(), 2);
}

#[test]
fn hall_matching_cases() {
    assert_eq!(hall_matching(&[vec![4, 2]], 5), Some(vec![4]));
    // three faces sharing vertices: augmenting paths reassign the first choice
    let m = hall_matching(&[vec![0, 1], vec![0], vec![1, 2]], 3).unwrap();
    assert_eq!(m, vec![1, 0, 2]);
    // three faces on two vertices
    assert_eq!(hall_matching(&[vec![0, 1], vec![0, 1], vec![0, 1]], 2), None);
}

#[test]
fn diagram_counts_on_fixtures() {
    for (t, cs) in fixtures() {
        let (b, g, d) = pipeline(&t, &cs);
        let (gg, s, m) = (t.genus(), t.num_switches(), cs.len());
        assert_eq!(d.alpha.len(), 2 * (gg + s - 1));
        assert_eq!(d.num_beta_circles(), m);
        assert_eq!(d.num_beta_arcs(), 2 * (gg + s - m - 1));
        assert_eq!(d.circles.len(), s);
        // β-circles meet only the track arcs, once per crossing of γ with τ
        let circle_total: u64 = (0..m).map(|j| d.beta_column(j)).sum();
        assert_eq!(circle_total, b.track_crossings() as u64);
        assert!(circle_total <= 2 * b.length());
        // σ′ is injective and lands on each face's boundary
        let mut seen = std::collections::BTreeSet::new();
        for (f, &w) in d.sigma_prime.iter().enumerate() {
            assert!(seen.insert(w));
            assert!(g.face_vertices(f).contains(&w));
        }
    }
}

#[test]
fn genus2_alpha_count() {
    // |α^a| = 2(g+s−1) with g = 2 and s = 6
    let t = track(GENUS2);
    let cs = basis(&t, include_str!("../../../../fixtures/bases/genus2.basis"));
    let (_, _, d) = pipeline(&t, &cs);
    assert_eq!(d.alpha.len(), 14);
}

#[test]
fn trivial_generator_counts() {
    let t = track(TORUS);
    let cs = basis(&t, include_str!("../../../../fixtures/bases/torus.basis"));
    let (_, _, mut d) = pipeline(&t, &cs);
    d.beta.truncate(1);
    for row in d.intersections.iter_mut() {
        row.truncate(1);
        row[0] = 0;
    }
    assert_eq!(count_generators(&d, false).count, BigUint::from(0u32));
    d.intersections[0][0] = 3;
    d.intersections[2][0] = 1;
    let gs = count_generators(&d, true);
    assert_eq!(gs.count, BigUint::from(4u32));
    assert_eq!(gs.generators.unwrap().len(), 4);
}

#[test]
fn generator_counts_match_brute_force() {
    let mut checked = 0;
    for (t, cs) in fixtures() {
        let (_, _, d) = pipeline(&t, &cs);
        let gs = count_generators(&d, false);
        assert_eq!(gs.by_size.iter().sum::<BigUint>(), gs.count);
        if let Some(bf) = brute_force(&d) {
            assert_eq!(gs.count, bf);
            checked += 1;
        }
    }
    assert!(checked >= 2);
}

#[test]
fn enumeration_agrees_with_count() {
    let (t, cs) = fixtures().swap_remove(1);
    let (_, _, d) = pipeline(&t, &cs);
    let gs = count_generators(&d, true);
    let list = gs.generators.unwrap();
    assert_eq!(BigUint::from(list.len()), gs.count);
    for gen in &list {
        for &(i, j, k) in gen {
            assert!(k < d.intersections[i][j]);
        }
        let circles = gen.iter().filter(|p| matches!(d.beta[p.1], BetaObject::Circle(_))).count();
        assert_eq!(circles, d.num_beta_circles());
    }
}

#[test]
fn tube_cutting_multipliers() {
    for (t, cs) in fixtures() {
        let (_, _, d) = pipeline(&t, &cs);
        let gs = count_generators(&d, false);
        let tube = attach_tube_cutting(&d, &gs);
        let cap = tube_bound(t.genus(), t.num_switches(), cs.len());
        let mut expected = gs.count.clone();
        for p in &tube.pieces {
            assert_eq!(p.first_kind, 2);
            assert!(BigInt::from(p.multiplier()) <= cap);
            expected *= p.multiplier();
        }
        assert_eq!(tube.count, expected);
    }
    // one circle, one generator: the bound 20(g+1−m)−18
    assert_eq!(tube_bound(1, 1, 1), BigInt::from(2));
    assert_eq!(tube_bound(2, 1, 1), BigInt::from(22));
}

#[test]
fn bound_verification() {
    for text in [TORUS, GENUS2] {
        let (t, m) = parse_track(text).unwrap();
        let c = find_agol_cycle(&t, &m.unwrap(), 400).unwrap();
        let start = c.start().0.clone();
        // the period starts on a split track, so take its shortest nonseparating curve
        let cs = vec![candidates(&start, 2)
            .into_iter()
            .filter(|c| {
                normalize_basis(&start, std::slice::from_ref(c))
                    .is_ok_and(|b| dual_graph(&start, &b).is_ok_and(|g| g.components == 1))
            })
            .min_by_key(NormalCurve::length)
            .unwrap()];
        let (b, _, d) = pipeline(&start, &cs);
        let tube = attach_tube_cutting(&d, &count_generators(&d, false));
        let mut rep = BoundReport::compute(&c).unwrap();
        assert!(verify_bound(&tube, &rep, b.length()).passed());
        assert!(BigInt::from(d.max_beta_arc_crossings) <= BigInt::from(2) * &rep.m_psi + 8);
        let mut inflated = tube.clone();
        inflated.count = rep.dd_bound.magnitude() + 1u32;
        assert!(matches!(verify_bound(&inflated, &rep, b.length()), BoundVerdict::Fail { .. }));
        rep.m_psi = BigInt::from(0);
        assert!(!verify_bound(&tube, &rep, b.length()).passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn single_curve_diagrams(k in 0usize..1000) {
        let t = track(GENUS2);
        let cs = candidates(&t, 2);
        let c = cs[k % cs.len()].clone();
        let b = normalize_basis(&t, &[c]).unwrap();
        prop_assert!(b.track_crossings() as u64 <= 2 * b.length());
        let g = dual_graph(&t, &b).unwrap();
        let sp = sigma_prime(&g).unwrap();
        let d = build_diagram(&t, &b, &g, &SpecialMark::canonical(&t), &sp).unwrap();
        // the surgered surface is connected exactly when the curve does not separate
        let m = 1;
        let arcs = if g.components == 1 { 2 * (2 + 6 - m - 1) } else { d.num_beta_arcs() };
        prop_assert_eq!(d.alpha.len(), 14);
        prop_assert_eq!(d.num_beta_arcs(), arcs);
    }
}
