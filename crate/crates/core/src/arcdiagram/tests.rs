use num_bigint::BigInt;
use proptest::prelude::*;

use super::homology::{boundary_cycles, slide_matrix};
use super::*;
use crate::lattice::{determinant, mul_vec, trace};
use crate::matrix;
use crate::splitting::{find_agol_cycle, split_combinatorial, SplitCase, SplitEvent};
use crate::traintrack::parse_track;

const TORUS: &str = include_str!("../../../../fixtures/tracks/torus.track");
const SPHERE4: &str = include_str!("../../../../fixtures/tracks/sphere4.track");

fn torus() -> TrainTrack {
    parse_track(TORUS).unwrap().0
}

fn gaps(face: &[Dart]) -> usize {
    face.iter().filter(|d| matches!(d, Dart::Gap(_))).count()
}

#[test]
fn torus_diagram_counts() {
    let d = arc_diagram_from_track(&torus());
    assert_eq!(d.intervals.len(), 2);
    assert_eq!(d.num_points(), 6);
    assert_eq!(d.handles, 3);
    assert_eq!(d.euler_characteristic(), -1);
    // one region with two cusps: one boundary component through both gaps
    let faces = d.faces();
    assert_eq!(faces.len(), 1);
    assert_eq!(gaps(&faces[0]), 2);
    assert!(!d.is_special());
}

#[test]
fn torus_special_diagram() {
    let t = torus();
    let sigma = SpecialMark::new(&t, [0]).unwrap();
    let d = special_arc_diagram(&t, &sigma).unwrap();
    assert_eq!(d.intervals[0].len(), 3);
    assert_eq!(d.intervals[1].len(), 5);
    assert!(d.is_special());
    assert!(matches!(SpecialMark::new(&t, [0, 1]), Err(ArcError::InvalidMark(_))));
    assert!(matches!(SpecialMark::new(&t, []), Err(ArcError::InvalidMark(_))));
}

#[test]
fn arcslide_rule() {
    // points 1,2,3,4 as h0.0, h1.0, h0.1, h1.1
    let d = ArcDiagram::new(vec![vec![0, 2, 1, 3]], 2).unwrap();
    // 2 sits above 1, so it lands just below 3, which is where it already was
    let s = Arcslide::new(&d, 2, 0).unwrap();
    assert_eq!(s.apply().intervals, vec![vec![0, 2, 1, 3]]);
    // 1 sits below 2, so it lands just above 4
    let s = Arcslide::new(&d, 0, 2).unwrap();
    assert_eq!(s.apply().intervals, vec![vec![2, 1, 3, 0]]);
    assert_eq!(Arcslide::new(&d, 0, 1), Err(ArcError::SameHandle));
    assert_eq!(Arcslide::new(&d, 0, 3), Err(ArcError::NotAdjacent(0, 3)));
}

#[test]
fn arcslide_inverse() {
    let d = arc_diagram_from_track(&torus());
    for iv in &d.intervals {
        for w in iv.windows(2) {
            for (slid, over) in [(w[0], w[1]), (w[1], w[0])] {
                let after = Arcslide::new(&d, slid, over).unwrap().apply();
                let back = Arcslide::new(&after, slid, over ^ 1).unwrap().apply();
                assert_eq!(back, d);
            }
        }
    }
}

fn check_round_trip(text: &str) {
    let (t, m) = parse_track(text).unwrap();
    let c = find_agol_cycle(&t, &m.unwrap(), 200).unwrap();
    for step in &c.steps {
        let mut track = step.track.clone();
        for &ev in &step.events {
            let d = arc_diagram_from_track(&track);
            let (a, b) = split_to_arcslides(&d, ev).unwrap();
            assert_eq!(b.diagram, a.apply());
            let (t2, _) = split_combinatorial(&track, ev.branch, ev.case).unwrap();
            assert_eq!(b.apply(), arc_diagram_from_track(&t2));
            track = t2;
        }
    }
}

#[test]
fn split_slides_round_trip() {
    check_round_trip(TORUS);
    check_round_trip(SPHERE4);
}

#[test]
fn central_split_has_no_slides() {
    let d = arc_diagram_from_track(&torus());
    let ev = SplitEvent { branch: 0, case: SplitCase::Central };
    assert_eq!(split_to_arcslides(&d, ev).unwrap_err(), ArcError::CentralSplit);
    let sigma = SpecialMark::canonical(&torus());
    assert_eq!(sigma_transport(&torus(), ev, &sigma).unwrap_err(), ArcError::CentralSplit);
}

#[test]
fn sigma_transport_keeps_switch_ids() {
    let t = torus();
    let sigma = SpecialMark::new(&t, [1]).unwrap();
    let ev = SplitEvent { branch: 0, case: SplitCase::Left };
    assert_eq!(sigma_transport(&t, ev, &sigma).unwrap(), sigma);
}

#[test]
fn torus_factorization() {
    let (t, m) = parse_track(TORUS).unwrap();
    let c = find_agol_cycle(&t, &m.unwrap(), 50).unwrap();
    for star in [0, 1] {
        let sigma = SpecialMark::new(c.start().0, [star]).unwrap();
        let seq = factorize(&c, &sigma).unwrap();
        assert!(seq.is_loop());
        let pre = c.iso_switch.iter().position(|&y| y == star).unwrap();
        let adjust = boundary_adjustment(&sigma, &SpecialMark::new(c.start().0, [pre]).unwrap(), c.start().0).unwrap();
        let splits: usize = c.steps.iter().map(|s| s.events.len()).sum();
        assert_eq!(seq.len(), 2 * splits + adjust.len());
        let act = h1_action(&seq).unwrap();
        assert_eq!(act.capped.len(), 2);
        assert_eq!(trace(&act.capped), BigInt::from(3));
        assert_eq!(determinant(&act.capped), BigInt::from(1));
        assert_eq!(determinant(&act.full).magnitude(), BigInt::from(1).magnitude());
    }
}

#[test]
fn adjustment_loops_act_trivially() {
    let (t, _) = parse_track(SPHERE4).unwrap();
    let regions = t.regions();
    let first = SpecialMark::canonical(&t);
    let other = SpecialMark::new(&t, regions.iter().map(|r| *r.cusps.iter().max().unwrap())).unwrap();
    let mut seq = boundary_adjustment(&first, &other, &t).unwrap();
    assert!(seq.end.structurally_equal(&special_arc_diagram(&t, &other).unwrap()));
    let back = boundary_adjustment_from(&seq.end, &t, &other, &first).unwrap();
    seq.extend(&back).unwrap();
    assert!(seq.is_loop());
    let act = h1_action(&seq).unwrap();
    assert_eq!(act.capped, matrix::identity(act.capped.len()));
    assert!(boundary_adjustment(&first, &first, &t).unwrap().is_empty());
}

#[test]
fn torus_adjustment_is_identity() {
    let t = torus();
    let a = SpecialMark::new(&t, [0]).unwrap();
    let b = SpecialMark::new(&t, [1]).unwrap();
    let mut seq = boundary_adjustment(&a, &b, &t).unwrap();
    assert!(!seq.is_empty());
    let back = boundary_adjustment_from(&seq.end, &t, &b, &a).unwrap();
    seq.extend(&back).unwrap();
    let act = h1_action(&seq).unwrap();
    assert_eq!(act.capped, matrix::identity(2));
}

fn sorted(mut v: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    v.sort();
    v
}

proptest! {
    #[test]
    fn slides_carry_boundaries(choices in proptest::collection::vec((0usize..64, any::<bool>()), 1..12)) {
        let t = parse_track(SPHERE4).unwrap().0;
        let mut d = special_arc_diagram(&t, &SpecialMark::canonical(&t)).unwrap();
        for (k, up) in choices {
            let p = k % d.num_points();
            let (i, j) = d.locate(p).unwrap();
            let nb = if up { d.intervals[i].get(j + 1) } else { j.checked_sub(1).map(|x| &d.intervals[i][x]) };
            let Some(&over) = nb else { continue };
            let Ok(s) = Arcslide::new(&d, p, over) else { continue };
            let after = s.apply();
            prop_assert!(after.is_special());
            let m = slide_matrix(&s);
            let pushed: Vec<Vec<BigInt>> = boundary_cycles(&after).iter().map(|z| mul_vec(&m, z)).collect();
            prop_assert_eq!(sorted(pushed), sorted(boundary_cycles(&d)));
            d = after;
        }
    }
}

#[test]
fn fixture_factorizations_are_loops() {
    let fixtures = [
        include_str!("../../../../fixtures/tracks/torus2.track"),
        include_str!("../../../../fixtures/tracks/genus2.track"),
        SPHERE4,
    ];
    for text in fixtures {
        let (t, m) = parse_track(text).unwrap();
        let c = find_agol_cycle(&t, &m.unwrap(), 400).unwrap();
        let start = c.start().0;
        let seq = factorize(&c, &SpecialMark::canonical(start)).unwrap();
        assert!(seq.start.is_special());
        let act = h1_action(&seq).unwrap();
        assert_eq!(act.capped.len(), 2 * start.genus());
        assert_eq!(determinant(&act.capped), BigInt::from(1));
    }
}
