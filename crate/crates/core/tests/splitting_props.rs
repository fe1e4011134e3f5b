//! Splits, shifts and maximal splits on random measured tracks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use splitseq::generate::{random_measure, random_track};
use splitseq::matrix;
use splitseq::splitting::{
    fold, incidence_compose, maximal_split, shift, split, CarryingMatrix, SplitCase, SplitError,
};
use splitseq::traintrack::{check_measure, Measure, TrainTrack};

const CASES: usize = 1000;

fn pool() -> Vec<TrainTrack> {
    let shapes = [(2, 1, 1), (4, 1, 2), (4, 0, 4), (6, 1, 3), (6, 2, 0), (8, 2, 1)];
    let mut out = Vec::new();
    for (i, &(s, g, p)) in shapes.iter().enumerate() {
        for seed in 0..6u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * i as u64 + seed);
            if let Some(t) = random_track(&mut rng, s, g, p, 4000) {
                out.push(t);
            }
        }
    }
    out
}

fn carried(elem: &CarryingMatrix, m: &Measure) -> Measure {
    Measure::new(elem.apply(&m.weights))
}

#[test]
fn random_measured_tracks() {
    let tracks = pool();
    assert!(tracks.len() >= 12, "only {} tracks generated", tracks.len());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut splits, mut folds, mut shifts, mut composed) = (0, 0, 0, 0);
    for case in 0..CASES {
        let t = &tracks[case % tracks.len()];
        let m = random_measure(&mut rng, t, 6).expect("recurrent");
        assert!(check_measure(t, &m).unwrap());

        for e in t.large_branches() {
            // a central split that would merge two cusps of one region is refused
            let out = match split(t, &m, e) {
                Err(SplitError::Degenerate(_)) => continue,
                r => r.unwrap(),
            };
            assert!(check_measure(&out.track, &out.measure).unwrap(), "case {case}: split {e}");
            if out.event.case != SplitCase::Central {
                assert_eq!(carried(&out.elem, &out.measure), m);
                let (t0, m0) = fold(&out.track, &out.measure, out.event).unwrap();
                assert_eq!((&t0, &m0), (t, &m), "case {case}: fold after split {e}");
                folds += 1;
            }
            splits += 1;
        }

        let mixed: Vec<usize> = (0..t.num_branches()).filter(|&b| t.is_mixed(b)).collect();
        if !mixed.is_empty() {
            let f = mixed[rng.gen_range(0..mixed.len())];
            if let Ok(sh) = shift(t, f) {
                let m2 = sh.transport(&m);
                assert!(check_measure(&sh.track, &m2).unwrap(), "case {case}: shift {f}");
                assert_eq!(carried(&sh.elem, &m2), m);
                shifts += 1;
            }
        }

        let first = match maximal_split(t, &m) {
            Err(SplitError::Degenerate(_)) => continue,
            r => r.unwrap(),
        };
        assert!(check_measure(&first.track, &first.measure).unwrap());
        assert_eq!(carried(&first.elem, &first.measure), m);
        let Ok(second) = maximal_split(&first.track, &first.measure) else {
            continue;
        };
        let a = CarryingMatrix { source: 1, target: 0, ..first.elem.clone() };
        let b = CarryingMatrix { source: 2, target: 1, ..second.elem.clone() };
        let ab = incidence_compose(&a, &b).unwrap();
        assert_eq!((ab.source, ab.target), (2, 0));
        assert_eq!(ab.entries, matrix::mul(&a.entries, &b.entries).unwrap());
        assert_eq!(carried(&ab, &second.measure), m);
        assert!(incidence_compose(&b, &a).is_err());
        assert!(ab.entries.iter().flatten().all(|x| *x >= BigInt::from(0)));
        composed += 1;
    }
    assert!(splits >= CASES && folds > 0 && shifts > 0 && composed > CASES / 2);
}
