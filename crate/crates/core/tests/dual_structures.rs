//! Splits of fixture cycles act on dual triangulations as Whitehead moves.

use splitseq::splitting::{find_agol_cycle, split_combinatorial, SplitCase};
use splitseq::traintrack::parse_track;

const FIXTURES: [(&str, &str); 4] = [
    ("torus", include_str!("../../../fixtures/tracks/torus.track")),
    ("torus2", include_str!("../../../fixtures/tracks/torus2.track")),
    ("genus2", include_str!("../../../fixtures/tracks/genus2.track")),
    ("sphere4", include_str!("../../../fixtures/tracks/sphere4.track")),
];

#[test]
fn splits_are_whitehead_moves() {
    let mut checked = 0;
    for (name, text) in FIXTURES {
        let (t, m) = parse_track(text).unwrap();
        let c = find_agol_cycle(&t, &m.unwrap(), 400).unwrap();
        for step in &c.steps {
            let mut track = step.track.clone();
            for ev in &step.events {
                assert_ne!(ev.case, SplitCase::Central, "{name}");
                let before = track.dual_triangulation().unwrap();
                let (after, _) = split_combinatorial(&track, ev.branch, ev.case).unwrap();
                let flipped = before.whitehead(ev.branch).expect("split branch borders two triangles");
                let dual = after.dual_triangulation().unwrap();
                assert_eq!(dual.signature(), flipped.signature(), "{name}: {ev:?}");
                assert_eq!(dual.euler_characteristic(), before.euler_characteristic());
                track = after;
                checked += 1;
            }
        }
    }
    assert!(checked >= 10, "{checked}");
}
