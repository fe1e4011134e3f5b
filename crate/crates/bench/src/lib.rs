//! Fixture loading shared by the benchmarks.

use splitseq::splitting::{find_agol_cycle, AgolCycle};
use splitseq::support::{parse_complex, TwistedComplex};
use splitseq::traintrack::{parse_track, Measure, TrainTrack};

pub const TORUS: &str = include_str!("../../../fixtures/tracks/torus.track");
pub const GENUS2: &str = include_str!("../../../fixtures/tracks/genus2.track");
pub const QUAD: &str = include_str!("../../../fixtures/tracks/quad.track");
pub const TORUS_BASIS: &str = include_str!("../../../fixtures/bases/torus.basis");
pub const GENUS2_BASIS: &str = include_str!("../../../fixtures/bases/genus2.basis");
pub const S2S1_SQ: &str = include_str!("../../../fixtures/complexes/s2s1_sq.cx");
pub const SURFACE: &str = include_str!("../../../fixtures/complexes/surface.cx");

/// A measured fixture track; panics on a malformed fixture.
pub fn measured(text: &str) -> (TrainTrack, Measure) {
    let (t, m) = parse_track(text).expect("fixture parses");
    (t, m.expect("fixture carries a measure"))
}

pub fn cycle(text: &str) -> AgolCycle {
    let (t, m) = measured(text);
    find_agol_cycle(&t, &m, 400).expect("fixture has a cycle")
}

pub fn complex(text: &str) -> TwistedComplex {
    parse_complex(text).expect("fixture parses")
}
