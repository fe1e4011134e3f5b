//! Cycle files: the starting measured track plus the detected period.
//!
//! Reading replays the maximal splitting sequence from the stored track and
//! rejects the file unless every recorded field is reproduced.

use super::{find_agol_cycle, AgolCycle, SplitCase, SplitError, SplitEvent};
use crate::traintrack::{parse_track, Measure, TrainTrack};

fn event_code(e: &SplitEvent) -> String {
    let c = match e.case {
        SplitCase::Left => 'L',
        SplitCase::Right => 'R',
        SplitCase::Central => 'C',
    };
    format!("{}{c}", e.branch)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn header(cycle: &AgolCycle) -> Vec<(String, String)> {
    let mut rows = vec![
        ("preperiod".to_string(), cycle.preperiod.to_string()),
        ("period".to_string(), cycle.period.to_string()),
        ("lambda".to_string(), cycle.lambda.to_string()),
        ("lambda_minpoly".to_string(), join(&cycle.lambda.minimal_polynomial())),
        ("iso_switch".to_string(), join(&cycle.iso_switch)),
        ("iso_branch".to_string(), join(&cycle.iso_branch)),
    ];
    for (i, evs) in cycle.events.iter().enumerate() {
        let codes: Vec<String> = evs.iter().map(event_code).collect();
        rows.push((format!("events {i}"), codes.join(" ")));
    }
    for (i, row) in cycle.cycle_matrix.entries.iter().enumerate() {
        rows.push((format!("matrix {i}"), join(row)));
    }
    rows
}

/// `t0`, `m0` is the track the search started from.
pub fn cycle_to_text(t0: &TrainTrack, m0: &Measure, cycle: &AgolCycle) -> String {
    let mut s = String::from("# periodic tail of a maximal splitting sequence\n");
    for (k, v) in header(cycle) {
        s += &format!("{k} = {v}\n");
    }
    s += "begin track\n";
    s += &t0.to_text(Some(m0));
    s += "end track\n";
    s
}

/// Reads a cycle file, returning the starting track and the replayed cycle.
pub fn parse_cycle(text: &str) -> Result<(TrainTrack, Measure, AgolCycle), SplitError> {
    let corrupt = |m: String| SplitError::CorruptCycle(m);
    let mut rows = Vec::new();
    let mut track = String::new();
    let mut in_track = false;
    let mut saw_end = false;
    for raw in text.lines() {
        let line = raw.trim();
        if in_track {
            if line == "end track" {
                in_track = false;
                saw_end = true;
            } else {
                track += raw;
                track.push('\n');
            }
            continue;
        }
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "begin track" {
            in_track = true;
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| corrupt(format!("expected `key = value`: {line}")))?;
        rows.push((k.trim().to_string(), v.trim().to_string()));
    }
    if !saw_end {
        return Err(corrupt("missing track block".into()));
    }
    let (t0, m0) = parse_track(&track)?;
    let m0 = m0.ok_or_else(|| corrupt("track block has no measure".into()))?;
    let get = |key: &str| rows.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
    let num = |key: &str| -> Result<usize, SplitError> {
        get(key).and_then(|v| v.parse().ok()).ok_or_else(|| corrupt(format!("missing or bad `{key}`")))
    };
    let (pre, per) = (num("preperiod")?, num("period")?);
    let cycle = find_agol_cycle(&t0, &m0, pre + per).map_err(|e| corrupt(format!("replay failed: {e}")))?;
    let expected = header(&cycle);
    if rows.len() != expected.len() {
        return Err(corrupt(format!("{} fields recorded, replay gives {}", rows.len(), expected.len())));
    }
    for ((k, v), (ek, ev)) in rows.iter().zip(&expected) {
        if k != ek || v.split_whitespace().ne(ev.split_whitespace()) {
            return Err(corrupt(format!("field `{k}` does not match the replayed cycle")));
        }
    }
    Ok((t0, m0, cycle))
}
