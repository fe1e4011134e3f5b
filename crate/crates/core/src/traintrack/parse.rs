//! Line-oriented track file reader.

use std::collections::HashMap;

use super::{BranchEnd, Measure, Switch, TrackError, TrainTrack, ValidationReport};
use crate::numberfield::{parse_element, parse_field_decl, Field};

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, needle: &str, msg: impl Into<String>) -> TrackError {
        let col = self.text.find(needle).map(|c| c + 1).unwrap_or(1);
        TrackError::Parse { line: self.no, col, msg: msg.into() }
    }
}

/// Parses a track file; the measure is present when `measure` lines are.
pub fn parse_track(text: &str) -> Result<(TrainTrack, Option<Measure>), TrackError> {
    let mut header: Option<(usize, usize)> = None;
    let mut branches: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut switches: Vec<(String, Vec<(String, Vec<BranchEnd>)>, usize)> = Vec::new();
    let mut punct: Vec<(String, usize)> = Vec::new();
    let mut field: Option<Field> = None;
    let mut weights: Vec<(String, String, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let ln = Line { no: i + 1, text };
        let t = text.trim();
        if t.is_empty() {
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        match kw {
            "surface" => {
                let mut g = None;
                let mut p = None;
                for tok in rest.split_whitespace() {
                    let (k, v) = tok.split_once('=').ok_or_else(|| ln.err(tok, "expected key=value"))?;
                    let v: usize = v.parse().map_err(|_| ln.err(tok, "expected a nonnegative integer"))?;
                    match k {
                        "genus" => g = Some(v),
                        "punctures" => p = Some(v),
                        _ => return Err(ln.err(tok, format!("unknown surface key '{k}'"))),
                    }
                }
                header = Some((g.ok_or_else(|| ln.err("surface", "missing genus"))?, p.unwrap_or(0)));
            }
            "branch" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) || rest.contains('.') {
                    return Err(ln.err("branch", "expected a single branch name without '.'"));
                }
                if index.insert(rest.to_string(), branches.len()).is_some() {
                    return Err(ln.err(rest, format!("branch '{rest}' declared twice")));
                }
                branches.push(rest.to_string());
            }
            "switch" => {
                let (name, slots) = rest.split_once(':').ok_or_else(|| ln.err("switch", "expected ':'"))?;
                let name = name.trim().to_string();
                let mut parsed = Vec::new();
                for tok in slots.split_whitespace() {
                    let (k, v) = tok.split_once('=').ok_or_else(|| ln.err(tok, "expected slot=branch.end"))?;
                    let mut ends = Vec::new();
                    for part in v.split(',').filter(|p| !p.is_empty()) {
                        let (b, e) = part.rsplit_once('.').ok_or_else(|| ln.err(part, "expected branch.end"))?;
                        let e: u8 = match e {
                            "0" => 0,
                            "1" => 1,
                            _ => return Err(ln.err(part, "branch end must be 0 or 1")),
                        };
                        let b = *index.get(b).ok_or_else(|| ln.err(part, format!("unknown branch '{b}'")))?;
                        ends.push(BranchEnd::new(b, e));
                    }
                    parsed.push((k.to_string(), ends));
                }
                switches.push((name, parsed, ln.no));
            }
            "puncture" => {
                let w = rest
                    .strip_prefix("in region containing cusp")
                    .ok_or_else(|| ln.err(rest, "expected 'puncture in region containing cusp <switch>'"))?
                    .trim();
                punct.push((w.to_string(), ln.no));
            }
            "field" => {
                field = Some(parse_field_decl(t).map_err(|e| ln.err("field", e.to_string()))?);
            }
            "measure" => {
                let (b, v) = rest.split_once('=').ok_or_else(|| ln.err("measure", "expected '='"))?;
                weights.push((b.trim().to_string(), v.trim().to_string(), ln.no));
            }
            _ => return Err(ln.err(kw, format!("unknown keyword '{kw}'"))),
        }
    }

    let (genus, punctures) =
        header.ok_or(TrackError::Parse { line: 1, col: 1, msg: "missing surface header".into() })?;
    let mut names = Vec::new();
    let mut built = Vec::new();
    for (name, slots, _) in &switches {
        let mut large = None;
        let mut sl = None;
        let mut sr = None;
        let mut extra = false;
        for (k, ends) in slots {
            if ends.len() != 1 {
                extra = true;
                continue;
            }
            let target = match k.as_str() {
                "large" => &mut large,
                "small_left" => &mut sl,
                "small_right" => &mut sr,
                _ => {
                    extra = true;
                    continue;
                }
            };
            if target.is_some() {
                extra = true;
            }
            *target = Some(ends[0]);
        }
        match (large, sl, sr, extra) {
            (Some(a), Some(b), Some(c), false) => built.push(Switch::new(a, b, c)),
            _ => return Err(TrackError::NonGeneric(name.clone())),
        }
        names.push(name.clone());
    }
    let mut punctured = vec![false; built.len()];
    for (w, no) in &punct {
        let k = names.iter().position(|n| n == w).ok_or(TrackError::Parse {
            line: *no,
            col: 1,
            msg: format!("unknown switch '{w}'"),
        })?;
        punctured[k] = true;
    }
    let track = TrainTrack::new(genus, punctures, branches, names, built, punctured)?;

    if weights.is_empty() {
        return Ok((track, None));
    }
    let field = field.unwrap_or_else(crate::numberfield::rational_field);
    let mut slots: Vec<Option<_>> = vec![None; track.num_branches()];
    for (b, v, no) in weights {
        let perr = |msg: String| TrackError::Parse { line: no, col: 1, msg };
        let k = track.branch_by_name(&b).ok_or_else(|| perr(format!("unknown branch '{b}'")))?;
        let lit = if v.starts_with('(') { v.clone() } else { format!("({v})") };
        slots[k] = Some(parse_element(&field, &lit).map_err(|e| perr(e.to_string()))?);
    }
    let weights = slots
        .into_iter()
        .enumerate()
        .map(|(b, w)| {
            w.ok_or_else(|| TrackError::Parse {
                line: 1,
                col: 1,
                msg: format!("no weight for branch '{}'", track.branch_name(b)),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((track, Some(Measure::new(weights))))
}

/// Validation that also reports non-trivalent switches instead of failing on them.
pub fn validate_text(text: &str) -> Result<ValidationReport, TrackError> {
    match parse_track(text) {
        Ok((t, m)) => Ok(t.validate(m.as_ref())),
        Err(TrackError::NonGeneric(name)) => Ok(ValidationReport {
            generic: false,
            problems: vec![format!("switch {name} is not trivalent")],
            ..Default::default()
        }),
        Err(e) => Err(e),
    }
}
