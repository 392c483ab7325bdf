//! Two-tone terracing: the sandhi transducer, its rule formulation,
//! floating-tone expansion and pitch-target synthesis.

use std::collections::BTreeSet;
use std::fmt;

use crate::fsa::{sym, FsaError, Symbol, Transducer};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToneError {
    #[error("empty tone string")]
    Empty,
    #[error("unknown tone {token:?} at position {position}")]
    UnknownTone { position: usize, token: String },
    #[error("downstepped high at position {0} where only H and L are allowed")]
    UnexpectedDownstep(usize),
    #[error("a downstepped high cannot open the string")]
    InitialDownstep,
    #[error("invalid synthesis parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Fsa(#[from] FsaError),
}

impl ToneError {
    pub fn code(&self) -> &'static str {
        match self {
            ToneError::Empty => "EMPTY_TONES",
            ToneError::UnknownTone { .. } => "UNKNOWN_TONE",
            ToneError::UnexpectedDownstep(_) => "UNEXPECTED_DOWNSTEP",
            ToneError::InitialDownstep => "INITIAL_DOWNSTEP",
            ToneError::Parameters(_) => "INVALID_PARAMETERS",
            ToneError::Fsa(e) => e.code(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tone {
    H,
    L,
    /// Written `↓H`, or `!H` in ASCII.
    DownstepH,
}

impl fmt::Display for Tone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tone::H => "H",
            Tone::L => "L",
            Tone::DownstepH => "↓H",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Allotone {
    High,
    Low,
}

impl fmt::Display for Allotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Allotone::High => "h",
            Allotone::Low => "l",
        })
    }
}

impl Tone {
    fn faithful(self) -> Allotone {
        match self {
            Tone::L => Allotone::Low,
            _ => Allotone::High,
        }
    }
}

/// Reads space-separated `H`, `L`, `↓H` or `!H`.
pub fn parse_tones(text: &str) -> Result<Vec<Tone>, ToneError> {
    text.split_whitespace()
        .enumerate()
        .map(|(position, t)| match t {
            "H" => Ok(Tone::H),
            "L" => Ok(Tone::L),
            "↓H" | "!H" => Ok(Tone::DownstepH),
            _ => Err(ToneError::UnknownTone {
                position,
                token: t.to_string(),
            }),
        })
        .collect()
}

/// Reads space-separated `h` and `l`.
pub fn parse_allotones(text: &str) -> Result<Vec<Allotone>, ToneError> {
    text.split_whitespace()
        .enumerate()
        .map(|(position, t)| match t {
            "h" => Ok(Allotone::High),
            "l" => Ok(Allotone::Low),
            _ => Err(ToneError::UnknownTone {
                position,
                token: t.to_string(),
            }),
        })
        .collect()
}

pub fn format_tones(tones: &[Tone]) -> String {
    tones.iter().map(Tone::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_allotones(a: &[Allotone]) -> String {
    a.iter().map(Allotone::to_string).collect::<Vec<_>>().join(" ")
}

/// The raw three-state sandhi transducer over lexical `H`/`L` and
/// allotones `h`/`l`. Both non-initial states are final.
pub fn tem_transducer() -> Transducer {
    let mut t = Transducer::new("INIT");
    t.connect("INIT", Some("H"), Some("h"), "S_H");
    t.connect("INIT", Some("L"), Some("l"), "S_L");
    t.connect("S_H", Some("H"), Some("h"), "S_H");
    t.connect("S_L", Some("L"), Some("l"), "S_L");
    t.connect("S_H", Some("L"), Some("h"), "S_L");
    t.connect("S_L", Some("H"), Some("l"), "S_H");
    for s in ["S_H", "S_L"] {
        let id = t.state_id(s).unwrap();
        t.set_final(id, true);
    }
    t
}

/// Maps allotones to register levels `HI` / `LO`.
pub fn level_transducer() -> Transducer {
    let mut t = Transducer::new("0");
    t.connect("0", Some("h"), Some("HI"), "0");
    t.connect("0", Some("l"), Some("LO"), "0");
    t.set_final(0, true);
    t
}

fn plain(tones: &[Tone]) -> Result<(), ToneError> {
    if tones.is_empty() {
        return Err(ToneError::Empty);
    }
    match tones.iter().position(|t| *t == Tone::DownstepH) {
        Some(p) => Err(ToneError::UnexpectedDownstep(p)),
        None => Ok(()),
    }
}

fn tone_symbols(tones: &[Tone]) -> Vec<Symbol> {
    tones.iter().map(|t| sym(&t.to_string())).collect()
}

/// Sandhi with the final tone kept faithful.
pub fn tem_apply(tones: &[Tone]) -> Result<Vec<Allotone>, ToneError> {
    let last = tones.len().saturating_sub(1);
    tem_apply_exempt(tones, &BTreeSet::from([last]))
}

/// Sandhi through the raw transducer, except that positions in `exempt`
/// surface faithfully. The transducer still reads every lexical tone, so
/// exemption never changes the context of later tones.
pub fn tem_apply_exempt(tones: &[Tone], exempt: &BTreeSet<usize>) -> Result<Vec<Allotone>, ToneError> {
    plain(tones)?;
    let outputs = tem_transducer().transduce(&tone_symbols(tones))?;
    let raw = outputs
        .into_iter()
        .next()
        .expect("the sandhi transducer is total and deterministic");
    Ok(raw
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if exempt.contains(&i) {
                tones[i].faithful()
            } else if s.as_str() == "h" {
                Allotone::High
            } else {
                Allotone::Low
            }
        })
        .collect())
}

/// The rewrite-rule formulation: an interior tone surfaces high after a
/// lexical H and low after a lexical L; the first and last tones are
/// faithful.
pub fn tem_rules_apply(tones: &[Tone]) -> Result<Vec<Allotone>, ToneError> {
    plain(tones)?;
    let last = tones.len() - 1;
    Ok((0..tones.len())
        .map(|i| {
            if i == 0 || i == last {
                tones[i].faithful()
            } else {
                tones[i - 1].faithful()
            }
        })
        .collect())
}

/// A tone string with inserted silent lows marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedTones {
    pub tones: Vec<Tone>,
    /// True where a floating low was reinstated.
    pub silent: Vec<bool>,
}

/// Rewrites every `↓H` as a silent `L` followed by `H`.
pub fn expand_floating(tones: &[Tone]) -> Result<ExpandedTones, ToneError> {
    if tones.first() == Some(&Tone::DownstepH) {
        return Err(ToneError::InitialDownstep);
    }
    let mut out = ExpandedTones {
        tones: Vec::new(),
        silent: Vec::new(),
    };
    for &t in tones {
        if t == Tone::DownstepH {
            out.tones.extend([Tone::L, Tone::H]);
            out.silent.extend([true, false]);
        } else {
            out.tones.push(t);
            out.silent.push(false);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SynthesisParams {
    /// Initial high target in Hz.
    pub h0: f64,
    /// Initial low target in Hz.
    pub l0: f64,
    /// Register multiplier applied at each low-to-high step.
    pub step: f64,
}

impl Default for SynthesisParams {
    fn default() -> Self {
        SynthesisParams {
            h0: 200.0,
            l0: 150.0,
            step: 0.9,
        }
    }
}

/// F0 targets for an allotone string.
///
/// A register factor starts at 1 and is multiplied by `step` wherever an
/// `h` follows an `l`; highs sit at `h0` times the factor, lows at `l0`
/// times the factor. Targets are constant within a terrace and both the
/// high and the low targets descend step by step.
pub fn synthesize_targets(allotones: &[Allotone], params: SynthesisParams) -> Result<Vec<f64>, ToneError> {
    let SynthesisParams { h0, l0, step } = params;
    if !(l0 > 0.0 && h0 > l0) {
        return Err(ToneError::Parameters(format!("need h0 > l0 > 0, got h0={h0}, l0={l0}")));
    }
    if !(step > 0.0 && step <= 1.0) {
        return Err(ToneError::Parameters(format!("need 0 < step <= 1, got {step}")));
    }
    let mut register = 1.0;
    let mut prev: Option<Allotone> = None;
    Ok(allotones
        .iter()
        .map(|&a| {
            if prev == Some(Allotone::Low) && a == Allotone::High {
                register *= step;
            }
            prev = Some(a);
            match a {
                Allotone::High => h0 * register,
                Allotone::Low => l0 * register,
            }
        })
        .collect())
}
