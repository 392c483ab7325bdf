//! Chant intervals and accent excursions from a fitted line.

use std::fmt;

use super::{PitchTrack, ProsodyError, RegressionFit, Span};

/// Just minor third.
pub const MINOR_THIRD: f64 = 1.2;
pub const DEFAULT_CHANT_TOLERANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChantClass {
    MinorThird,
    Other,
}

impl fmt::Display for ChantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChantClass::MinorThird => "MINOR_THIRD",
            ChantClass::Other => "OTHER",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ChantMeasurement {
    pub level1: f64,
    pub level2: f64,
    pub ratio: f64,
    pub classification: ChantClass,
}

pub fn chant_measure(level1: f64, level2: f64, tolerance: f64) -> Result<ChantMeasurement, ProsodyError> {
    if !(level1 > 0.0 && level2 > 0.0) {
        return Err(ProsodyError::NonPositiveLevel);
    }
    let ratio = level1 / level2;
    let classification = if (ratio - MINOR_THIRD).abs() <= tolerance {
        ChantClass::MinorThird
    } else {
        ChantClass::Other
    };
    Ok(ChantMeasurement {
        level1,
        level2,
        ratio,
        classification,
    })
}

fn mean_in(track: &PitchTrack, span: Span) -> Result<f64, ProsodyError> {
    let v = track.voiced_between(span.start, span.end);
    if v.is_empty() {
        return Err(ProsodyError::EmptyWindow(span.start));
    }
    Ok(v.iter().map(|p| p.1).sum::<f64>() / v.len() as f64)
}

/// Levels are the mean voiced f0 over each span.
pub fn chant_from_track(
    track: &PitchTrack,
    first: Span,
    second: Span,
    tolerance: f64,
) -> Result<ChantMeasurement, ProsodyError> {
    chant_measure(mean_in(track, first)?, mean_in(track, second)?, tolerance)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Polarity {
    Above,
    Below,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Above => "ABOVE",
            Polarity::Below => "BELOW",
        })
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AccentExcursion {
    pub label: String,
    /// Annotated time.
    pub position: f64,
    /// Time of the sample furthest from the fit within 50 ms.
    pub extremum_time: f64,
    pub polarity: Polarity,
    /// f0 minus fit at the extremum; zero counts as above.
    pub excursion: f64,
}

const ACCENT_WINDOW: f64 = 0.050;

/// One result per accent, so a bad annotation does not hide the others.
pub fn accent_excursion(
    track: &PitchTrack,
    fit: &RegressionFit,
    accents: &[(f64, String)],
) -> Vec<Result<AccentExcursion, ProsodyError>> {
    accents
        .iter()
        .map(|(time, label)| {
            if !fit.contains(*time) {
                return Err(ProsodyError::OutsideDomain(*time));
            }
            let (t, d) = track
                .voiced_between(time - ACCENT_WINDOW, time + ACCENT_WINDOW)
                .into_iter()
                .map(|(t, f)| (t, f - fit.eval(t)))
                .reduce(|best, x| if x.1.abs() > best.1.abs() { x } else { best })
                .ok_or(ProsodyError::EmptyWindow(*time))?;
            Ok(AccentExcursion {
                label: label.clone(),
                position: *time,
                extremum_time: t,
                polarity: if d >= 0.0 { Polarity::Above } else { Polarity::Below },
                excursion: d,
            })
        })
        .collect()
}
