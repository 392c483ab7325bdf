//! Pitch-track analysis.

mod fit;
mod measures;
mod news;
mod preprocess;
mod report;
mod segment;

pub use fit::{fit_polynomial, RegressionFit};
pub use measures::{
    accent_excursion, chant_from_track, chant_measure, AccentExcursion, ChantClass, ChantMeasurement, Polarity,
    DEFAULT_CHANT_TOLERANCE, MINOR_THIRD,
};
pub use news::{news_style_track, NEWS_STYLE_MAGNITUDES, NEWS_STYLE_PAUSES};
pub use preprocess::{median, preprocess, PreprocessParams};
pub use report::{analyze, AccentRow, AnalysisReport, AnalyzeOptions, Fits, PreprocessSummary, Resets};
pub use segment::{
    boundary_magnitudes, detect_pauses, detect_resets, paratone_segment, Boundary, Paratone, PauseSegmentation,
    ResetEvent, ResetParams, Span, DEFAULT_MAJOR_JUMP, DEFAULT_MIN_PAUSE,
};

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProsodyError {
    #[error("invalid track: {0}")]
    InvalidTrack(String),
    #[error("track has no voiced samples")]
    AllUnvoiced,
    #[error("need at least {needed} voiced samples, have {have}")]
    TooFewSamples { needed: usize, have: usize },
    #[error("median window must be odd and positive, got {0}")]
    InvalidWindow(usize),
    #[error("degree must be 1 or 2, got {0}")]
    InvalidDegree(usize),
    #[error("all sample times are equal")]
    DegenerateDesign,
    #[error("chant levels must be positive")]
    NonPositiveLevel,
    #[error("time {0} s is outside the fitted domain")]
    OutsideDomain(f64),
    #[error("no voiced samples near {0} s")]
    EmptyWindow(f64),
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

impl ProsodyError {
    pub fn code(&self) -> &'static str {
        match self {
            ProsodyError::InvalidTrack(_) => "INVALID_TRACK",
            ProsodyError::AllUnvoiced => "ALL_UNVOICED",
            ProsodyError::TooFewSamples { .. } => "TOO_FEW_SAMPLES",
            ProsodyError::InvalidWindow(_) => "INVALID_WINDOW",
            ProsodyError::InvalidDegree(_) => "INVALID_DEGREE",
            ProsodyError::DegenerateDesign => "DEGENERATE_DESIGN",
            ProsodyError::NonPositiveLevel => "NON_POSITIVE_LEVEL",
            ProsodyError::OutsideDomain(_) => "OUTSIDE_DOMAIN",
            ProsodyError::EmptyWindow(_) => "EMPTY_WINDOW",
            ProsodyError::Csv { .. } => "CSV",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Sample {
    pub time: f64,
    /// `None` when unvoiced.
    pub f0: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PitchTrack {
    samples: Vec<Sample>,
    pub source: String,
    /// Values are ratios to the voiced median rather than Hz.
    pub normalized: bool,
}

impl PitchTrack {
    /// Times must be finite and strictly increasing; voiced values finite
    /// and positive.
    pub fn new(samples: Vec<Sample>, source: &str) -> Result<Self, ProsodyError> {
        for (i, s) in samples.iter().enumerate() {
            if !s.time.is_finite() {
                return Err(ProsodyError::InvalidTrack(format!("sample {i}: time is not finite")));
            }
            if i > 0 && s.time <= samples[i - 1].time {
                return Err(ProsodyError::InvalidTrack(format!("sample {i}: time does not increase")));
            }
            if let Some(f) = s.f0 {
                if !(f.is_finite() && f > 0.0) {
                    return Err(ProsodyError::InvalidTrack(format!("sample {i}: f0 {f} is not positive")));
                }
            }
        }
        Ok(PitchTrack {
            samples,
            source: source.to_string(),
            normalized: false,
        })
    }

    /// Builds from `(time, f0)` pairs where a non-positive f0 means unvoiced.
    pub fn from_pairs(pairs: &[(f64, f64)], source: &str) -> Result<Self, ProsodyError> {
        let samples = pairs
            .iter()
            .map(|&(time, f)| Sample {
                time,
                f0: (f > 0.0).then_some(f),
            })
            .collect();
        Self::new(samples, source)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Voiced `(time, f0)` pairs in order.
    pub fn voiced(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples.iter().filter_map(|s| s.f0.map(|f| (s.time, f)))
    }

    /// Voiced pairs with `start <= time <= end`.
    pub fn voiced_between(&self, start: f64, end: f64) -> Vec<(f64, f64)> {
        self.voiced().filter(|&(t, _)| t >= start && t <= end).collect()
    }

    /// First and last sample time.
    pub fn span(&self) -> Option<(f64, f64)> {
        Some((self.samples.first()?.time, self.samples.last()?.time))
    }

    /// Reads `time_s,f0_hz`; an empty or zero f0 is unvoiced.
    pub fn from_csv(text: &str, source: &str) -> Result<Self, ProsodyError> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader.headers().map_err(|e| ProsodyError::Csv {
            line: 1,
            message: e.to_string(),
        })?;
        if headers.iter().collect::<Vec<_>>() != ["time_s", "f0_hz"] {
            return Err(ProsodyError::Csv {
                line: 1,
                message: "header must be time_s,f0_hz".into(),
            });
        }
        let mut samples = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| ProsodyError::Csv {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let err = |message: String| ProsodyError::Csv { line, message };
            if record.len() != 2 {
                return Err(err(format!("expected 2 fields, got {}", record.len())));
            }
            let time: f64 = record[0].parse().map_err(|_| err(format!("bad time {:?}", &record[0])))?;
            let f0 = match &record[1] {
                "" => None,
                v => {
                    let f: f64 = v.parse().map_err(|_| err(format!("bad f0 {v:?}")))?;
                    (f != 0.0).then_some(f)
                }
            };
            samples.push(Sample { time, f0 });
        }
        Self::new(samples, source)
    }

    /// Unvoiced samples are written with an empty f0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time_s,f0_hz\n");
        for s in &self.samples {
            match s.f0 {
                Some(f) => writeln!(out, "{},{}", s.time, f).unwrap(),
                None => writeln!(out, "{},", s.time).unwrap(),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let t = PitchTrack::from_csv("time_s,f0_hz\n0.00,200\n0.01,0\n0.02,\n0.03,210.5\n", "x").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.voiced().count(), 2);
        let again = PitchTrack::from_csv(&t.to_csv(), "x").unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn invalid_tracks() {
        assert!(PitchTrack::from_csv("time,f0\n", "x").is_err());
        assert!(matches!(
            PitchTrack::from_csv("time_s,f0_hz\n0.1,200\n0.1,200\n", "x"),
            Err(ProsodyError::InvalidTrack(_))
        ));
        assert!(matches!(
            PitchTrack::from_csv("time_s,f0_hz\n0.1,-5\n", "x"),
            Err(ProsodyError::InvalidTrack(_))
        ));
        assert!(matches!(
            PitchTrack::from_csv("time_s,f0_hz\n0.1,abc\n", "x"),
            Err(ProsodyError::Csv { line: 2, .. })
        ));
    }
}
