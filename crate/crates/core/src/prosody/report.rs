//! The whole pipeline over one track, as a serializable report.

use std::fmt::Write as _;

use super::*;

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub preprocess: PreprocessParams,
    pub min_pause: f64,
    pub resets: ResetParams,
    pub major_jump: f64,
    /// Two spans whose mean levels form a chant interval.
    pub chant: Option<(Span, Span)>,
    pub chant_tolerance: f64,
    /// Annotated `(time, label)` accents.
    pub accents: Vec<(f64, String)>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            preprocess: PreprocessParams::default(),
            min_pause: DEFAULT_MIN_PAUSE,
            resets: ResetParams::default(),
            major_jump: DEFAULT_MAJOR_JUMP,
            chant: None,
            chant_tolerance: DEFAULT_CHANT_TOLERANCE,
            accents: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PreprocessSummary {
    pub window: usize,
    pub normalized: bool,
    pub voiced_median_hz: f64,
    pub samples_in: usize,
    pub samples_out: usize,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Fits {
    pub linear: RegressionFit,
    pub quadratic: Option<RegressionFit>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Resets {
    pub boundaries: Vec<Boundary>,
    pub events: Vec<ResetEvent>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(untagged)]
pub enum AccentRow {
    Ok(AccentExcursion),
    Error { position: f64, label: String, error: String },
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct AnalysisReport {
    pub source: String,
    pub preprocess: PreprocessSummary,
    pub fits: Fits,
    pub pauses: PauseSegmentation,
    pub resets: Resets,
    pub paratones: Vec<Paratone>,
    pub chant: Option<ChantMeasurement>,
    pub accents: Vec<AccentRow>,
    #[serde(skip)]
    pub contour: PitchTrack,
}

/// Pauses come from the raw track; resets, paratones and chant from the
/// smoothed contour in Hz; fits and accents from the contour as configured.
pub fn analyze(track: &PitchTrack, options: &AnalyzeOptions) -> Result<AnalysisReport, ProsodyError> {
    let hz = preprocess(
        track,
        PreprocessParams {
            normalize: false,
            ..options.preprocess
        },
    )?;
    let contour = preprocess(track, options.preprocess)?;
    let voiced: Vec<f64> = hz.voiced().map(|p| p.1).collect();
    let linear = fit_polynomial(&contour, 1)?;
    let quadratic = fit_polynomial(&contour, 2).ok();
    let pauses = detect_pauses(track, options.min_pause);
    let boundaries = boundary_magnitudes(&hz, &pauses, &options.resets);
    let events = detect_resets(&hz, &pauses, &options.resets);
    let paratones = paratone_segment(&hz, &pauses, &events, &options.resets, options.major_jump);
    let chant = match options.chant {
        Some((a, b)) => Some(chant_from_track(&hz, a, b, options.chant_tolerance)?),
        None => None,
    };
    let accents = accent_excursion(&contour, &linear, &options.accents)
        .into_iter()
        .zip(&options.accents)
        .map(|(r, (time, label))| match r {
            Ok(a) => AccentRow::Ok(a),
            Err(e) => AccentRow::Error {
                position: *time,
                label: label.clone(),
                error: e.to_string(),
            },
        })
        .collect();
    Ok(AnalysisReport {
        source: track.source.clone(),
        preprocess: PreprocessSummary {
            window: options.preprocess.window,
            normalized: contour.normalized,
            voiced_median_hz: median(&voiced),
            samples_in: track.len(),
            samples_out: contour.len(),
        },
        fits: Fits { linear, quadratic },
        pauses,
        resets: Resets { boundaries, events },
        paratones,
        chant,
        accents,
        contour,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

impl AnalysisReport {
    /// One plot-ready CSV per section, keyed by section name.
    pub fn csv_exports(&self) -> Vec<(&'static str, String)> {
        let mut preprocess = String::from("time_s,f0\n");
        for (t, f) in self.contour.voiced() {
            writeln!(preprocess, "{t},{f}").unwrap();
        }

        let mut fits = String::from("degree,c0,c1,c2,rmse,t_start,t_end\n");
        for fit in std::iter::once(&self.fits.linear).chain(&self.fits.quadratic) {
            let c = |i: usize| opt(fit.coefficients.get(i).copied());
            writeln!(
                fits,
                "{},{},{},{},{},{},{}",
                fit.degree,
                c(0),
                c(1),
                c(2),
                fit.rmse,
                fit.domain.0,
                fit.domain.1
            )
            .unwrap();
        }

        let mut pauses = String::from("kind,start_s,end_s\n");
        let mut spans: Vec<(&str, Span)> = self.pauses.pauses.iter().map(|s| ("pause", *s)).collect();
        spans.extend(self.pauses.units.iter().map(|s| ("unit", *s)));
        spans.sort_by(|a, b| a.1.start.total_cmp(&b.1.start));
        for (kind, s) in spans {
            writeln!(pauses, "{kind},{},{}", s.start, s.end).unwrap();
        }

        let mut resets = String::from("unit_index,time_s,magnitude,reset\n");
        for b in &self.resets.boundaries {
            let reset = self.resets.events.iter().any(|e| e.unit_index == b.unit_index);
            writeln!(resets, "{},{},{},{}", b.unit_index, b.time, opt(b.magnitude), reset).unwrap();
        }

        let mut paratones = String::from("start_s,end_s,onset_peak_hz\n");
        for p in &self.paratones {
            writeln!(paratones, "{},{},{}", p.span.start, p.span.end, opt(p.onset_peak_hz)).unwrap();
        }

        let mut chant = String::from("level1_hz,level2_hz,ratio,classification\n");
        if let Some(c) = &self.chant {
            writeln!(chant, "{},{},{},{}", c.level1, c.level2, c.ratio, c.classification).unwrap();
        }

        let mut accents = String::from("label,position_s,extremum_s,polarity,excursion,error\n");
        for a in &self.accents {
            match a {
                AccentRow::Ok(a) => writeln!(
                    accents,
                    "{},{},{},{},{},",
                    a.label, a.position, a.extremum_time, a.polarity, a.excursion
                ),
                AccentRow::Error { position, label, error } => {
                    writeln!(accents, "{label},{position},,,,{}", error.replace(',', ";"))
                }
            }
            .unwrap();
        }

        vec![
            ("preprocess", preprocess),
            ("fits", fits),
            ("pauses", pauses),
            ("resets", resets),
            ("paratones", paratones),
            ("chant", chant),
            ("accents", accents),
        ]
    }
}
