//! Pauses, interpausal units, pitch resets and paratones.

use super::PitchTrack;

pub const DEFAULT_MIN_PAUSE: f64 = 0.200;
pub const DEFAULT_MAJOR_JUMP: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Span {
    pub start: f64,
    pub end: f64,
}

impl Span {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PauseSegmentation {
    pub pauses: Vec<Span>,
    /// Interpausal units; with the pauses they tile `span`.
    pub units: Vec<Span>,
    pub span: Span,
}

/// Unvoiced runs longer than `min_dur` seconds. A run starting at sample
/// `i` lasts until the next voiced sample, or the last sample at the end.
/// Reads the raw track, before any bridging.
pub fn detect_pauses(track: &PitchTrack, min_dur: f64) -> PauseSegmentation {
    let s = track.samples();
    let Some((first, last)) = track.span() else {
        return PauseSegmentation {
            pauses: Vec::new(),
            units: Vec::new(),
            span: Span { start: 0.0, end: 0.0 },
        };
    };
    let mut pauses = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i].f0.is_some() {
            i += 1;
            continue;
        }
        let j = s[i..].iter().position(|x| x.f0.is_some()).map_or(s.len(), |p| i + p);
        let end = s.get(j).map_or(last, |x| x.time);
        let pause = Span { start: s[i].time, end };
        if pause.duration() > min_dur {
            pauses.push(pause);
        }
        i = j;
    }
    let mut units = Vec::new();
    let mut cursor = first;
    for p in &pauses {
        if p.start > cursor {
            units.push(Span { start: cursor, end: p.start });
        }
        cursor = p.end;
    }
    if last > cursor || (units.is_empty() && pauses.is_empty()) {
        units.push(Span { start: cursor, end: last });
    }
    PauseSegmentation {
        pauses,
        units,
        span: Span { start: first, end: last },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ResetParams {
    /// Seconds at the start of the following unit searched for the peak.
    pub head: f64,
    /// Seconds at the end of the preceding unit averaged.
    pub tail: f64,
    pub min_jump: f64,
}

impl Default for ResetParams {
    fn default() -> Self {
        ResetParams {
            head: 0.300,
            tail: 0.300,
            min_jump: 1.15,
        }
    }
}

/// One boundary between consecutive units.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Boundary {
    /// Index of the unit that follows the boundary.
    pub unit_index: usize,
    pub time: f64,
    /// Head peak over tail mean; `None` when either unit has no voiced
    /// samples.
    pub magnitude: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ResetEvent {
    pub unit_index: usize,
    pub time: f64,
    pub magnitude: f64,
}

/// Voiced values in `window`, or in the whole `unit` when the window holds
/// none. A unit's end is the first pause sample, so it is excluded.
fn window_values(track: &PitchTrack, window: Span, unit: Span) -> Vec<f64> {
    let within = |w: Span| -> Vec<f64> {
        track
            .voiced()
            .filter(|&(t, _)| t >= w.start && t <= w.end && t < unit.end)
            .map(|p| p.1)
            .collect()
    };
    let inner = within(window);
    if inner.is_empty() {
        within(unit)
    } else {
        inner
    }
}

fn head_peak(track: &PitchTrack, unit: Span, head: f64) -> Option<f64> {
    let window = Span {
        start: unit.start,
        end: (unit.start + head).min(unit.end),
    };
    window_values(track, window, unit).into_iter().reduce(f64::max)
}

/// Magnitude at every boundary, in time order.
pub fn boundary_magnitudes(track: &PitchTrack, seg: &PauseSegmentation, params: &ResetParams) -> Vec<Boundary> {
    seg.units
        .windows(2)
        .enumerate()
        .map(|(k, pair)| {
            let (prev, next) = (pair[0], pair[1]);
            let tail_window = Span {
                start: (prev.end - params.tail).max(prev.start),
                end: prev.end,
            };
            let tail = window_values(track, tail_window, prev);
            let tail_mean = (!tail.is_empty()).then(|| tail.iter().sum::<f64>() / tail.len() as f64);
            let magnitude = match (head_peak(track, next, params.head), tail_mean) {
                (Some(h), Some(t)) => Some(h / t),
                _ => None,
            };
            Boundary {
                unit_index: k + 1,
                time: next.start,
                magnitude,
            }
        })
        .collect()
}

/// Boundaries whose magnitude reaches `min_jump`.
pub fn detect_resets(track: &PitchTrack, seg: &PauseSegmentation, params: &ResetParams) -> Vec<ResetEvent> {
    boundary_magnitudes(track, seg, params)
        .into_iter()
        .filter_map(|b| {
            let m = b.magnitude?;
            (m >= params.min_jump).then_some(ResetEvent {
                unit_index: b.unit_index,
                time: b.time,
                magnitude: m,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Paratone {
    pub span: Span,
    /// Highest f0 in the head window of the opening unit, in the track's
    /// units.
    pub onset_peak_hz: Option<f64>,
}

/// Opens a paratone at every reset of at least `major_jump`. The paratones
/// partition `seg.span`.
pub fn paratone_segment(
    track: &PitchTrack,
    seg: &PauseSegmentation,
    resets: &[ResetEvent],
    params: &ResetParams,
    major_jump: f64,
) -> Vec<Paratone> {
    let Some(&first_unit) = seg.units.first() else {
        return Vec::new();
    };
    let mut openings = vec![(seg.span.start, first_unit)];
    for r in resets.iter().filter(|r| r.magnitude >= major_jump) {
        openings.push((r.time, seg.units[r.unit_index]));
    }
    openings
        .iter()
        .enumerate()
        .map(|(i, &(start, unit))| Paratone {
            span: Span {
                start,
                end: openings.get(i + 1).map_or(seg.span.end, |o| o.0),
            },
            onset_peak_hz: head_peak(track, unit, params.head),
        })
        .collect()
}
