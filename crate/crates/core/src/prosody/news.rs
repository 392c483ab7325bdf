//! Synthetic news-reading contour: ten declining interpausal units separated
//! by nine pauses, with resets that shrink through the text.

use super::{PitchTrack, Sample};

/// Pause lengths in seconds, in order.
pub const NEWS_STYLE_PAUSES: [f64; 9] = [0.25, 0.40, 0.30, 0.60, 0.35, 0.28, 0.45, 0.22, 0.50];

/// Head peak of unit `k + 1` over the tail level of unit `k`.
pub const NEWS_STYLE_MAGNITUDES: [f64; 9] = [1.95, 1.80, 1.62, 1.45, 1.35, 1.25, 1.18, 1.08, 1.04];

const FIRST_PEAK: f64 = 340.0;
const DECLINATION: f64 = 0.65;

/// 10 ms frames. Each unit lasts one second: 100 ms at its peak, a 600 ms
/// fall to 65% of the peak, then 300 ms level. 100 ms of silence frames the
/// whole track, and three units contain short voiceless stretches.
pub fn news_style_track() -> PitchTrack {
    let mut values: Vec<Option<f64>> = vec![None; 10];
    let mut peak = FIRST_PEAK;
    for k in 0..10 {
        let low = peak * DECLINATION;
        let start = values.len();
        values.extend(std::iter::repeat(Some(peak)).take(10));
        values.extend((1..=60).map(|j| Some(peak + (low - peak) * j as f64 / 60.0)));
        values.extend(std::iter::repeat(Some(low)).take(30));
        let voiceless = match k {
            0 | 5 => Some(8),
            3 => Some(15),
            _ => None,
        };
        if let Some(frames) = voiceless {
            for v in &mut values[start + 30..start + 30 + frames] {
                *v = None;
            }
        }
        if k < 9 {
            let frames = (NEWS_STYLE_PAUSES[k] * 100.0).round() as usize;
            values.extend(std::iter::repeat(None).take(frames));
            peak = NEWS_STYLE_MAGNITUDES[k] * low;
        }
    }
    values.extend(std::iter::repeat(None).take(10));
    let samples = values
        .into_iter()
        .enumerate()
        .map(|(i, f0)| Sample {
            time: i as f64 / 100.0,
            f0: f0.map(|f| (f * 100.0).round() / 100.0),
        })
        .collect();
    PitchTrack::new(samples, "news-style").expect("valid synthetic track")
}
