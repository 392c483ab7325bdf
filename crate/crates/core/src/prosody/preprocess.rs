use super::{PitchTrack, ProsodyError, Sample};

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PreprocessParams {
    /// Odd median window, in samples.
    pub window: usize,
    /// Divide by the voiced median; off keeps Hz.
    pub normalize: bool,
}

impl Default for PreprocessParams {
    fn default() -> Self {
        PreprocessParams {
            window: 5,
            normalize: true,
        }
    }
}

/// Median of a nonempty slice; the mean of the middle pair for even length.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// One median pass with the ends replicated outward.
fn median_pass(values: &[f64], half: usize) -> Vec<f64> {
    let n = values.len() as isize;
    let at = |i: isize| values[i.clamp(0, n - 1) as usize];
    let mut window = Vec::with_capacity(2 * half + 1);
    (0..n)
        .map(|i| {
            window.clear();
            window.extend((-(half as isize)..=half as isize).map(|d| at(i + d)));
            window.sort_by(f64::total_cmp);
            window[half]
        })
        .collect()
}

/// Repeats the median filter until nothing changes, so a second call is a
/// no-op. Replicated ends guarantee convergence.
fn median_root(values: &[f64], half: usize) -> Vec<f64> {
    let mut current = values.to_vec();
    for _ in 0..=values.len() {
        let next = median_pass(&current, half);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

/// Median-filters each voiced run, bridges interior unvoiced runs with
/// straight lines, drops unvoiced edges, smooths the joined contour, and
/// optionally normalizes by the median.
pub fn preprocess(track: &PitchTrack, params: PreprocessParams) -> Result<PitchTrack, ProsodyError> {
    if params.window == 0 || params.window % 2 == 0 {
        return Err(ProsodyError::InvalidWindow(params.window));
    }
    let half = params.window / 2;
    let samples = track.samples();
    let first = samples.iter().position(|s| s.f0.is_some()).ok_or(ProsodyError::AllUnvoiced)?;
    let last = samples.iter().rposition(|s| s.f0.is_some()).unwrap();
    let kept = &samples[first..=last];
    let times: Vec<f64> = kept.iter().map(|s| s.time).collect();
    let mut values: Vec<Option<f64>> = kept.iter().map(|s| s.f0).collect();

    let mut i = 0;
    while i < values.len() {
        let end = values[i..].iter().position(Option::is_none).map_or(values.len(), |p| i + p);
        if end > i {
            let run: Vec<f64> = values[i..end].iter().map(|v| v.unwrap()).collect();
            for (slot, v) in values[i..end].iter_mut().zip(median_root(&run, half)) {
                *slot = Some(v);
            }
            i = end;
        } else {
            i += 1;
        }
    }

    let mut filled: Vec<f64> = Vec::with_capacity(values.len());
    let mut left = 0;
    for k in 0..values.len() {
        match values[k] {
            Some(v) => {
                filled.push(v);
                left = k;
            }
            None => {
                let right = k + values[k..].iter().position(Option::is_some).unwrap();
                let (t0, v0) = (times[left], values[left].unwrap());
                let (t1, v1) = (times[right], values[right].unwrap());
                filled.push(v0 + (v1 - v0) * (times[k] - t0) / (t1 - t0));
            }
        }
    }

    let mut smoothed = median_root(&filled, half);
    if params.normalize {
        let m = median(&smoothed);
        for v in &mut smoothed {
            *v /= m;
        }
    }
    let samples = times
        .iter()
        .zip(smoothed)
        .map(|(&time, f)| Sample { time, f0: Some(f) })
        .collect();
    let mut out = PitchTrack::new(samples, &track.source)?;
    out.normalized = params.normalize || track.normalized;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hz() -> PreprocessParams {
        PreprocessParams {
            window: 5,
            normalize: false,
        }
    }

    fn values(t: &PitchTrack) -> Vec<f64> {
        t.voiced().map(|(_, f)| f).collect()
    }

    #[test]
    fn constant_normalizes_to_one() {
        let pairs: Vec<(f64, f64)> = (0..20).map(|i| (i as f64 * 0.01, 200.0)).collect();
        let t = preprocess(&PitchTrack::from_pairs(&pairs, "c").unwrap(), PreprocessParams::default()).unwrap();
        assert!(values(&t).iter().all(|&v| v == 1.0));
        assert!(t.normalized);
    }

    #[test]
    fn gap_is_bridged_linearly() {
        // 200 Hz until 0.10 s, 100 ms unvoiced, 220 Hz from 0.20 s
        let pairs: Vec<(f64, f64)> = (0..=30)
            .map(|i| {
                let t = i as f64 * 0.01;
                let f = match i {
                    0..=10 => 200.0,
                    11..=19 => 0.0,
                    _ => 220.0,
                };
                (t, f)
            })
            .collect();
        let t = preprocess(&PitchTrack::from_pairs(&pairs, "g").unwrap(), hz()).unwrap();
        let v = values(&t);
        for i in 11..=19 {
            let expected = 200.0 + 20.0 * (i - 10) as f64 / 10.0;
            assert!((v[i] - expected).abs() < 1e-9, "{i}: {} vs {expected}", v[i]);
        }
    }

    #[test]
    fn spike_is_removed_and_edges_dropped() {
        let mut pairs: Vec<(f64, f64)> = (0..21).map(|i| (i as f64 * 0.01, 200.0)).collect();
        pairs[10].1 = 400.0;
        pairs[0].1 = 0.0;
        pairs[20].1 = 0.0;
        let t = preprocess(&PitchTrack::from_pairs(&pairs, "s").unwrap(), hz()).unwrap();
        assert_eq!(t.len(), 19);
        assert!(values(&t).iter().all(|&v| v == 200.0));
    }

    #[test]
    fn errors() {
        let silent = PitchTrack::from_pairs(&[(0.0, 0.0), (0.1, 0.0)], "z").unwrap();
        assert_eq!(preprocess(&silent, hz()), Err(ProsodyError::AllUnvoiced));
        let one = PitchTrack::from_pairs(&[(0.0, 100.0)], "o").unwrap();
        let even = PreprocessParams { window: 4, ..hz() };
        assert_eq!(preprocess(&one, even), Err(ProsodyError::InvalidWindow(4)));
    }
}
