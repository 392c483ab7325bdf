use mlg_core::prosody::{
    chant_measure, detect_pauses, detect_resets, fit_polynomial, paratone_segment, preprocess, ChantClass, PitchTrack,
    PreprocessParams, ResetParams, DEFAULT_CHANT_TOLERANCE, MINOR_THIRD,
};
use proptest::prelude::*;

/// Voiced stretches at varying levels separated by silences, 10 ms frames.
/// Each voiced frame carries a little jitter so medians have work to do.
fn track() -> impl Strategy<Value = PitchTrack> {
    let stretch = (1usize..60, 80.0f64..400.0, prop::collection::vec(-15.0f64..15.0, 60), 0usize..40);
    prop::collection::vec(stretch, 1..8).prop_map(|stretches| {
        let mut pairs = Vec::new();
        for (voiced, level, jitter, silent) in stretches {
            for k in 0..voiced {
                pairs.push((level + jitter[k]).max(1.0));
            }
            pairs.extend(std::iter::repeat_n(0.0, silent));
        }
        let pairs: Vec<(f64, f64)> = pairs.into_iter().enumerate().map(|(i, f)| (i as f64 / 100.0, f)).collect();
        PitchTrack::from_pairs(&pairs, "generated").unwrap()
    })
}

fn max_gap(a: &PitchTrack, b: &PitchTrack) -> f64 {
    assert_eq!(a.len(), b.len());
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| match (x.f0, y.f0) {
            (Some(p), Some(q)) => (p - q).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn preprocessing_is_idempotent(t in track(), normalize in any::<bool>(), half in 0usize..4) {
        let params = PreprocessParams { window: 2 * half + 1, normalize };
        let once = preprocess(&t, params).unwrap();
        let twice = preprocess(&once, params).unwrap();
        prop_assert!(max_gap(&once, &twice) <= 1e-12, "gap {}", max_gap(&once, &twice));
    }

    #[test]
    fn residuals_are_orthogonal_to_the_design(t in track(), degree in 1usize..=2) {
        // a single voiced frame cannot carry a line
        let Ok(fit) = fit_polynomial(&t, degree) else { return Ok(()) };
        let r = fit.residuals(&t);
        let y_norm = t.voiced().map(|(_, f)| f * f).sum::<f64>().sqrt();
        for j in 0..=degree as i32 {
            let dot: f64 = r.iter().map(|(x, e)| e * x.powi(j)).sum();
            let col_norm = r.iter().map(|(x, _)| x.powi(2 * j)).sum::<f64>().sqrt();
            prop_assert!(dot.abs() <= 1e-9 * y_norm * col_norm.max(1.0), "column {j}: {dot}");
        }
    }

    #[test]
    fn pauses_and_units_tile_the_track(t in track(), min in 0.05f64..0.5) {
        let seg = detect_pauses(&t, min);
        let mut pieces: Vec<(f64, f64)> = seg.pauses.iter().chain(&seg.units).map(|s| (s.start, s.end)).collect();
        pieces.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(pieces[0].0, seg.span.start);
        prop_assert_eq!(pieces.last().unwrap().1, seg.span.end);
        for w in pieces.windows(2) {
            prop_assert_eq!(w[0].1, w[1].0);
        }
        prop_assert!(seg.pauses.iter().all(|p| p.duration() > min));
        prop_assert!(!seg.units.is_empty());
    }

    #[test]
    fn chant_ratio_ignores_scale(a in 50.0f64..500.0, b in 50.0f64..500.0, k in 0.1f64..10.0) {
        let base = chant_measure(a, b, DEFAULT_CHANT_TOLERANCE).unwrap();
        let scaled = chant_measure(k * a, k * b, DEFAULT_CHANT_TOLERANCE).unwrap();
        prop_assert!((base.ratio - scaled.ratio).abs() <= 1e-12 * base.ratio);
        let on_edge = ((base.ratio - MINOR_THIRD).abs() - DEFAULT_CHANT_TOLERANCE).abs() < 1e-9;
        if !on_edge {
            prop_assert_eq!(base.classification, scaled.classification);
        }
        let expected = if (a / b - MINOR_THIRD).abs() <= DEFAULT_CHANT_TOLERANCE { ChantClass::MinorThird } else { ChantClass::Other };
        if !on_edge {
            prop_assert_eq!(base.classification, expected);
        }
    }

    #[test]
    fn paratones_open_at_major_resets(t in track(), min_jump in 1.0f64..1.4, major in 1.2f64..2.0) {
        let hz = preprocess(&t, PreprocessParams { window: 5, normalize: false }).unwrap();
        let seg = detect_pauses(&t, 0.2);
        let params = ResetParams { min_jump, ..ResetParams::default() };
        let resets = detect_resets(&hz, &seg, &params);
        prop_assert!(resets.iter().all(|r| r.magnitude >= min_jump));
        let paratones = paratone_segment(&hz, &seg, &resets, &params, major);
        let majors = resets.iter().filter(|r| r.magnitude >= major).count();
        prop_assert_eq!(paratones.len(), 1 + majors);
        prop_assert_eq!(paratones[0].span.start, seg.span.start);
        prop_assert_eq!(paratones.last().unwrap().span.end, seg.span.end);
        for w in paratones.windows(2) {
            prop_assert_eq!(w[0].span.end, w[1].span.start);
            prop_assert!(w[0].span.start < w[1].span.start);
        }
    }
}

