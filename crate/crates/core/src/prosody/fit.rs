use nalgebra::{DMatrix, DVector};

use super::{PitchTrack, ProsodyError};

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct RegressionFit {
    pub degree: usize,
    /// Lowest order first.
    pub coefficients: Vec<f64>,
    pub rmse: f64,
    /// First and last fitted time.
    pub domain: (f64, f64),
}

impl RegressionFit {
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Linear coefficient; the slope for a straight-line fit.
    pub fn slope(&self) -> f64 {
        self.coefficients[1]
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.domain.0 && t <= self.domain.1
    }

    /// `(time, f0 - fit)` for every voiced sample.
    pub fn residuals(&self, track: &PitchTrack) -> Vec<(f64, f64)> {
        track.voiced().map(|(t, f)| (t, f - self.eval(t))).collect()
    }
}

/// Ordinary least squares of voiced f0 on time, solved by QR.
pub fn fit_polynomial(track: &PitchTrack, degree: usize) -> Result<RegressionFit, ProsodyError> {
    if !(1..=2).contains(&degree) {
        return Err(ProsodyError::InvalidDegree(degree));
    }
    let points: Vec<(f64, f64)> = track.voiced().collect();
    let n = points.len();
    if n < degree + 1 {
        return Err(ProsodyError::TooFewSamples {
            needed: degree + 1,
            have: n,
        });
    }
    if points.iter().all(|p| p.0 == points[0].0) {
        return Err(ProsodyError::DegenerateDesign);
    }
    let design = DMatrix::from_fn(n, degree + 1, |i, j| points[i].0.powi(j as i32));
    let y = DVector::from_iterator(n, points.iter().map(|p| p.1));
    let qr = design.qr();
    let rhs = qr.q().transpose() * &y;
    let coef = qr.r().solve_upper_triangular(&rhs).ok_or(ProsodyError::DegenerateDesign)?;
    let mut fit = RegressionFit {
        degree,
        coefficients: coef.iter().copied().collect(),
        rmse: 0.0,
        domain: (points[0].0, points[n - 1].0),
    };
    let sse: f64 = points.iter().map(|&(t, f)| (f - fit.eval(t)).powi(2)).sum();
    fit.rmse = (sse / n as f64).sqrt();
    Ok(fit)
}
