use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_FIT_SAMPLES: usize = 10;
/// RMS misfit, relative to the RMS of the data, below which the samples are
/// taken to come from the family `Re(a z + b / z)`.
pub const FAMILY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlaneFit {
    pub a: f64,
    pub b: f64,
    /// RMS misfit.
    pub residual: f64,
    pub in_family: bool,
}

/// Nonnegative least squares fit of `u(z) ~ a Re z + b Re(1/z)` on the
/// right half-plane.
pub fn half_plane_fit(samples: &[(Complex64, f64)]) -> Result<HalfPlaneFit> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::InvalidInput(format!("{} samples, need {MIN_FIT_SAMPLES}", samples.len())));
    }
    if let Some((z, _)) = samples.iter().find(|(z, u)| !(z.re > 0.0) || !u.is_finite()) {
        return Err(Error::InvalidInput(format!("sample at {z} is not in the right half-plane")));
    }
    let rows: Vec<([f64; 2], f64)> = samples.iter().map(|(z, u)| ([z.re, z.inv().re], *u)).collect();
    let rss = |a: f64, b: f64| rows.iter().map(|(x, u)| (a * x[0] + b * x[1] - u).powi(2)).sum::<f64>();
    let single = |k: usize| {
        let sxx: f64 = rows.iter().map(|(x, _)| x[k] * x[k]).sum();
        let sxu: f64 = rows.iter().map(|(x, u)| x[k] * u).sum();
        (sxu / sxx).max(0.0)
    };
    let mut m = Matrix2::zeros();
    let mut rhs = Vector2::zeros();
    for (x, u) in &rows {
        let v = Vector2::new(x[0], x[1]);
        m += v * v.transpose();
        rhs += v * *u;
    }
    let mut candidates = vec![(0.0, 0.0), (single(0), 0.0), (0.0, single(1))];
    if let Some(sol) = m.lu().solve(&rhs) {
        if sol[0] >= 0.0 && sol[1] >= 0.0 {
            candidates.push((sol[0], sol[1]));
        }
    }
    let (a, b) = candidates
        .into_iter()
        .min_by(|p, q| rss(p.0, p.1).total_cmp(&rss(q.0, q.1)))
        .expect("candidates nonempty");
    let n = rows.len() as f64;
    let residual = (rss(a, b) / n).sqrt();
    let scale = (rows.iter().map(|(_, u)| u * u).sum::<f64>() / n).sqrt();
    Ok(HalfPlaneFit { a, b, residual, in_family: residual <= FAMILY_TOL * scale.max(f64::MIN_POSITIVE) })
}
