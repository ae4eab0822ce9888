use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest prefix accepted by [`average`].
pub const MIN_AVERAGE_LEN: usize = 100;
/// Shortest prefix accepted by [`limsup_product_check`].
pub const MIN_LIMSUP_LEN: usize = 10_000;
/// Largest `|av(x)|` accepted by [`limsup_product_check`].
pub const MEAN_ZERO_TOL: f64 = 1e-2;
const LIMSUP_WINDOWS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Average<T> {
    pub value: T,
    /// Largest distance between the final mean and the partial means over
    /// the last 10% of the prefix.
    pub tail: f64,
}

pub fn average(seq: &[f64]) -> Result<Average<f64>> {
    let a = average_complex(&seq.iter().map(|x| Complex64::new(*x, 0.0)).collect::<Vec<_>>())?;
    Ok(Average { value: a.value.re, tail: a.tail })
}

/// Cesàro mean of a finite prefix.
pub fn average_complex(seq: &[Complex64]) -> Result<Average<Complex64>> {
    if seq.len() < MIN_AVERAGE_LEN {
        return Err(Error::InvalidInput(format!("{} terms, need at least {MIN_AVERAGE_LEN}", seq.len())));
    }
    if seq.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidInput("non-finite term".into()));
    }
    let n = seq.len();
    let tail_start = n - n / 10;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut partial = Vec::with_capacity(n - tail_start);
    for (k, z) in seq.iter().enumerate() {
        sum += z;
        if k + 1 >= tail_start {
            partial.push(sum / (k + 1) as f64);
        }
    }
    let value = sum / n as f64;
    let tail = partial.iter().map(|m| (m - value).norm()).fold(0.0, f64::max);
    Ok(Average { value, tail })
}

/// Finite-sample `limsup`: the final half is cut into ten windows and the
/// largest window maximum, i.e. `sup x_k` over `k >= n/2`, is returned.
///
/// The smallest window maximum would undershoot on almost-periodic input
/// whose beat period exceeds a window (`cos(a + n phi) + cos(b - n phi')`
/// with `phi` close to `phi'`).
pub fn windowed_limsup(seq: &[f64]) -> f64 {
    window_maxima(seq).into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Maxima of the ten windows of the final half.
pub fn window_maxima(seq: &[f64]) -> Vec<f64> {
    let half = &seq[seq.len() / 2..];
    let w = (half.len() / LIMSUP_WINDOWS).max(1);
    half.chunks(w)
        .filter(|c| c.len() == w)
        .map(|c| c.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimsupCheck {
    /// `limsup x_n * limsup |x_n|`.
    pub lhs: f64,
    /// `av(x_n^2)`.
    pub rhs: f64,
    pub tail: f64,
    pub holds: bool,
}

/// Compare `limsup x * limsup |x|` with `av(x^2)` for a bounded real sequence
/// of mean zero.
pub fn limsup_product_check(seq: &[f64]) -> Result<LimsupCheck> {
    if seq.len() < MIN_LIMSUP_LEN {
        return Err(Error::InvalidInput(format!("{} terms, need at least {MIN_LIMSUP_LEN}", seq.len())));
    }
    let mean = average(seq)?;
    if mean.value.abs() > MEAN_ZERO_TOL {
        return Err(Error::Hypothesis(format!("av(x) = {} is not zero", mean.value)));
    }
    let sq: Vec<f64> = seq.iter().map(|x| x * x).collect();
    let second = average(&sq)?;
    let abs: Vec<f64> = seq.iter().map(|x| x.abs()).collect();
    let lhs = windowed_limsup(seq) * windowed_limsup(&abs);
    let rhs = second.value;
    Ok(LimsupCheck { lhs, rhs, tail: second.tail, holds: lhs >= rhs - 3.0 * second.tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn geometric_average_vanishes() {
        let seq: Vec<Complex64> = (1..=10_000).map(|k| Complex64::new(0.0, 1.0).powi(k)).collect();
        let a = average_complex(&seq).unwrap();
        assert!(a.value.norm() <= 2e-4);
    }

    #[test]
    fn constant_cosine() {
        let seq = vec![0.3f64.cos(); 500];
        let a = average(&seq).unwrap();
        assert!((a.value - 0.3f64.cos()).abs() < 1e-14);
        assert_eq!(average(&[0.0; 200]).unwrap(), Average { value: 0.0, tail: 0.0 });
    }

    #[test]
    fn short_prefix_rejected() {
        assert!(average(&[1.0; 10]).is_err());
    }

    #[test]
    fn quarter_turn_cosine() {
        let seq: Vec<f64> = (1..=10_000).map(|k| (k as f64 * PI / 2.0).cos()).collect();
        let c = limsup_product_check(&seq).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12);
        assert!((c.rhs - 0.5).abs() < 1e-3);
        assert!(c.holds);
    }

    #[test]
    fn alternating_sign_is_equality() {
        let seq: Vec<f64> = (1..=10_000).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let c = limsup_product_check(&seq).unwrap();
        assert_eq!((c.lhs, c.rhs), (1.0, 1.0));
        assert!(c.holds);
    }

    #[test]
    fn slow_beat() {
        // beat period about 2260 terms, longer than a window
        let seq: Vec<f64> = (1..=10_000).map(|k| (0.4 + 0.22 * k as f64).cos() + (-2.57 - 0.21722 * k as f64).cos()).collect();
        let c = limsup_product_check(&seq).unwrap();
        assert!(c.lhs > 3.9 && c.holds, "{c:?}");
        let m = window_maxima(&seq);
        assert_eq!(m.len(), 10);
        assert!(m.iter().copied().fold(f64::INFINITY, f64::min) < 1.0);
    }

    #[test]
    fn nonzero_mean_rejected() {
        assert!(matches!(limsup_product_check(&[1.0; 10_000]), Err(Error::Hypothesis(_))));
    }
}
