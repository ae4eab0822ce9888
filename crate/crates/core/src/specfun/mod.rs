//! The Airy function Ai on the whole complex plane.
//!
//! Three evaluation routes:
//!
//! * `|z| <= SERIES_RADIUS`: Maclaurin series, differentiated termwise for the jet.
//! * `|z| > SERIES_RADIUS`, `|arg z| <= 2pi/3`: exponentially scaled Laplace
//!   integral for `K_{1/3}`, `K_{2/3}` (see [`integral`]).
//! * `|z| > SERIES_RADIUS`, `|arg z| > 2pi/3`: the connection identity
//!   `Ai(z) = -w Ai(w z) - conj(w) Ai(conj(w) z)`, `w = e^{2 pi i / 3}`, whose
//!   two terms both land in the scaled sector.
//!
//! The scaled routes return `Ai = exp(log_scale) * jet`, which keeps quotients
//! such as `Ai(w z) / Ai(conj(w) z)` computable long after each factor overflows.

mod integral;
mod series;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet3, ScaledJet};

pub use series::{AI0, AIP0_NEG};

pub type ComplexPoint = Complex64;

/// Series/integral switch radius. The band `[3, 4.5]` is cross-validated in tests.
pub const SERIES_RADIUS: f64 = 3.5;

/// Largest zero index accepted by [`airy_zero`].
pub const MAX_ZERO_INDEX: u64 = 1_000_000;

/// `e^{2 pi i / 3}`.
pub fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 3.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValue {
    pub ai: ComplexPoint,
    pub ai_prime: ComplexPoint,
    /// Truncation estimate of the expansion used, in absolute terms. Away from
    /// the series disk this is a relative accuracy of about `1e-14` times
    /// `|exp(-zeta)|`, so it exceeds `1e-10` wherever `|Ai|` is large.
    pub est_abs_error: f64,
}

pub(crate) fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("non-finite argument {z}")))
    }
}

/// Ai(z) and Ai'(z).
pub fn airy(z: ComplexPoint) -> Result<AiryValue> {
    check_finite(z)?;
    let (sj, est) = airy_scaled_with_estimate(z, true);
    if sj.log_scale.re > 700.0 {
        return Err(Error::Range(format!(
            "|Ai({z})| ~ exp({:.1}) overflows; use airy_scaled",
            sj.log_scale.re
        )));
    }
    let j = sj.to_jet();
    let est_abs_error = est * sj.log_scale.re.exp();
    Ok(AiryValue { ai: j.c[0], ai_prime: j.c[1], est_abs_error })
}

/// Jet of Ai at `z` in exp-scaled form.
pub fn airy_scaled(z: ComplexPoint) -> ScaledJet {
    airy_scaled_with_estimate(z, false).0
}

fn airy_scaled_with_estimate(z: Complex64, with_estimate: bool) -> (ScaledJet, f64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        let (jet, est) = series::airy_series_jet(z);
        return (ScaledJet::unscaled(jet), est);
    }
    let theta = z.arg();
    let limit = 2.0 * PI / 3.0;
    if theta.abs() <= limit {
        return scaled_direct(r, theta, with_estimate);
    }
    // connection identity, both rotated arguments have |arg| <= 2pi/3
    let (t_plus, t_minus) = if theta > 0.0 {
        (theta - 4.0 * PI / 3.0, theta - limit)
    } else {
        (theta + limit, theta + 4.0 * PI / 3.0)
    };
    let w = omega();
    let (a_plus, e_plus) = scaled_direct(r, t_plus.clamp(-limit, limit), with_estimate);
    let (a_minus, e_minus) = scaled_direct(r, t_minus.clamp(-limit, limit), with_estimate);
    let jp = ScaledJet { jet: a_plus.jet.chain_linear(w), log_scale: a_plus.log_scale };
    let jm = ScaledJet { jet: a_minus.jet.chain_linear(w.conj()), log_scale: a_minus.log_scale };
    let out = jp.lin_comb(-w, &jm, -w.conj());
    let rel = |s: &ScaledJet| (s.log_scale.re - out.log_scale.re).exp();
    (out, e_plus * rel(&a_plus) + e_minus * rel(&a_minus))
}

/// Scaled jet at `r e^{i theta}` with `|theta| <= 2pi/3`.
fn scaled_direct(r: f64, theta: f64, with_estimate: bool) -> (ScaledJet, f64) {
    let (ai, aip, est) = integral::airy_scaled_polar(r, theta, with_estimate);
    let z = Complex64::from_polar(r, theta);
    let jet = Jet3::new(ai, aip, z * ai / 2.0, (ai + z * aip) / 6.0);
    let zeta = integral::zeta_polar(r, theta);
    let sj = ScaledJet { jet, log_scale: -zeta };
    // est refers to the unnormalized jet; keep it on the same footing
    let s = sj.jet.scale();
    let norm = sj.normalized();
    let factor = if s > 0.0 { 1.0 / s } else { 1.0 };
    (norm, est * factor)
}

/// `|Ai(z) + e^{-2pi i/3} Ai(e^{-2pi i/3} z) + e^{2pi i/3} Ai(e^{2pi i/3} z)|`,
/// evaluated in exp-scaled form and reported relative to `max(1, largest term)`.
pub fn airy_connection_residual(z: ComplexPoint) -> Result<f64> {
    check_finite(z)?;
    let w = omega();
    let a0 = airy_scaled(z);
    let a1 = airy_scaled(w.conj() * z);
    let a2 = airy_scaled(w * z);
    let terms = [(a0, Complex64::new(1.0, 0.0)), (a1, w.conj()), (a2, w)];
    let top = terms.iter().map(|(s, _)| s.log_abs_value()).fold(f64::NEG_INFINITY, f64::max);
    let reference = top.max(0.0);
    let sum: Complex64 = terms
        .iter()
        .map(|(s, k)| k * s.jet.c[0] * (s.log_scale - Complex64::new(reference, 0.0)).exp())
        .sum();
    Ok(sum.norm())
}

/// k-th zero of Ai (all zeros are negative, `a_{k+1} < a_k`).
pub fn airy_zero(k: u64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidInput("zero index starts at 1".into()));
    }
    if k > MAX_ZERO_INDEX {
        return Err(Error::Range(format!("zero index {k} exceeds {MAX_ZERO_INDEX}")));
    }
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let mut x = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / (t * t) - 5.0 / 36.0 / t.powi(4));
    for _ in 0..60 {
        let j = airy_scaled(Complex64::new(x, 0.0)).to_jet();
        let dx = (j.c[0] / j.c[1]).re;
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    Ok(x)
}

/// Asymptotic location `-(3 pi (4k - 1) / 8)^{2/3}` used to seed [`airy_zero`].
pub fn airy_zero_asymptotic(k: u64) -> f64 {
    -(3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0).powf(2.0 / 3.0)
}
