use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Region;
use crate::error::{Error, Result};
use crate::mero::MeroMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    ToZero,
    ToOne,
    ToInfinity,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeThresholds {
    pub small: f64,
    pub large: f64,
}

impl Default for ProbeThresholds {
    fn default() -> Self {
        Self { small: 1e-3, large: 1e3 }
    }
}

/// Geometric radii `r0, 1.5 r0, ...` up to at least `r_max`.
pub fn probe_radii(r0: f64, r_max: f64) -> Vec<f64> {
    let mut v = vec![r0];
    while *v.last().unwrap() < r_max {
        let next = v.last().unwrap() * 1.5;
        v.push(next);
    }
    v
}

/// Limit of `f` along the bisector of `sector`.
///
/// Each candidate (`|f|`, `|f - 1|`, `1/|f|`) must fall below the threshold
/// at the largest radius and stay below it from its first crossing on.
pub fn sector_limit_probe<M: MeroMap + ?Sized>(f: &M, sector: &Region, radii: &[f64], th: ProbeThresholds) -> Result<Limit> {
    let Region::AnnulusSector { center, theta_lo, theta_hi, .. } = *sector else {
        return Err(Error::InvalidInput("sector probe needs an annulus sector".into()));
    };
    if radii.is_empty() {
        return Err(Error::InvalidInput("no probe radii".into()));
    }
    let bis = (theta_lo + theta_hi) / 2.0;
    let one = Complex64::new(1.0, 0.0);
    // log|f|, log|f - 1|
    let mut samples = Vec::with_capacity(radii.len());
    for &r in radii {
        let z = center + Complex64::from_polar(r, bis);
        let v = f.eval(z)?;
        let lf = v.log_abs();
        let l1 = f.a_point(z, Some(one))?.log_abs_value() - v.den.log_abs_value();
        samples.push((lf, l1));
    }
    let (ls, ll) = (th.small.ln(), th.large.ln());
    let settles = |pred: &dyn Fn(&(f64, f64)) -> bool| {
        let first = samples.iter().position(pred);
        matches!(first, Some(i) if samples[i..].iter().all(pred))
    };
    Ok(if settles(&|s| s.0 < ls) {
        Limit::ToZero
    } else if settles(&|s| s.1 < ls) {
        Limit::ToOne
    } else if settles(&|s| s.0 > ll) {
        Limit::ToInfinity
    } else {
        Limit::Inconclusive
    })
}
