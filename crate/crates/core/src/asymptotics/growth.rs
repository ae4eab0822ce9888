use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootscan::{linear_fit, CountingFunction};

/// Default `eps` schedule for [`polya_peaks`].
pub const DEFAULT_SCHEDULE: [f64; 4] = [0.5, 0.25, 0.1, 0.05];
/// Relative slack in the peak inequalities, so exact power laws qualify.
const ROUND_SLACK: f64 = 1e-12;

const DISCRETIZATION_NOTE: &str = "t ranges over the ratios r_j / r_k of sample radii only; r_k is eligible \
when [eps r_k, r_k / eps] lies inside the sampled range";

/// Samples `(r, g(r))` of a positive nondecreasing function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSample {
    points: Vec<(f64, f64)>,
}

impl GrowthSample {
    /// `r` strictly increasing and positive, `g` positive and nondecreasing.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidInput("need at least two samples".into()));
        }
        for (i, &(r, g)) in points.iter().enumerate() {
            if !(r > 0.0 && g > 0.0 && r.is_finite() && g.is_finite()) {
                return Err(Error::InvalidInput(format!("sample {i}: ({r}, {g}) not positive and finite")));
            }
            if i > 0 && !(r > points[i - 1].0 && g >= points[i - 1].1) {
                return Err(Error::InvalidInput(format!("sample {i}: ({r}, {g}) breaks monotonicity")));
            }
        }
        Ok(Self { points })
    }

    pub fn from_fn(radii: &[f64], g: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(radii.iter().map(|&r| (r, g(r))).collect())
    }

    /// `n(r)` sampled at the distinct root moduli in `[r_lo, r_hi]`.
    pub fn from_counting(c: &CountingFunction, r_lo: f64, r_hi: f64) -> Result<Self> {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for &m in c.moduli.iter().filter(|m| **m >= r_lo && **m <= r_hi) {
            if pts.last().is_some_and(|p| p.0 == m) {
                continue;
            }
            pts.push((m, c.n(m) as f64));
        }
        Self::new(pts)
    }

    /// `n` radii spaced geometrically over `[r_lo, r_hi]`.
    pub fn geometric_radii(r_lo: f64, r_hi: f64, n: usize) -> Vec<f64> {
        let q = (r_hi / r_lo).ln() / (n - 1) as f64;
        (0..n).map(|i| r_lo * (q * i as f64).exp()).collect()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn decades(&self) -> f64 {
        (self.points[self.points.len() - 1].0 / self.points[0].0).log10()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,g\n");
        for (r, g) in &self.points {
            s.push_str(&format!("{r:e},{g:e}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with('r')) {
                continue;
            }
            let mut it = line.split(',').map(|f| f.trim().parse::<f64>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(r)), Some(Ok(g)), None) => pts.push((r, g)),
                _ => return Err(Error::InvalidInput(format!("line {}: expected r,g", i + 1))),
            }
        }
        Self::new(pts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeakKind {
    /// `g(t r) <= (1 + eps) t^lambda g(r)`.
    First,
    /// `g(t r) >= (1 - eps) t^lambda g(r)`.
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyaOptions {
    /// Smallest accepted sample span, in decades of `r`.
    pub min_decades: f64,
}

impl Default for PolyaOptions {
    fn default() -> Self {
        Self { min_decades: 3.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub index: usize,
    pub r: f64,
    pub epsilon: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakLevel {
    pub epsilon: f64,
    /// Samples whose whole window `[eps r, r / eps]` is sampled.
    pub eligible: usize,
    pub qualifying: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub lambda: f64,
    pub kind: PeakKind,
    pub schedule: Vec<f64>,
    /// Largest qualifying radius for each `eps` of the schedule, in schedule
    /// order, so `epsilon` is nonincreasing along the list.
    pub peaks: Vec<Peak>,
    pub levels: Vec<PeakLevel>,
    pub note: String,
}

impl PeakReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Discrete search for Pólya peaks of order `lambda`.
pub fn polya_peaks(
    g: &GrowthSample,
    lambda: f64,
    kind: PeakKind,
    schedule: &[f64],
    opts: PolyaOptions,
) -> Result<PeakReport> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidInput(format!("lambda = {lambda}")));
    }
    if schedule.is_empty() || schedule.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
        return Err(Error::InvalidInput("schedule entries must lie in (0, 1)".into()));
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput("schedule must be decreasing".into()));
    }
    if g.decades() < opts.min_decades {
        return Err(Error::InvalidInput(format!(
            "sample spans {:.2} decades, need {}",
            g.decades(),
            opts.min_decades
        )));
    }
    let pts = g.points();
    let (r_min, r_max) = (pts[0].0, pts[pts.len() - 1].0);
    let mut levels = Vec::with_capacity(schedule.len());
    let mut peaks = Vec::new();
    for &eps in schedule {
        let mut eligible = 0;
        let mut qualifying = Vec::new();
        for (k, &(rk, gk)) in pts.iter().enumerate() {
            if rk * eps < r_min * (1.0 - ROUND_SLACK) || rk / eps > r_max * (1.0 + ROUND_SLACK) {
                continue;
            }
            eligible += 1;
            let lo = pts.partition_point(|p| p.0 < rk * eps * (1.0 - ROUND_SLACK));
            let hi = pts.partition_point(|p| p.0 <= rk / eps * (1.0 + ROUND_SLACK));
            let ok = pts[lo..hi].iter().all(|&(rj, gj)| {
                let model = (rj / rk).powf(lambda) * gk;
                match kind {
                    PeakKind::First => gj <= (1.0 + eps) * model * (1.0 + ROUND_SLACK),
                    PeakKind::Second => gj >= (1.0 - eps) * model * (1.0 - ROUND_SLACK),
                }
            });
            if ok {
                qualifying.push(k);
            }
        }
        if let Some(&k) = qualifying.last() {
            peaks.push(Peak { index: k, r: pts[k].0, epsilon: eps });
        }
        levels.push(PeakLevel { epsilon: eps, eligible, qualifying });
    }
    Ok(PeakReport {
        lambda,
        kind,
        schedule: schedule.to_vec(),
        peaks,
        levels,
        note: DISCRETIZATION_NOTE.into(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderBounds {
    pub lower_order: f64,
    pub order: f64,
    /// Least-squares slope of `log g` against `log r` on the final decade.
    pub slope: f64,
    pub slope_stderr: f64,
}

/// Lower order and order from the final decade of the sample.
///
/// With `(r0, g0)` the first sample, `log(g/g0) / log(r/r0)` is evaluated at
/// every sample of the final decade; its minimum and maximum stand in for the
/// lower and upper limits. Anchoring at `r0` removes the `log C / log r` bias
/// of a constant factor.
pub fn order_bounds(g: &GrowthSample) -> Result<OrderBounds> {
    if g.decades() < 3.0 {
        return Err(Error::InvalidInput(format!("sample spans {:.2} decades, need 3", g.decades())));
    }
    let pts = g.points();
    let (r0, g0) = pts[0];
    let r_end = pts[pts.len() - 1].0;
    let tail: Vec<(f64, f64)> = pts.iter().copied().filter(|p| p.0 >= r_end / 10.0).collect();
    let ratios = tail.iter().map(|&(r, v)| (v / g0).ln() / (r / r0).ln());
    let (lower_order, order) = ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| (lo.min(q), hi.max(q)));
    let (slope, slope_stderr) = if tail.len() >= 3 {
        linear_fit(&tail.iter().map(|&(r, v)| (r.ln(), v.ln())).collect::<Vec<_>>())
    } else {
        (f64::NAN, f64::INFINITY)
    };
    Ok(OrderBounds { lower_order, order, slope, slope_stderr })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(rho: f64) -> GrowthSample {
        GrowthSample::from_fn(&GrowthSample::geometric_radii(1.0, 1e4, 400), |r| r.powf(rho)).unwrap()
    }

    #[test]
    fn exact_power_law_peaks_everywhere() {
        let g = power(1.5);
        for kind in [PeakKind::First, PeakKind::Second] {
            let rep = polya_peaks(&g, 1.5, kind, &DEFAULT_SCHEDULE, PolyaOptions::default()).unwrap();
            for lv in &rep.levels {
                assert!(lv.eligible > 0);
                assert_eq!(lv.qualifying.len(), lv.eligible, "eps {}", lv.epsilon);
            }
            assert!(rep.peaks.windows(2).all(|w| w[1].epsilon <= w[0].epsilon));
        }
    }

    #[test]
    fn wrong_exponent_has_no_first_kind_peaks() {
        let rep = polya_peaks(&power(1.5), 1.0, PeakKind::First, &[0.1], PolyaOptions::default()).unwrap();
        assert!(rep.levels[0].eligible > 0);
        assert!(rep.peaks.is_empty());
    }

    #[test]
    fn short_span_rejected() {
        let g = GrowthSample::from_fn(&GrowthSample::geometric_radii(1.0, 100.0, 50), |r| r).unwrap();
        assert!(polya_peaks(&g, 1.0, PeakKind::First, &[0.5], PolyaOptions::default()).is_err());
        assert!(order_bounds(&g).is_err());
    }

    #[test]
    fn orders() {
        let b = order_bounds(&power(1.5)).unwrap();
        assert!((b.lower_order - 1.5).abs() < 0.01 && (b.order - 1.5).abs() < 0.01);
        assert!((b.slope - 1.5).abs() < 1e-10);
        let radii = GrowthSample::geometric_radii(1.0, 1e12, 2000);
        let c = order_bounds(&GrowthSample::from_fn(&radii, |_| 7.0).unwrap()).unwrap();
        assert_eq!((c.lower_order, c.order), (0.0, 0.0));
    }

    #[test]
    fn bounded_oscillation_keeps_exponent() {
        let radii = GrowthSample::geometric_radii(1.0, 1e12, 4000);
        let g = GrowthSample::from_fn(&radii, |r| r.powf(1.5) * (2.0 + r.ln().sin())).unwrap();
        let b = order_bounds(&g).unwrap();
        assert!((b.lower_order - 1.5).abs() < 0.05 && (b.order - 1.5).abs() < 0.05, "{b:?}");
    }

    #[test]
    fn csv_round_trip() {
        let g = power(1.5);
        assert_eq!(GrowthSample::from_csv(&g.to_csv()).unwrap(), g);
        assert!(GrowthSample::from_csv("r,g\n1,2\n0.5,3\n").is_err());
    }
}
