use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cache::scan;
use super::schwarzian::{residual_csv, residuals, PolarGrid};
use super::svg::Scatter;
use super::{first_failure, Check, FunctionSpec, Params, RunContext, RunResult};
use crate::asymptotics::{polya_peaks, GrowthSample, PeakKind, PolyaOptions};
use crate::mero::{Example1, RationalMap, RaySpec, Target};
use crate::rootscan::{
    combined, counting, growth_exponent, probe_radii, ray_deviation, sector_limit_probe, target_label, Limit,
    ProbeThresholds, Region, RootRecord,
};

/// Counting-function checks over a large disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrowthParams {
    /// Fit range for the exponent of the combined `n(r)`.
    pub r_lo: f64,
    pub r_hi: f64,
    pub exponent_window: [f64; 2],
    /// `n(r, 1) 3 pi / (2 r^{3/2})` is checked at `r_hi`.
    pub density_tol: f64,
    /// Pólya peak search on the combined `n(r)` over `[peak_r_lo, r_hi]`.
    pub peak_r_lo: f64,
    pub peak_lambda: f64,
    pub peak_epsilon: f64,
    pub peak_min_decades: f64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        Self {
            r_lo: 20.0,
            r_hi: 200.0,
            exponent_window: [1.45, 1.55],
            density_tol: 0.05,
            peak_r_lo: 5.0,
            peak_lambda: 1.5,
            peak_epsilon: 0.25,
            peak_min_decades: 1.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Example1Params {
    /// Scan annulus for the ray checks.
    pub annulus: [f64; 2],
    pub count_radius: f64,
    pub expected_count: u64,
    pub ray_tol: f64,
    pub scan_tol: f64,
    pub schwarzian_tol: f64,
    pub grid: PolarGrid,
    /// Probe radii run geometrically from `probe_r0` past `probe_r_max`.
    pub probe_r0: f64,
    pub probe_r_max: f64,
    /// `null` skips the large-disk scans.
    pub growth: Option<GrowthParams>,
}

impl Default for Example1Params {
    fn default() -> Self {
        Self {
            annulus: [0.5, 12.0],
            count_radius: 10.0,
            expected_count: 6,
            ray_tol: 1e-6,
            scan_tol: 1e-10,
            schwarzian_tol: 1e-6,
            grid: PolarGrid::default(),
            probe_r0: 2.0,
            probe_r_max: 30.0,
            growth: Some(GrowthParams::default()),
        }
    }
}

impl Params for Example1Params {
    const COMMAND: &'static str = "verify-example1";

    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let [a, b] = self.annulus;
        if !(0.0 < a && a < b && b.is_finite()) {
            v.push(format!("annulus [{a}, {b}] must satisfy 0 < r_in < r_out"));
        }
        if !(self.count_radius > a && self.count_radius <= b) {
            v.push(format!("count_radius = {} must lie in (r_in, r_out]", self.count_radius));
        }
        for (name, x) in [("ray_tol", self.ray_tol), ("scan_tol", self.scan_tol), ("schwarzian_tol", self.schwarzian_tol)] {
            if !(x >= 0.0) {
                v.push(format!("{name} = {x} must be nonnegative"));
            }
        }
        if !(0.0 < self.probe_r0 && self.probe_r0 < self.probe_r_max && self.probe_r_max.is_finite()) {
            v.push("probe radii need 0 < probe_r0 < probe_r_max".into());
        }
        if let Some(g) = &self.growth {
            if !(g.peak_r_lo > 0.0 && g.peak_r_lo < g.r_hi) {
                v.push("growth.peak_r_lo must lie in (0, r_hi)".into());
            }
            if !(0.0 < g.r_lo && g.r_lo < g.r_hi && g.r_hi.is_finite()) {
                v.push("growth needs 0 < r_lo < r_hi".into());
            }
            if !(g.exponent_window[0] <= g.exponent_window[1]) {
                v.push("growth.exponent_window is reversed".into());
            }
            if !(g.peak_epsilon > 0.0 && g.peak_epsilon < 1.0) {
                v.push("growth.peak_epsilon must lie in (0, 1)".into());
            }
        }
        v
    }
}

const TARGETS: [(Target, f64, &str); 3] = [
    (Some(Complex64::new(0.0, 0.0)), PI / 3.0, "0"),
    (Some(Complex64::new(1.0, 0.0)), PI, "1"),
    (None, -PI / 3.0, "inf"),
];

/// Three sectors between the rays; the limits there are 0, 1 and infinity.
pub(crate) fn sector_limits(r0: f64, r_max: f64) -> RunResult<Vec<(f64, Limit)>> {
    let radii = probe_radii(r0, r_max);
    [-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0]
        .into_iter()
        .map(|theta| {
            let s = Region::sector_about(Complex64::new(0.0, 0.0), r0 / 2.0, 2.0 * r_max, theta, PI / 6.0)?;
            Ok((theta, sector_limit_probe(&Example1, &s, &radii, ProbeThresholds::default())?))
        })
        .collect()
}

/// Writes `roots.csv`, `residuals.csv`, `report.json` and with `--svg`
/// `roots.svg`; fails naming the first check out of tolerance.
pub fn verify_example1(p: &Example1Params, ctx: &mut RunContext) -> RunResult<()> {
    let spec = FunctionSpec::Example1;
    let r_scan = p.growth.as_ref().map_or(p.annulus[1], |g| g.r_hi.max(p.annulus[1]));
    let region = Region::full_annulus(Complex64::new(0.0, 0.0), p.annulus[0], r_scan)?;
    let mut checks = Vec::new();
    let mut csv = String::new();
    let mut catalogs: Vec<Vec<RootRecord>> = Vec::new();
    let mut svg = Scatter::new();
    for (a, theta, name) in TARGETS {
        let (cat, recs) = scan(ctx.cache.as_ref(), &spec, &Example1, &region, a, p.scan_tol)?;
        let body = cat.to_csv();
        if csv.is_empty() {
            csv.push_str(&body);
        } else {
            csv.extend(body.lines().skip(1).map(|l| format!("{l}\n")));
        }
        let near: Vec<RootRecord> = recs.iter().filter(|r| r.location.norm() <= p.annulus[1]).copied().collect();
        let n = near.iter().filter(|r| r.location.norm() <= p.count_radius).map(|r| r.multiplicity as u64).sum::<u64>();
        checks.push(Check::equals(&format!("count_{name}"), n as f64, p.expected_count as f64));
        let (dev, _) = ray_deviation(&near, RaySpec::new(theta))?;
        checks.push(Check::at_most(&format!("ray_deviation_{name}"), dev, p.ray_tol));
        let unrefined = recs.iter().filter(|r| r.unrefined).count();
        checks.push(Check::equals(&format!("unrefined_{name}"), unrefined as f64, 0.0));
        svg = svg.series(&format!("target {}", target_label(a)), near.iter().map(|r| r.location).collect()).ray(theta);
        catalogs.push(recs);
    }
    ctx.write("roots.csv", &csv)?;
    if ctx.svg {
        ctx.write("roots.svg", &svg.render())?;
    }

    let pts = p.grid.select(&spec, &Example1, ctx.cache.as_ref())?;
    let c = |x| Complex64::new(x, 0.0);
    let expected = RationalMap::polynomial(vec![c(0.0), c(-2.0)])?;
    let rows = residuals(&Example1, &expected, &pts)?;
    ctx.write("residuals.csv", &residual_csv(&rows))?;
    checks.push(Check::at_most("schwarzian_residual", rows.iter().map(|r| r.2).fold(0.0, f64::max), p.schwarzian_tol));

    let limits = sector_limits(p.probe_r0, p.probe_r_max)?;
    let distinct: BTreeSet<String> = limits.iter().filter(|l| l.1 != Limit::Inconclusive).map(|l| format!("{:?}", l.1)).collect();
    checks.push(Check::equals("sector_limits", distinct.len() as f64, 3.0));

    let mut growth = serde_json::Value::Null;
    if let Some(g) = &p.growth {
        let parts: Vec<_> = catalogs.iter().map(|c| counting(c)).collect();
        let all = combined(&parts.iter().collect::<Vec<_>>());
        let (slope, stderr) = growth_exponent(&all, g.r_lo, g.r_hi)?;
        checks.push(Check::within("growth_exponent", slope, g.exponent_window[0], g.exponent_window[1]));
        let ratio = parts[1].n(g.r_hi) as f64 * 3.0 * PI / (2.0 * g.r_hi.powf(1.5));
        checks.push(Check::within("one_point_density", ratio, 1.0 - g.density_tol, 1.0 + g.density_tol));
        let sample = GrowthSample::from_counting(&all, g.peak_r_lo, g.r_hi)?;
        let rep = polya_peaks(
            &sample,
            g.peak_lambda,
            PeakKind::First,
            &[g.peak_epsilon],
            PolyaOptions { min_decades: g.peak_min_decades },
        )?;
        checks.push(Check::at_least("polya_first_kind", rep.levels[0].qualifying.len() as f64, 1.0));
        growth = json!({ "exponent": slope, "exponent_stderr": stderr, "one_point_density": ratio, "peaks": rep });
    }

    let limits_json: Vec<_> = limits.iter().map(|(t, l)| json!({ "bisector": t, "limit": l })).collect();
    ctx.write_json("report.json", &json!({ "checks": checks, "sector_limits": limits_json, "growth": growth }))?;
    first_failure(&checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(Example1Params::default().validate().is_empty());
        let p = Example1Params { annulus: [2.0, 1.0], ray_tol: -1.0, ..Example1Params::default() };
        assert_eq!(p.validate().len(), 3);
    }
}
