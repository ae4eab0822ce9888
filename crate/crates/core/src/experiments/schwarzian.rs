use std::f64::consts::TAU;
use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cache::scan;
use super::config::check_positive;
use super::{first_failure, Check, FunctionSpec, Params, RunContext, RunError, RunResult};
use crate::mero::{schwarzian, MeroMap, RationalMap};
use super::RootCache;
use crate::rootscan::Region;

/// Polar grid `r_lo..=r_hi` by `n_theta` angles starting at `theta_offset`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolarGrid {
    pub r_lo: f64,
    pub r_hi: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub theta_offset: f64,
    /// Number of points kept after exclusion.
    pub points: usize,
    /// Points closer than this to a zero, one-point or pole are skipped.
    pub min_distance: f64,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self { r_lo: 1.0, r_hi: 10.0, n_r: 10, n_theta: 12, theta_offset: 0.1, points: 100, min_distance: 0.2 }
    }
}

impl PolarGrid {
    fn problems(&self, v: &mut Vec<String>) {
        if !(0.0 < self.r_lo && self.r_lo <= self.r_hi && self.r_hi.is_finite()) {
            v.push(format!("grid radii [{}, {}] must satisfy 0 < r_lo <= r_hi", self.r_lo, self.r_hi));
        }
        if self.n_r < 2 || self.n_theta < 1 {
            v.push("grid needs n_r >= 2 and n_theta >= 1".into());
        }
        if self.points == 0 || self.points > self.n_r * self.n_theta {
            v.push(format!("grid.points = {} must lie in [1, n_r n_theta]", self.points));
        }
        if !(self.min_distance >= 0.0) {
            v.push("grid.min_distance must be nonnegative".into());
        }
    }

    fn candidates(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n_r * self.n_theta);
        for i in 0..self.n_r {
            let r = self.r_lo + (self.r_hi - self.r_lo) * i as f64 / (self.n_r - 1) as f64;
            for j in 0..self.n_theta {
                out.push(Complex64::from_polar(r, self.theta_offset + TAU * j as f64 / self.n_theta as f64));
            }
        }
        out
    }

    /// First `points` candidates at least `min_distance` from every 0-, 1-
    /// and infinity-point of `f`.
    pub(crate) fn select(&self, spec: &FunctionSpec, f: &dyn MeroMap, cache: Option<&RootCache>) -> RunResult<Vec<Complex64>> {
        let mut avoid = Vec::new();
        if self.min_distance > 0.0 {
            // a box rather than a disk: sector splits of a disk all meet at
            // its center, where maps built from an ODE often vanish
            let h = self.r_hi + self.min_distance;
            let bbox = Region::rectangle(-h - 0.0123, h + 0.0077, -h - 0.0091, h + 0.0137)?;
            for a in [Some(Complex64::new(0.0, 0.0)), Some(Complex64::new(1.0, 0.0)), None] {
                avoid.extend(scan(cache, spec, f, &bbox, a, 1e-10)?.1.into_iter().map(|r| r.location));
            }
        }
        let pts: Vec<Complex64> = self
            .candidates()
            .into_iter()
            .filter(|z| avoid.iter().all(|w| (z - w).norm() >= self.min_distance))
            .take(self.points)
            .collect();
        if pts.len() < self.points {
            return Err(RunError::Quality(format!("only {} grid points clear of a-points", pts.len())));
        }
        Ok(pts)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchwarzianParams {
    pub function: FunctionSpec,
    /// Expected `S(f)`.
    pub expected: RationalMap,
    pub grid: PolarGrid,
    /// Bound on `|S(f) - expected| / (1 + |expected|)`.
    pub tol: f64,
}

impl Default for SchwarzianParams {
    fn default() -> Self {
        let c = |x| Complex64::new(x, 0.0);
        Self {
            function: FunctionSpec::Example1,
            expected: RationalMap::polynomial(vec![c(0.0), c(-2.0)]).expect("valid polynomial"),
            grid: PolarGrid::default(),
            tol: 1e-6,
        }
    }
}

impl Params for SchwarzianParams {
    const COMMAND: &'static str = "schwarzian-check";

    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        self.grid.problems(&mut v);
        if !(self.tol >= 0.0) {
            v.push(format!("tol = {} must be nonnegative", self.tol));
        }
        if let FunctionSpec::Schwarzian { tol, .. } = self.function {
            check_positive(&mut v, "function.tol", tol);
        }
        v
    }
}

/// `(z, S(f)(z), relative residual)` for each point.
pub(crate) fn residuals(f: &dyn MeroMap, expected: &RationalMap, pts: &[Complex64]) -> RunResult<Vec<(Complex64, Complex64, f64)>> {
    pts.iter()
        .map(|&z| {
            let s = schwarzian(f, z)?;
            let e = expected.eval_value(z);
            Ok((z, s, (s - e).norm() / (1.0 + e.norm())))
        })
        .collect()
}

pub(crate) fn residual_csv(rows: &[(Complex64, Complex64, f64)]) -> String {
    let mut s = String::from("z_re,z_im,s_re,s_im,residual\n");
    for (z, v, r) in rows {
        let _ = writeln!(s, "{:e},{:e},{:e},{:e},{:e}", z.re, z.im, v.re, v.im, r);
    }
    s
}

/// Writes `residuals.csv` and `report.json`.
pub fn schwarzian_check(p: &SchwarzianParams, ctx: &mut RunContext) -> RunResult<()> {
    let f = p.function.build()?;
    let pts = p.grid.select(&p.function, f.as_ref(), ctx.cache.as_ref())?;
    let rows = residuals(f.as_ref(), &p.expected, &pts)?;
    ctx.write("residuals.csv", &residual_csv(&rows))?;
    let max = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let checks = vec![Check::at_most("schwarzian_residual", max, p.tol)];
    ctx.write_json("report.json", &json!({ "function": p.function.id(), "points": rows.len(), "checks": checks }))?;
    first_failure(&checks)
}
