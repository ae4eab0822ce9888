use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cache::scan;
use super::{first_failure, Check, FunctionSpec, Params, RunContext, RunError, RunResult};
use crate::asymptotics::{order_bounds, polya_peaks, GrowthSample, PeakKind, PolyaOptions, DEFAULT_SCHEDULE};
use crate::mero::Example1;
use crate::rootscan::{combined, counting, Region};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SampleSpec {
    /// `g(r) = r^exponent` at geometric radii.
    Power { exponent: f64, r_lo: f64, r_hi: f64, points: usize },
    /// `r,g` columns.
    Csv { path: PathBuf },
    /// Combined counting function of the example map at its root moduli.
    Example1 { r_lo: f64, r_hi: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PeaksParams {
    pub sample: SampleSpec,
    pub lambda: f64,
    pub kind: PeakKind,
    pub schedule: Vec<f64>,
    pub min_decades: f64,
    /// When set, every schedule level must (or must not) have a qualifying
    /// sample.
    pub expect_peaks: Option<bool>,
}

impl Default for PeaksParams {
    fn default() -> Self {
        Self {
            sample: SampleSpec::Power { exponent: 1.5, r_lo: 1.0, r_hi: 1e3, points: 61 },
            lambda: 1.5,
            kind: PeakKind::First,
            schedule: DEFAULT_SCHEDULE.to_vec(),
            min_decades: PolyaOptions::default().min_decades,
            expect_peaks: Some(true),
        }
    }
}

impl Params for PeaksParams {
    const COMMAND: &'static str = "peaks";

    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        match &self.sample {
            SampleSpec::Power { exponent, r_lo, r_hi, points } => {
                if !(0.0 < *r_lo && r_lo < r_hi && r_hi.is_finite()) {
                    v.push("sample needs 0 < r_lo < r_hi".into());
                }
                if *points < 2 {
                    v.push("sample.points must be at least 2".into());
                }
                if !exponent.is_finite() {
                    v.push("sample.exponent must be finite".into());
                }
            }
            SampleSpec::Csv { path } => {
                if !path.is_file() {
                    v.push(format!("sample file {} not found", path.display()));
                }
            }
            SampleSpec::Example1 { r_lo, r_hi } => {
                if !(0.0 < *r_lo && r_lo < r_hi && r_hi.is_finite()) {
                    v.push("sample needs 0 < r_lo < r_hi".into());
                }
            }
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            v.push(format!("lambda = {} must be nonnegative", self.lambda));
        }
        if self.schedule.is_empty() || self.schedule.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
            v.push("schedule entries must lie in (0, 1)".into());
        }
        if self.schedule.windows(2).any(|w| w[1] >= w[0]) {
            v.push("schedule must be decreasing".into());
        }
        if !(self.min_decades >= 0.0) {
            v.push("min_decades must be nonnegative".into());
        }
        v
    }
}

fn build_sample(s: &SampleSpec, ctx: &RunContext) -> RunResult<GrowthSample> {
    Ok(match s {
        SampleSpec::Power { exponent, r_lo, r_hi, points } => {
            GrowthSample::from_fn(&GrowthSample::geometric_radii(*r_lo, *r_hi, *points), |r| r.powf(*exponent))?
        }
        SampleSpec::Csv { path } => {
            let text = fs::read_to_string(path).map_err(|e| RunError::Config(vec![format!("{}: {e}", path.display())]))?;
            GrowthSample::from_csv(&text)?
        }
        SampleSpec::Example1 { r_lo, r_hi } => {
            let region = Region::full_annulus(Complex64::new(0.0, 0.0), 0.5, *r_hi)?;
            let mut parts = Vec::new();
            for a in [Some(Complex64::new(0.0, 0.0)), Some(Complex64::new(1.0, 0.0)), None] {
                parts.push(counting(&scan(ctx.cache.as_ref(), &FunctionSpec::Example1, &Example1, &region, a, 1e-10)?.1));
            }
            GrowthSample::from_counting(&combined(&parts.iter().collect::<Vec<_>>()), *r_lo, *r_hi)?
        }
    })
}

/// Writes `sample.csv` and `peaks.json`.
pub fn peaks(p: &PeaksParams, ctx: &mut RunContext) -> RunResult<()> {
    let g = build_sample(&p.sample, ctx)?;
    ctx.write("sample.csv", &g.to_csv())?;
    let rep = polya_peaks(&g, p.lambda, p.kind, &p.schedule, PolyaOptions { min_decades: p.min_decades })?;
    let order = order_bounds(&g).ok();
    let mut checks = Vec::new();
    if let Some(want) = p.expect_peaks {
        for l in &rep.levels {
            let n = l.qualifying.len() as f64;
            let name = format!("peaks_at_{}", l.epsilon);
            checks.push(if want { Check::at_least(&name, n, 1.0) } else { Check::at_most(&name, n, 0.0) });
        }
    }
    ctx.write_json("peaks.json", &json!({ "report": rep, "order_bounds": order, "checks": checks }))?;
    first_failure(&checks)
}
