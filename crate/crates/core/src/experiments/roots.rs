use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::cache::scan;
use super::config::check_positive;
use super::svg::Scatter;
use super::{FunctionSpec, Params, RunContext, RunError, RunResult};
use crate::mero::RaySpec;
use crate::rootscan::{parse_target, ray_deviation, Region};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RootsParams {
    pub function: FunctionSpec,
    pub region: Region,
    /// `"0"`, `"1"`, `"inf"` or `"re,im"`.
    pub target: String,
    pub tol: f64,
    /// Angles whose deviation from the roots is reported (and drawn).
    pub rays: Vec<f64>,
}

impl Default for RootsParams {
    fn default() -> Self {
        Self {
            function: FunctionSpec::Example1,
            region: Region::full_annulus(Complex64::new(0.0, 0.0), 0.5, 10.0).expect("valid annulus"),
            target: "1".into(),
            tol: 1e-10,
            rays: vec![std::f64::consts::PI],
        }
    }
}

pub(crate) fn region_problems(name: &str, r: &Region) -> Vec<String> {
    let ok = match *r {
        Region::Rectangle { lo, hi } => Region::rectangle(lo.re, hi.re, lo.im, hi.im).is_ok(),
        Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
            Region::annulus_sector(center, r_in, r_out, theta_lo, theta_hi).is_ok()
        }
    };
    if ok {
        Vec::new()
    } else {
        vec![format!("{name} has no area")]
    }
}

impl Params for RootsParams {
    const COMMAND: &'static str = "roots";

    fn validate(&self) -> Vec<String> {
        let mut v = region_problems("region", &self.region);
        check_positive(&mut v, "tol", self.tol);
        if let Err(e) = parse_target(&self.target) {
            v.push(e.to_string());
        }
        if self.rays.iter().any(|t| !t.is_finite()) {
            v.push("rays must be finite angles".into());
        }
        if let FunctionSpec::Schwarzian { tol, .. } = self.function {
            check_positive(&mut v, "function.tol", tol);
        }
        v
    }
}

/// Writes `catalog.json`, `roots.csv`, `report.json` and with `--svg`
/// `roots.svg`.
pub fn roots(p: &RootsParams, ctx: &mut RunContext) -> RunResult<()> {
    let f = p.function.build()?;
    let a = parse_target(&p.target)?;
    let (catalog, recs) = scan(ctx.cache.as_ref(), &p.function, f.as_ref(), &p.region, a, p.tol)?;
    ctx.write_json("catalog.json", &catalog)?;
    ctx.write("roots.csv", &catalog.to_csv())?;
    let mut devs = Vec::new();
    for &t in &p.rays {
        let (max, mean) = ray_deviation(&recs, RaySpec::new(t))?;
        devs.push(json!({ "theta": t, "max": max, "mean": mean }));
    }
    let unrefined = recs.iter().filter(|r| r.unrefined).count();
    ctx.write_json(
        "report.json",
        &json!({
            "function": p.function.id(),
            "target": catalog.target,
            "count": recs.iter().map(|r| r.multiplicity as u64).sum::<u64>(),
            "records": recs.len(),
            "unrefined": unrefined,
            "ray_deviation": devs,
        }),
    )?;
    if ctx.svg {
        let mut s = Scatter::new().series(&format!("target {}", catalog.target), recs.iter().map(|r| r.location).collect());
        for &t in &p.rays {
            s = s.ray(t);
        }
        ctx.write("roots.svg", &s.render())?;
    }
    if unrefined > 0 {
        return Err(RunError::Quality(format!("{unrefined} roots did not refine")));
    }
    Ok(())
}
