use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{first_failure, Check, Params, RunContext, RunResult};
use crate::odesolve::{elfving_coefficients, elfving_q, monodromy as loop_monodromy, MonodromyReport, PathPlan, TOL_MAX, TOL_MIN};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonodromyParams {
    pub a: f64,
    pub p: f64,
    /// Defaults to the single-valued choice `-27 p / 2`.
    pub b: Option<f64>,
    /// Defaults to `(4 a^2 + 36 a + 45) / (72 p)`.
    pub c: Option<f64>,
    pub tol: f64,
    pub defect_tol: f64,
    /// Relative change of `c` for the converse run; 0 skips it.
    pub perturbation: f64,
    pub min_perturbed_defect: f64,
}

impl Default for MonodromyParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            p: 1.0,
            b: None,
            c: None,
            tol: 1e-11,
            defect_tol: 1e-6,
            perturbation: 0.01,
            min_perturbed_defect: 1e-3,
        }
    }
}

impl Params for MonodromyParams {
    const COMMAND: &'static str = "monodromy";

    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if let Err(e) = elfving_coefficients(self.a, self.p) {
            v.push(e.to_string());
        }
        for (name, x) in [("b", self.b), ("c", self.c)] {
            if x.is_some_and(|x| !x.is_finite()) {
                v.push(format!("{name} must be finite"));
            }
        }
        if !(TOL_MIN..=TOL_MAX).contains(&self.tol) {
            v.push(format!("tol = {} outside [{TOL_MIN}, {TOL_MAX}]", self.tol));
        }
        if !(self.defect_tol > 0.0) || !(self.min_perturbed_defect > 0.0) {
            v.push("defect thresholds must be positive".into());
        }
        if !(self.perturbation.is_finite() && self.perturbation > -1.0) {
            v.push(format!("perturbation = {} must be finite and > -1", self.perturbation));
        }
        v
    }
}

/// Projective monodromy of `w'' + (Q/2) w = 0` around all poles of `Q`.
fn run(a: f64, b: f64, c: f64, p: f64, tol: f64) -> RunResult<MonodromyReport> {
    let q = elfving_q(a, b, c, p)?;
    let coeff = q.scaled(Complex64::new(0.5, 0.0));
    let lp = PathPlan::monodromy_loop(&coeff.poles());
    let m = loop_monodromy(&coeff, &lp, tol)?;
    Ok(MonodromyReport::new(&m, &lp, tol)?)
}

/// Writes `monodromy.json`; checks the defect against the single-valuedness
/// prediction and, with a perturbation, the converse.
pub fn monodromy(p: &MonodromyParams, ctx: &mut RunContext) -> RunResult<()> {
    let (b0, c0) = elfving_coefficients(p.a, p.p)?;
    let (b, c) = (p.b.unwrap_or(b0), p.c.unwrap_or(c0));
    let predicted = (b - b0).abs() <= 1e-12 * b0.abs().max(1.0) && (c - c0).abs() <= 1e-12 * c0.abs().max(1.0);
    let main = run(p.a, b, c, p.p, p.tol)?;
    let mut checks = vec![if predicted {
        Check::at_most("defect", main.defect, p.defect_tol)
    } else {
        Check::at_least("defect", main.defect, p.min_perturbed_defect)
    }];
    let mut perturbed = serde_json::Value::Null;
    if p.perturbation != 0.0 {
        let r = run(p.a, b, c * (1.0 + p.perturbation), p.p, p.tol)?;
        checks.push(Check::at_least("perturbed_defect", r.defect, p.min_perturbed_defect));
        perturbed = serde_json::to_value(&r).expect("report serializes");
    }
    ctx.write_json(
        "monodromy.json",
        &json!({
            "a": p.a, "b": b, "c": c, "p": p.p,
            "single_valued_predicted": predicted,
            "report": main,
            "perturbed": perturbed,
            "checks": checks,
        }),
    )?;
    first_failure(&checks)
}
