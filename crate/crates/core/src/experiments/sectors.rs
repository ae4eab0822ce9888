use std::f64::consts::PI;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{first_failure, Check, Params, RunContext, RunResult};
use crate::asymptotics::{sector_sweep, SweepRow, UnitTuple};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SectorParams {
    /// Seeded random tuples, drawn from streams `(seed, i)`.
    pub tuples: usize,
    pub n_max: u64,
    /// Append `a = 1, b = -1, p = e^i, q = e^-i`.
    pub include_exceptional: bool,
    /// A row fails when its best opening is at least this.
    pub threshold: f64,
}

impl Default for SectorParams {
    fn default() -> Self {
        Self { tuples: 1000, n_max: 100_000, include_exceptional: true, threshold: PI - 0.01 }
    }
}

impl Params for SectorParams {
    const COMMAND: &'static str = "sector-search";

    fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.tuples == 0 && !self.include_exceptional {
            v.push("no tuples to search".into());
        }
        if self.n_max == 0 {
            v.push("n_max must be at least 1".into());
        }
        if !(self.threshold > 0.0 && self.threshold <= 2.0 * PI) {
            v.push(format!("threshold = {} must lie in (0, 2 pi]", self.threshold));
        }
        v
    }
}

pub(crate) fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("index,alpha,beta,phi,psi,best_n,delta\n");
    for r in rows {
        let t = &r.tuple;
        let _ = writeln!(s, "{},{:e},{:e},{:e},{:e},{},{:e}", r.index, t.alpha, t.beta, t.phi, t.psi, r.best_n, r.delta);
    }
    s
}

/// Writes `sweep.csv` and `summary.json`.
pub fn sector_search(p: &SectorParams, ctx: &mut RunContext) -> RunResult<()> {
    let mut tuples = UnitTuple::seeded(ctx.seed, p.tuples);
    if p.include_exceptional {
        tuples.push(UnitTuple::exceptional(0.0, 1.0)?);
    }
    let rows = sector_sweep(&tuples, p.n_max)?;
    ctx.write("sweep.csv", &sweep_csv(&rows))?;
    let failures: Vec<usize> = rows.iter().filter(|r| r.delta >= p.threshold).map(|r| r.index).collect();
    let worst = rows.iter().max_by(|a, b| a.delta.total_cmp(&b.delta)).expect("at least one tuple");
    let checks = vec![Check::equals("failures", failures.len() as f64, 0.0)];
    ctx.write_json(
        "summary.json",
        &json!({
            "tuples": rows.len(),
            "n_max": p.n_max,
            "threshold": p.threshold,
            "max_delta": worst.delta,
            "worst_index": worst.index,
            "failing_indices": failures,
            "checks": checks,
        }),
    )?;
    first_failure(&checks)
}
