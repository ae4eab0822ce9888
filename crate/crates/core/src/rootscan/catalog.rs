use std::fmt::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Region, RootRecord};
use crate::error::{Error, Result};
use crate::mero::Target;

/// `"0"`, `"1"`, `"inf"` or `"re,im"`.
pub fn target_label(a: Target) -> String {
    match a {
        None => "inf".into(),
        Some(z) if z == Complex64::new(0.0, 0.0) => "0".into(),
        Some(z) if z == Complex64::new(1.0, 0.0) => "1".into(),
        Some(z) => format!("{},{}", z.re, z.im),
    }
}

pub fn parse_target(s: &str) -> Result<Target> {
    let bad = || Error::InvalidInput(format!("target {s:?}: expected 0, 1, inf or re,im"));
    match s.trim() {
        "inf" | "infinity" => Ok(None),
        t => {
            let parts: Vec<&str> = t.split(',').collect();
            let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
            match parts.as_slice() {
                [re] => Ok(Some(Complex64::new(num(re)?, 0.0))),
                [re, im] => Ok(Some(Complex64::new(num(re)?, num(im)?))),
                _ => Err(bad()),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRoot {
    pub z: [f64; 2],
    pub mult: u32,
    pub resid: f64,
}

/// Persisted root list for one map, target and region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootCatalog {
    pub function: String,
    pub target: String,
    pub region: Region,
    pub roots: Vec<CatalogRoot>,
}

impl RootCatalog {
    pub fn new(function: &str, target: Target, region: Region, records: &[RootRecord]) -> Self {
        Self {
            function: function.into(),
            target: target_label(target),
            region,
            roots: records
                .iter()
                .map(|r| CatalogRoot { z: [r.location.re, r.location.im], mult: r.multiplicity, resid: r.refined_residual })
                .collect(),
        }
    }

    pub fn records(&self) -> Result<Vec<RootRecord>> {
        let target = parse_target(&self.target)?;
        Ok(self
            .roots
            .iter()
            .map(|r| RootRecord {
                location: Complex64::new(r.z[0], r.z[1]),
                multiplicity: r.mult,
                target,
                refined_residual: r.resid,
                unrefined: false,
            })
            .collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("z_re,z_im,modulus,arg,mult,target,resid\n");
        for r in &self.roots {
            let z = Complex64::new(r.z[0], r.z[1]);
            let _ = writeln!(s, "{:e},{:e},{:e},{:e},{},{},{:e}", z.re, z.im, z.norm(), z.arg(), r.mult, self.target, r.resid);
        }
        s
    }
}
