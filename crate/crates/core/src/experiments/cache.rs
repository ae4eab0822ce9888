use std::fs;
use std::path::PathBuf;

use serde_json::json;

use super::{sha256_hex, FunctionSpec, RunResult};
use crate::mero::{MeroMap, Target};
use crate::rootscan::{locate_roots, target_label, Region, RootCatalog, RootRecord};

/// Root catalogs on disk, keyed by the hash of (function, region, target,
/// tolerance).
#[derive(Clone, Debug)]
pub struct RootCache {
    dir: PathBuf,
}

impl RootCache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir }
    }

    pub fn key(function: &FunctionSpec, region: &Region, target: Target, tol: f64) -> String {
        let k = json!({ "function": function, "region": region, "target": target_label(target), "tol": tol });
        sha256_hex(k.to_string().as_bytes())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<RootCatalog> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, catalog: &RootCatalog) -> RunResult<()> {
        fs::create_dir_all(&self.dir)?;
        let s = serde_json::to_string(catalog).map_err(|e| super::RunError::Io(e.to_string()))?;
        fs::write(self.path(key), s)?;
        Ok(())
    }
}

/// Catalog of `a`-points, from the cache when one is given and has it.
pub(crate) fn scan(
    cache: Option<&RootCache>,
    spec: &FunctionSpec,
    f: &dyn MeroMap,
    region: &Region,
    a: Target,
    tol: f64,
) -> RunResult<(RootCatalog, Vec<RootRecord>)> {
    let key = RootCache::key(spec, region, a, tol);
    if let Some(c) = cache.and_then(|c| c.get(&key)) {
        let recs = c.records()?;
        return Ok((c, recs));
    }
    let mut recs = locate_roots(f, region, a, tol)?;
    recs.sort_by(|p, q| p.location.norm().total_cmp(&q.location.norm()).then(p.location.arg().total_cmp(&q.location.arg())));
    let catalog = RootCatalog::new(&spec.id(), a, *region, &recs);
    if let Some(c) = cache {
        if recs.iter().all(|r| !r.unrefined) {
            c.put(&key, &catalog)?;
        }
    }
    Ok((catalog, recs))
}
