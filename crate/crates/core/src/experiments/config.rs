use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{RunError, RunResult};
use crate::mero::{Example1, ExpMap, MeroMap, RationalMap};
use crate::odesolve::{solve_schwarzian, TransportState};

/// Command-specific parameters.
pub trait Params: Serialize + DeserializeOwned + Default + Clone {
    const COMMAND: &'static str;

    /// All violations, empty when the parameters are usable.
    fn validate(&self) -> Vec<String>;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig<P> {
    pub seed: u64,
    /// Output directory; `--out` takes precedence.
    pub out: Option<PathBuf>,
    /// Reuse root catalogs from `<out>/cache`.
    pub cache: bool,
    pub params: P,
}

impl<P: Default> Default for ExperimentConfig<P> {
    fn default() -> Self {
        Self { seed: 0, out: None, cache: false, params: P::default() }
    }
}

/// Defaults when `path` is `None`.
pub fn load_config<P: Params>(path: Option<&Path>) -> RunResult<ExperimentConfig<P>> {
    let Some(path) = path else {
        return Ok(ExperimentConfig::default());
    };
    let text = fs::read_to_string(path).map_err(|e| RunError::Config(vec![format!("{}: {e}", path.display())]))?;
    serde_json::from_str(&text).map_err(|e| RunError::Config(vec![format!("{}: {e}", path.display())]))
}

/// Map under study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
#[derive(Default)]
pub enum FunctionSpec {
    #[default]
    Example1,
    Exp,
    Rational { map: RationalMap },
    /// `w1 / w2` for `w'' + (Q/2) w = 0` with `w1 = 0, w1' = 1` and
    /// `w2 = 1, w2' = 0` at `base`.
    Schwarzian {
        q: RationalMap,
        base: [f64; 2],
        #[serde(default = "default_ode_tol")]
        tol: f64,
    },
}

fn default_ode_tol() -> f64 {
    1e-11
}


impl FunctionSpec {
    pub fn id(&self) -> String {
        match self {
            FunctionSpec::Example1 => "example1".into(),
            FunctionSpec::Exp => "exp".into(),
            FunctionSpec::Rational { .. } => "rational".into(),
            FunctionSpec::Schwarzian { .. } => "schwarzian".into(),
        }
    }

    pub fn build(&self) -> RunResult<Box<dyn MeroMap>> {
        Ok(match self {
            FunctionSpec::Example1 => Box::new(Example1),
            FunctionSpec::Exp => Box::new(ExpMap),
            FunctionSpec::Rational { map } => Box::new(map.clone()),
            FunctionSpec::Schwarzian { q, base, tol } => {
                let basis = [TransportState::real(0.0, 1.0), TransportState::real(1.0, 0.0)];
                Box::new(solve_schwarzian(q, Complex64::new(base[0], base[1]), basis, *tol)?.with_wronskian_hint())
            }
        })
    }
}

pub(crate) fn check_positive(v: &mut Vec<String>, name: &str, x: f64) {
    if !(x > 0.0 && x.is_finite()) {
        v.push(format!("{name} = {x} must be positive and finite"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
    #[serde(default, deny_unknown_fields)]
    struct Dummy {
        x: f64,
    }

    impl Params for Dummy {
        const COMMAND: &'static str = "dummy";
        fn validate(&self) -> Vec<String> {
            Vec::new()
        }
    }

    #[test]
    fn parse_and_defaults() {
        let c: ExperimentConfig<Dummy> = serde_json::from_str(r#"{"seed": 4, "params": {"x": 2.5}}"#).unwrap();
        assert_eq!((c.seed, c.params.x, c.cache), (4, 2.5, false));
        assert!(serde_json::from_str::<ExperimentConfig<Dummy>>(r#"{"sed": 4}"#).is_err());
        assert_eq!(load_config::<Dummy>(None).unwrap(), ExperimentConfig::default());
    }

    #[test]
    fn function_specs() {
        let f: FunctionSpec =
            serde_json::from_str(r#"{"kind": "rational", "map": {"num": [[0, 0], [1, 0]], "den": [[1, 0]]}}"#).unwrap();
        let m = f.build().unwrap();
        assert_eq!(m.value(Complex64::new(2.0, 1.0)).unwrap(), Complex64::new(2.0, 1.0));
        let f: FunctionSpec = serde_json::from_str(r#"{"kind": "example1"}"#).unwrap();
        assert_eq!(f.id(), "example1");
    }
}
