//! Run an experiment from code: a root scan of a rational map, with the
//! manifest written next to the artifacts.

use std::path::PathBuf;

use trirays::experiments::{execute, roots, ExperimentConfig, FunctionSpec, RootsParams};
use trirays::mero::RationalMap;
use trirays::rootscan::Region;

fn main() {
    let c = |re: f64| num_complex::Complex64::new(re, 0.0);
    let map = RationalMap::new(vec![c(-1.0), c(0.0), c(0.0), c(1.0)], vec![c(1.0)]).expect("valid map");
    let params = RootsParams {
        function: FunctionSpec::Rational { map },
        region: Region::rectangle(-2.0, 2.0, -2.0, 2.0).expect("valid region"),
        target: "0".into(),
        rays: vec![0.0],
        ..RootsParams::default()
    };
    let cfg = ExperimentConfig { seed: 0, out: None, cache: false, params };
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("trirays-roots"));
    match execute(&cfg, &out, false, roots) {
        Ok(m) => {
            println!("config sha256 {}", m.config_sha256);
            for o in &m.outputs {
                println!("{}/{}  {}", out.display(), o.file, o.sha256);
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
