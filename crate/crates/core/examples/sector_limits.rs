//! Limits of the example map along the bisectors of the three sectors
//! between its rays.

use std::f64::consts::PI;

use num_complex::Complex64;
use trirays::mero::Example1;
use trirays::rootscan::{probe_radii, sector_limit_probe, ProbeThresholds, Region};

fn main() -> trirays::Result<()> {
    let radii = probe_radii(2.0, 30.0);
    for theta in [-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0] {
        let s = Region::sector_about(Complex64::new(0.0, 0.0), 1.0, 30.0, theta, PI / 6.0)?;
        let l = sector_limit_probe(&Example1, &s, &radii, ProbeThresholds::default())?;
        println!("bisector {theta:+.4}: {l:?}");
    }
    Ok(())
}
