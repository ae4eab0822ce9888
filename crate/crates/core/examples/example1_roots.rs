//! Zeros, poles and one-points of `e^{i pi/3} Ai(w z) / Ai(conj(w) z)` in an
//! annulus, and how far they stray from their rays.

use std::f64::consts::PI;

use num_complex::Complex64;
use trirays::mero::{Example1, RaySpec};
use trirays::rootscan::{locate_roots, ray_deviation, target_label, Region};

fn main() -> trirays::Result<()> {
    let region = Region::full_annulus(Complex64::new(0.0, 0.0), 0.5, 8.0)?;
    let cases = [(Some(Complex64::new(0.0, 0.0)), PI / 3.0), (None, -PI / 3.0), (Some(Complex64::new(1.0, 0.0)), PI)];
    for (a, theta) in cases {
        let roots = locate_roots(&Example1, &region, a, 1e-10)?;
        let (max, mean) = ray_deviation(&roots, RaySpec::new(theta))?;
        println!("{}-points: {}  ray deviation mean {mean:.1e} max {max:.1e}", target_label(a), roots.len());
        for r in &roots {
            println!("  {:.12}", r.location);
        }
    }
    println!("first zero (closed form) {:.12}", Example1::zero(1)?);
    Ok(())
}
