//! Walk-on-spheres harmonic measure: a disk arc against its closed form, and
//! the slit domain estimate at two scales.

use num_complex::Complex64;
use trirays::harmonic::{build_domain_h, disk_arc_measure, half_plane_fit, walk_on_spheres, PlanarDomain, WalkOptions, GAMMA};

fn main() -> trirays::Result<()> {
    let opts = WalkOptions::default();
    let d = PlanarDomain::disk_arcs(&[0.0, 2.0], &["target", "rest"])?;
    let z = Complex64::new(0.3, -0.2);
    let est = walk_on_spheres(&d, z, &["target"], 50_000, 1, opts)?;
    println!("disk: {:.4} ± {:.4}, exact {:.4}", est.mean, est.stderr, disk_arc_measure(z, 0.0, 2.0)?);

    for (eps, seed) in [(0.1, 2), (0.2, 3)] {
        let h = build_domain_h(eps)?;
        let est = walk_on_spheres(&h, Complex64::new(0.0, 2.0 * eps), &[GAMMA], 50_000, seed, opts)?;
        println!("H(eps = {eps}): {:.2e} ± {:.1e}, censored {}", est.mean, est.stderr, est.censored);
    }

    let samples: Vec<_> = (1..=12)
        .map(|k| {
            let z = Complex64::new(0.2 * k as f64, 0.3 - 0.05 * k as f64);
            (z, 2.0 * z.re + 0.5 * z.inv().re)
        })
        .collect();
    let fit = half_plane_fit(&samples)?;
    println!("fit a = {:.6}, b = {:.6}, in family: {}", fit.a, fit.b, fit.in_family);
    Ok(())
}
