use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PlanarDomain;
use crate::error::{Error, Result};
use crate::rng::stream;

/// Smallest admissible distance from the starting point to the boundary.
pub const MIN_CLEARANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkOptions {
    /// Absorption shell width relative to the domain diameter.
    pub shell_rel: f64,
    pub max_steps: usize,
    /// Largest tolerated fraction of censored walks.
    pub max_censored: f64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        Self { shell_rel: 1e-4, max_steps: 100_000, max_censored: 1e-3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub walks: usize,
    pub seed: u64,
    pub censored: usize,
}

impl WalkEstimate {
    pub const CSV_HEADER: &'static str = "seed,walks,mean,stderr,censored";

    pub fn csv_row(&self) -> String {
        format!("{},{},{:e},{:e},{}", self.seed, self.walks, self.mean, self.stderr, self.censored)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Outcome {
    Hit,
    Miss,
    Censored,
}

/// Walk-on-spheres estimate of the harmonic measure of the pieces labeled
/// with one of `targets`, seen from `z0`.
///
/// Walk `i` draws from the random stream `(seed, i)`; a walk ends when it
/// comes within the shell of the boundary and is credited to the nearest
/// piece.
pub fn walk_on_spheres(
    domain: &PlanarDomain,
    z0: Complex64,
    targets: &[&str],
    walks: usize,
    seed: u64,
    opts: WalkOptions,
) -> Result<WalkEstimate> {
    if walks < 2 {
        return Err(Error::InvalidInput("need at least two walks".into()));
    }
    if !domain.contains(z0) {
        return Err(Error::InvalidInput(format!("{z0} is not inside the domain")));
    }
    let (d0, _) = domain.nearest(z0);
    if d0 < MIN_CLEARANCE {
        return Err(Error::InvalidInput(format!("{z0} lies {d0:e} from the boundary")));
    }
    let hit: Vec<bool> = domain.pieces().iter().map(|p| targets.contains(&p.label.as_str())).collect();
    let shell = opts.shell_rel * domain.diameter();
    let outcomes: Vec<Outcome> = (0..walks)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i as u64);
            let mut z = z0;
            for _ in 0..opts.max_steps {
                let (d, k) = domain.nearest(z);
                if d <= shell {
                    return if hit[k] { Outcome::Hit } else { Outcome::Miss };
                }
                let t: f64 = rng.gen_range(0.0..TAU);
                z += Complex64::from_polar(d, t);
            }
            Outcome::Censored
        })
        .collect();
    let censored = outcomes.iter().filter(|o| **o == Outcome::Censored).count();
    if censored as f64 > opts.max_censored * walks as f64 {
        return Err(Error::Censored { censored, walks });
    }
    let n = walks - censored;
    let hits = outcomes.iter().filter(|o| **o == Outcome::Hit).count();
    let mean = hits as f64 / n as f64;
    let var = mean * (1.0 - mean) * n as f64 / (n as f64 - 1.0);
    Ok(WalkEstimate { mean, stderr: (var / n as f64).sqrt(), walks, seed, censored })
}

/// Harmonic measure at `z` (`|z| < 1`) of the arc `e^{it}`,
/// `theta_lo <= t <= theta_hi`, in the unit disk.
///
/// Closed form of the Poisson integral: `psi / pi - (theta_hi - theta_lo) / (2 pi)`
/// where `psi` is the angle the arc subtends at `z`.
pub fn disk_arc_measure(z: Complex64, theta_lo: f64, theta_hi: f64) -> Result<f64> {
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("{z} is not inside the unit disk")));
    }
    if !(theta_hi >= theta_lo) {
        return Err(Error::InvalidInput(format!("arc [{theta_lo}, {theta_hi}] is reversed")));
    }
    let w = theta_hi - theta_lo;
    if w >= TAU {
        return Ok(1.0);
    }
    if w == 0.0 {
        return Ok(0.0);
    }
    let a = Complex64::from_polar(1.0, theta_lo) - z;
    let b = Complex64::from_polar(1.0, theta_hi) - z;
    let psi = (b / a).arg().rem_euclid(TAU);
    Ok((psi / PI - w / TAU).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_oracle() {
        let z0 = Complex64::new(0.0, 0.0);
        assert!((disk_arc_measure(z0, 0.3, 1.5).unwrap() - 1.2 / TAU).abs() < 1e-15);
        assert_eq!(disk_arc_measure(z0, 0.0, TAU).unwrap(), 1.0);
        let v = disk_arc_measure(Complex64::new(0.5, 0.0), -PI / 2.0, PI / 2.0).unwrap();
        // 1/2 + (2/pi) atan(r) for the half circle facing z = r
        assert!((v - (0.5 + 2.0 / PI * 0.5f64.atan())).abs() < 1e-14);
        let z = Complex64::new(0.2, -0.4);
        let s = disk_arc_measure(z, 0.0, 2.0).unwrap() + disk_arc_measure(z, 2.0, TAU).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
        assert!(disk_arc_measure(Complex64::new(1.0, 0.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn upper_half_by_symmetry() {
        let d = PlanarDomain::disk_arcs(&[0.0, PI], &["upper", "lower"]).unwrap();
        let est = walk_on_spheres(&d, Complex64::new(0.0, 0.0), &["upper"], 20_000, 1, WalkOptions::default()).unwrap();
        assert!((est.mean - 0.5).abs() <= 3.0 * est.stderr);
        assert_eq!(est.censored, 0);
    }

    #[test]
    fn deterministic_for_seed() {
        let d = PlanarDomain::disk_arcs(&[0.0, 1.0], &["a", "b"]).unwrap();
        let z = Complex64::new(0.1, 0.2);
        let a = walk_on_spheres(&d, z, &["a"], 5000, 9, WalkOptions::default()).unwrap();
        let b = walk_on_spheres(&d, z, &["a"], 5000, 9, WalkOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn censoring_is_reported() {
        let d = PlanarDomain::disk_arcs(&[0.0, 1.0], &["a", "b"]).unwrap();
        let opts = WalkOptions { max_steps: 1, ..WalkOptions::default() };
        let e = walk_on_spheres(&d, Complex64::new(0.0, 0.0), &["a"], 100, 1, opts).unwrap_err();
        assert!(matches!(e, Error::Censored { censored: 100, walks: 100 }));
    }

    #[test]
    fn start_outside_rejected() {
        let d = PlanarDomain::disk_arcs(&[0.0, 1.0], &["a", "b"]).unwrap();
        assert!(walk_on_spheres(&d, Complex64::new(2.0, 0.0), &["a"], 10, 1, WalkOptions::default()).is_err());
    }
}
