//! Argument-principle counting and location of `a`-points.
//!
//! For a map `f = num/den` and a target `a`, the `a`-point function is
//! `G = num - a den` (`den` for `a = inf`). Counting zeros of `G` rather than
//! `f - a` means poles never enter the count, so a region holds exactly the
//! `a`-points inside it. `G'/G` does not depend on the exp scale carried by
//! the jets, which keeps the integrand finite far out.

mod catalog;
mod contour;
mod counting;
mod locate;
mod probe;
mod region;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mero::{MeroMap, RaySpec, Target};

pub use catalog::{parse_target, target_label, CatalogRoot, RootCatalog};
pub use contour::{contour_moments, rounded_count, Moments, BOUNDARY_DIST};
pub use counting::{combined, counting, growth_exponent, CountingFunction};
pub(crate) use counting::linear_fit;
pub use locate::{locate_roots, locate_roots_in, RootRecord, MIN_BOX};
pub use probe::{probe_radii, sector_limit_probe, Limit, ProbeThresholds};
pub use region::Region;

/// Number of boundary dilations tried when an `a`-point sits on the contour.
pub const MAX_NUDGES: usize = 3;
/// Relative dilation per nudge.
pub const NUDGE: f64 = 1e-6;

/// Count with up to three nudges; returns the region actually used.
pub fn count_with_nudges<M: MeroMap + ?Sized>(f: &M, region: &Region, a: Target) -> Result<(Region, Moments, u64)> {
    let mut reg = *region;
    for attempt in 0..=MAX_NUDGES {
        match contour_moments(f, &reg, a) {
            Ok(m) => {
                let n = rounded_count(&m)?;
                return Ok((reg, m, n));
            }
            Err(Error::BoundaryRoot { .. }) if attempt < MAX_NUDGES => reg = reg.dilate(NUDGE),
            Err(Error::BoundaryRoot { .. }) => return Err(Error::BoundaryRoot { nudges: MAX_NUDGES }),
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// Number of `a`-points of `f` in `region` (with multiplicity).
pub fn winding_count<M: MeroMap + ?Sized>(f: &M, region: &Region, a: Target) -> Result<u64> {
    Ok(count_with_nudges(f, region, a)?.2)
}

/// Largest and mean absolute angle between the roots and `ray`.
pub fn ray_deviation(catalog: &[RootRecord], ray: RaySpec) -> Result<(f64, f64)> {
    if catalog.is_empty() {
        return Ok((0.0, 0.0));
    }
    let mut max = 0.0f64;
    let mut sum = 0.0;
    for r in catalog {
        if r.location == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidInput("root at the origin has no argument".into()));
        }
        let d = angle_diff(r.location.arg(), ray.theta()).abs();
        max = max.max(d);
        sum += d;
    }
    Ok((max, sum / catalog.len() as f64))
}

/// `a - b` reduced to `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    use std::f64::consts::PI;
    let mut d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d -= 2.0 * PI;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mero::{Example1, RationalMap};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero() -> Target {
        Some(c(0.0, 0.0))
    }

    #[test]
    fn square_roots_of_unity() {
        let f = RationalMap::polynomial(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = Region::rectangle(-2.0, 2.0, -2.0, 2.0).unwrap();
        assert_eq!(winding_count(&f, &r, zero()).unwrap(), 2);
    }

    #[test]
    fn poles_counted_for_infinity() {
        // (z - 3) / ((z - 1)(z + 1)^2)
        let f = RationalMap::new(vec![c(-3.0, 0.0), c(1.0, 0.0)], vec![c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = Region::rectangle(-2.0, 2.0, -2.0, 2.0).unwrap();
        assert_eq!(winding_count(&f, &r, None).unwrap(), 3);
        assert_eq!(winding_count(&f, &r, zero()).unwrap(), 0);
    }

    #[test]
    fn root_on_contour_is_nudged() {
        let f = RationalMap::polynomial(vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = Region::rectangle(1.0, 2.0, -1.0, 1.0).unwrap();
        assert_eq!(winding_count(&f, &r, zero()).unwrap(), 1);
    }

    #[test]
    fn example1_counts() {
        let third = std::f64::consts::PI / 3.0;
        let sector = Region::sector_about(c(0.0, 0.0), 0.5, 10.0, third, std::f64::consts::PI / 12.0).unwrap();
        assert_eq!(winding_count(&Example1, &sector, zero()).unwrap(), 6);
        let ring = Region::full_annulus(c(0.0, 0.0), 0.5, 10.0).unwrap();
        assert_eq!(winding_count(&Example1, &ring, Some(c(1.0, 0.0))).unwrap(), 6);
        assert_eq!(winding_count(&Example1, &ring, None).unwrap(), 6);
    }

    #[test]
    fn deviation_examples() {
        let recs: Vec<RootRecord> = [1.0, 2.0]
            .iter()
            .map(|r| RootRecord::exact(Complex64::from_polar(*r, std::f64::consts::PI / 3.0), zero()))
            .collect();
        let (mx, mean) = ray_deviation(&recs, RaySpec::new(std::f64::consts::PI / 3.0)).unwrap();
        assert!(mx < 1e-15 && mean < 1e-15);
        assert!((angle_diff(3.0, -3.0) - (6.0 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }
}
