use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PathPiece;

/// Scan region bounded by a positively oriented contour.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `[lo.re, hi.re] x [lo.im, hi.im]`.
    Rectangle { lo: Complex64, hi: Complex64 },
    /// `r_in <= |z - center| <= r_out`, `theta_lo <= arg(z - center) <= theta_hi`.
    /// A span of `2 pi` or more is a full annulus (or disk when `r_in = 0`).
    AnnulusSector { center: Complex64, r_in: f64, r_out: f64, theta_lo: f64, theta_hi: f64 },
}

impl Region {
    pub fn rectangle(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        if !(x_lo < x_hi && y_lo < y_hi) {
            return Err(Error::InvalidInput(format!(
                "rectangle [{x_lo}, {x_hi}] x [{y_lo}, {y_hi}] has no area"
            )));
        }
        Ok(Region::Rectangle { lo: Complex64::new(x_lo, y_lo), hi: Complex64::new(x_hi, y_hi) })
    }

    pub fn annulus_sector(center: Complex64, r_in: f64, r_out: f64, theta_lo: f64, theta_hi: f64) -> Result<Self> {
        if !(0.0 <= r_in && r_in < r_out && theta_lo < theta_hi && r_out.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "annulus sector r in [{r_in}, {r_out}], theta in [{theta_lo}, {theta_hi}] has no area"
            )));
        }
        Ok(Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi })
    }

    /// Sector of half-width `half` about the ray `theta`.
    pub fn sector_about(center: Complex64, r_in: f64, r_out: f64, theta: f64, half: f64) -> Result<Self> {
        Self::annulus_sector(center, r_in, r_out, theta - half, theta + half)
    }

    pub fn full_annulus(center: Complex64, r_in: f64, r_out: f64) -> Result<Self> {
        Self::annulus_sector(center, r_in, r_out, -PI, PI)
    }

    pub fn is_full(&self) -> bool {
        matches!(*self, Region::AnnulusSector { theta_lo, theta_hi, .. } if theta_hi - theta_lo >= 2.0 * PI)
    }

    /// Boundary pieces, counterclockwise around the region.
    pub fn edges(&self) -> Vec<PathPiece> {
        match *self {
            Region::Rectangle { lo, hi } => {
                let c = [lo, Complex64::new(hi.re, lo.im), hi, Complex64::new(lo.re, hi.im)];
                (0..4).map(|i| PathPiece::Segment { from: c[i], to: c[(i + 1) % 4] }).collect()
            }
            Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
                if self.is_full() {
                    let mut e = vec![PathPiece::Arc { center, radius: r_out, start: theta_lo, sweep: 2.0 * PI }];
                    if r_in > 0.0 {
                        e.push(PathPiece::Arc { center, radius: r_in, start: theta_lo, sweep: -2.0 * PI });
                    }
                    return e;
                }
                let p = |r: f64, t: f64| center + Complex64::from_polar(r, t);
                let span = theta_hi - theta_lo;
                let mut e = vec![
                    PathPiece::Segment { from: p(r_in, theta_lo), to: p(r_out, theta_lo) },
                    PathPiece::Arc { center, radius: r_out, start: theta_lo, sweep: span },
                    PathPiece::Segment { from: p(r_out, theta_hi), to: p(r_in, theta_hi) },
                ];
                if r_in > 0.0 {
                    e.push(PathPiece::Arc { center, radius: r_in, start: theta_hi, sweep: -span });
                }
                e
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match *self {
            Region::Rectangle { lo, hi } => (hi - lo).norm(),
            Region::AnnulusSector { r_in, r_out, theta_lo, theta_hi, .. } => {
                let span = (theta_hi - theta_lo).min(2.0 * PI);
                let chord = if span >= PI { 2.0 * r_out } else { 2.0 * r_out * (span / 2.0).sin() };
                chord.max(r_out - r_in).max(((r_out - r_in).powi(2) + (r_out * span).powi(2)).sqrt().min(2.0 * r_out))
            }
        }
    }

    /// A representative interior point.
    pub fn midpoint(&self) -> Complex64 {
        match *self {
            Region::Rectangle { lo, hi } => (lo + hi) / 2.0,
            Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
                center + Complex64::from_polar((r_in + r_out) / 2.0, (theta_lo + theta_hi) / 2.0)
            }
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Region::Rectangle { lo, hi } => z.re >= lo.re && z.re <= hi.re && z.im >= lo.im && z.im <= hi.im,
            Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
                let d = z - center;
                let r = d.norm();
                if r < r_in || r > r_out {
                    return false;
                }
                if self.is_full() {
                    return true;
                }
                let t = theta_lo + (d.arg() - theta_lo).rem_euclid(2.0 * PI);
                t <= theta_hi
            }
        }
    }

    /// Dilation about the midpoint (rectangles) or in radius and angle
    /// (sectors) by the factor `1 + eps`.
    pub fn dilate(&self, eps: f64) -> Region {
        match *self {
            Region::Rectangle { lo, hi } => {
                let m = (lo + hi) / 2.0;
                Region::Rectangle { lo: m + (lo - m) * (1.0 + eps), hi: m + (hi - m) * (1.0 + eps) }
            }
            Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
                let mid = (theta_lo + theta_hi) / 2.0;
                let half = (theta_hi - theta_lo) / 2.0;
                let half = if self.is_full() { half } else { (half * (1.0 + eps)).min(PI - 1e-12) };
                Region::AnnulusSector {
                    center,
                    r_in: r_in / (1.0 + eps),
                    r_out: r_out * (1.0 + eps),
                    theta_lo: mid - half,
                    theta_hi: mid + half,
                }
            }
        }
    }

    /// Cut across the longer dimension at fraction `frac`.
    pub fn split(&self, frac: f64) -> (Region, Region) {
        match *self {
            Region::Rectangle { lo, hi } => {
                let d = hi - lo;
                if d.re >= d.im {
                    let x = lo.re + frac * d.re;
                    (
                        Region::Rectangle { lo, hi: Complex64::new(x, hi.im) },
                        Region::Rectangle { lo: Complex64::new(x, lo.im), hi },
                    )
                } else {
                    let y = lo.im + frac * d.im;
                    (
                        Region::Rectangle { lo, hi: Complex64::new(hi.re, y) },
                        Region::Rectangle { lo: Complex64::new(lo.re, y), hi },
                    )
                }
            }
            Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi } => {
                let span = (theta_hi - theta_lo).min(2.0 * PI);
                let radial = r_out - r_in;
                let angular = span * r_out;
                if radial >= angular {
                    let r = r_in + frac * radial;
                    (
                        Region::AnnulusSector { center, r_in, r_out: r, theta_lo, theta_hi },
                        Region::AnnulusSector { center, r_in: r, r_out, theta_lo, theta_hi },
                    )
                } else if self.is_full() {
                    // halves with a seam away from theta_lo, which often sits on a root ray
                    let s = theta_lo + 0.0731 + 1.2345 * frac;
                    (
                        Region::AnnulusSector { center, r_in, r_out, theta_lo: s, theta_hi: s + PI },
                        Region::AnnulusSector { center, r_in, r_out, theta_lo: s + PI, theta_hi: s + 2.0 * PI },
                    )
                } else {
                    let t = theta_lo + frac * span;
                    (
                        Region::AnnulusSector { center, r_in, r_out, theta_lo, theta_hi: t },
                        Region::AnnulusSector { center, r_in, r_out, theta_lo: t, theta_hi: theta_lo + span },
                    )
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_closed_loops() {
        let regions = [
            Region::rectangle(-1.0, 2.0, 0.0, 1.0).unwrap(),
            Region::annulus_sector(Complex64::new(1.0, 0.0), 0.5, 2.0, 0.1, 1.0).unwrap(),
            Region::annulus_sector(Complex64::new(0.0, 0.0), 0.0, 2.0, -0.5, 0.5).unwrap(),
        ];
        for r in regions {
            let e = r.edges();
            for i in 0..e.len() {
                let next = e[(i + 1) % e.len()];
                assert!((e[i].end() - next.start()).norm() < 1e-12, "{r:?}");
            }
        }
    }

    #[test]
    fn split_partitions() {
        let r = Region::annulus_sector(Complex64::new(0.0, 0.0), 1.0, 2.0, 0.0, 3.0).unwrap();
        let (a, b) = r.split(0.4);
        let z = Complex64::from_polar(1.5, 0.5);
        assert!(a.contains(z) ^ b.contains(z));
        assert!(r.contains(z));
        assert!(!r.contains(Complex64::from_polar(1.5, -0.5)));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(Region::rectangle(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Region::annulus_sector(Complex64::new(0.0, 0.0), 2.0, 1.0, 0.0, 1.0).is_err());
    }
}
