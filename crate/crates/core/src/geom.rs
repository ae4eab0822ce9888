//! Segments and circular arcs, shared by contour integration, ODE paths and
//! planar domains.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathPiece {
    Segment { from: Complex64, to: Complex64 },
    /// `center + radius e^{i t}` for `t` from `start` to `start + sweep`.
    Arc { center: Complex64, radius: f64, start: f64, sweep: f64 },
}

impl PathPiece {
    pub fn length(&self) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => (to - from).norm(),
            PathPiece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point and unit tangent at arclength `s` from the start of the piece.
    pub fn at(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            PathPiece::Segment { from, to } => {
                let len = (to - from).norm();
                let tau = if len > 0.0 { (to - from) / len } else { Complex64::new(1.0, 0.0) };
                (from + tau * s, tau)
            }
            PathPiece::Arc { center, radius, start, sweep } => {
                let dir = sweep.signum();
                let t = start + dir * s / radius;
                let e = Complex64::from_polar(1.0, t);
                (center + e * radius, Complex64::new(0.0, dir) * e)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.at(0.0).0
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            PathPiece::Segment { to, .. } => to,
            PathPiece::Arc { center, radius, start, sweep } => {
                center + Complex64::from_polar(radius, start + sweep)
            }
        }
    }

    /// Distance from `p` to the piece.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => segment_distance(from, to, p),
            PathPiece::Arc { center, radius, start, sweep } => {
                let d = p - center;
                let (a0, a1) = if sweep >= 0.0 { (start, start + sweep) } else { (start + sweep, start) };
                if sweep.abs() >= 2.0 * PI {
                    return (d.norm() - radius).abs();
                }
                let t = d.arg();
                let shifted = a0 + (t - a0).rem_euclid(2.0 * PI);
                if d.norm() > 0.0 && shifted <= a1 {
                    (d.norm() - radius).abs()
                } else {
                    let e0 = center + Complex64::from_polar(radius, a0);
                    let e1 = center + Complex64::from_polar(radius, a1);
                    (p - e0).norm().min((p - e1).norm())
                }
            }
        }
    }
}

pub fn segment_distance(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    (p - (a + ab * t.clamp(0.0, 1.0))).norm()
}

