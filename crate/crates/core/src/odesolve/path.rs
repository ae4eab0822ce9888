use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::geom::{segment_distance, PathPiece};

/// Default clearance kept from singularities of the coefficient.
pub const DEFAULT_CLEARANCE: f64 = 0.1;

/// Piecewise path made of segments and circular arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPlan {
    pub pieces: Vec<PathPiece>,
    /// Required distance from every declared singularity.
    pub min_distance: f64,
    /// Upper bound on integrator steps, if any.
    pub max_step: Option<f64>,
}

impl PathPlan {
    pub fn segment(from: Complex64, to: Complex64) -> Self {
        Self::polyline(&[from, to])
    }

    pub fn polyline(vertices: &[Complex64]) -> Self {
        let pieces = vertices
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| PathPiece::Segment { from: w[0], to: w[1] })
            .collect();
        Self { pieces, min_distance: DEFAULT_CLEARANCE, max_step: None }
    }

    /// Counterclockwise circle starting and ending at `center + radius`,
    /// with at least `min_steps` integrator steps.
    pub fn circle(center: Complex64, radius: f64, min_steps: usize) -> Self {
        Self {
            pieces: vec![PathPiece::Arc { center, radius, start: 0.0, sweep: 2.0 * PI }],
            min_distance: DEFAULT_CLEARANCE,
            max_step: Some(2.0 * PI * radius / min_steps.max(1) as f64),
        }
    }

    /// Closed loop around all `poles`: circle of radius `2 max |pole|` about
    /// the origin, 720 steps minimum.
    pub fn monodromy_loop(poles: &[Complex64]) -> Self {
        let rmax = poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
        Self::circle(Complex64::new(0.0, 0.0), if rmax > 0.0 { 2.0 * rmax } else { 1.0 }, 720)
    }

    pub fn with_max_step(mut self, h: f64) -> Self {
        self.max_step = Some(h);
        self
    }

    pub fn with_min_distance(mut self, d: f64) -> Self {
        self.min_distance = d;
        self
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(|p| p.length()).sum()
    }

    pub fn start(&self) -> Option<Complex64> {
        self.pieces.first().map(|p| p.start())
    }

    pub fn end(&self) -> Option<Complex64> {
        self.pieces.last().map(|p| p.end())
    }

    pub fn is_closed(&self) -> bool {
        match (self.start(), self.end()) {
            (Some(a), Some(b)) => (a - b).norm() <= 1e-12 * (1.0 + a.norm()),
            _ => false,
        }
    }

    /// Checks that every piece keeps `min_distance` from each singularity.
    pub fn validate(&self, singular: &[Complex64]) -> Result<()> {
        for p in singular {
            let d = self.pieces.iter().map(|pc| pc.distance_to(*p)).fold(f64::INFINITY, f64::min);
            if d < self.min_distance {
                return Err(Error::PathClearance { pole: *p, distance: d });
            }
        }
        Ok(())
    }

    /// Straight path from `from` to `to`, replacing each stretch that comes
    /// within `clearance` of a pole by the shorter arc of the circle of
    /// radius `clearance` about it.
    pub fn routed(from: Complex64, to: Complex64, poles: &[Complex64], clearance: f64) -> Result<Self> {
        let clearance = clearance.max(DEFAULT_CLEARANCE);
        let mut near: Vec<(f64, Complex64)> = Vec::new();
        let ab = to - from;
        let len = ab.norm();
        for &p in poles {
            for end in [from, to] {
                let d = (p - end).norm();
                if d < clearance {
                    return Err(Error::PathClearance { pole: p, distance: d });
                }
            }
            if segment_distance(from, to, p) < clearance {
                let t = ((p - from) * ab.conj()).re / (len * len);
                near.push((t, p));
            }
        }
        near.sort_by(|a, b| a.0.total_cmp(&b.0));
        let tau = ab / len;
        let mut pieces = Vec::new();
        let mut cur = from;
        for (_, p) in near {
            // chord of the clearance circle along the line
            let along = ((p - from) * tau.conj()).re;
            let off = ((p - from) * tau.conj()).im;
            let half = (clearance * clearance - off * off).max(0.0).sqrt();
            let entry = from + tau * (along - half);
            let exit = from + tau * (along + half);
            if (entry - cur).norm() > 0.0 {
                pieces.push(PathPiece::Segment { from: cur, to: entry });
            }
            let a0 = (entry - p).arg();
            let a1 = (exit - p).arg();
            // pole left of the line (off > 0): pass to its right, i.e. clockwise
            let mut sweep = (a1 - a0).rem_euclid(2.0 * PI);
            if off >= 0.0 {
                sweep -= 2.0 * PI;
            }
            pieces.push(PathPiece::Arc { center: p, radius: clearance, start: a0, sweep });
            cur = exit;
        }
        if (to - cur).norm() > 0.0 {
            pieces.push(PathPiece::Segment { from: cur, to });
        }
        let plan = Self { pieces, min_distance: clearance * (1.0 - 1e-9), max_step: None };
        plan.validate(poles)?;
        Ok(plan)
    }
}
