//! Adaptive Gauss-Legendre integration of `G'/G`, `z G'/G` around a contour,
//! `G` being the `a`-point function of a map.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::Region;
use crate::error::{Error, Result};
use crate::geom::PathPiece;
use crate::mero::{MeroMap, Target};
use crate::quad::GaussLegendre;

const NODES: usize = 16;
const MAX_DEPTH: usize = 60;
/// Panels must satisfy `length * max |G'/G| <= PHASE_BUDGET`.
const PHASE_BUDGET: f64 = 8.0;
/// Absolute quadrature tolerance for `(1/2 pi i) oint G'/G`.
const COUNT_TOL: f64 = 1e-7;
/// Panel error estimates below `ROUNDOFF_FLOOR + NOISE_REL * int |G'/G|`
/// are evaluation noise and are not refined further.
const ROUNDOFF_FLOOR: f64 = 1e-12;
const NOISE_REL: f64 = 1e-11;
/// Evaluation budget per contour.
const MAX_EVALS: usize = 4_000_000;
/// Distance below which a root counts as lying on the contour.
pub const BOUNDARY_DIST: f64 = 1e-9;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NODES))
}

/// `(1/2 pi i) oint z^k G'/G dz` for `k = 0, 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Moments {
    pub m0: Complex64,
    pub m1: Complex64,
    /// `(1/2 pi) int |G'/G| |dz|`, the scale of roundoff in `m0`.
    pub abs: f64,
}

impl std::ops::Add for Moments {
    type Output = Moments;
    fn add(self, o: Moments) -> Moments {
        Moments { m0: self.m0 + o.m0, m1: self.m1 + o.m1, abs: self.abs + o.abs }
    }
}

struct Ctx<'a, M: MeroMap + ?Sized> {
    f: &'a M,
    a: Target,
    boundary: f64,
    evals: AtomicUsize,
}

impl<M: MeroMap + ?Sized> Ctx<'_, M> {
    /// Returns the moments of one panel and the smallest Newton distance seen.
    fn panel(&self, e: &PathPiece, s0: f64, s1: f64) -> Result<(Moments, f64)> {
        let gl = rule();
        let half = 0.5 * (s1 - s0);
        let mid = 0.5 * (s0 + s1);
        let mut m = Moments::default();
        let mut dmin = f64::INFINITY;
        for (x, w) in gl.nodes.iter().zip(&gl.weights) {
            let (z, tau) = e.at(mid + half * x);
            if self.evals.fetch_add(1, Ordering::Relaxed) >= MAX_EVALS {
                return Err(Error::UnresolvedContour { residual: f64::NAN });
            }
            let g = self.f.a_point(z, self.a)?.jet;
            let d = g.c[0].norm() / g.c[1].norm();
            if !(d >= self.boundary) {
                return Err(Error::BoundaryRoot { nudges: 0 });
            }
            dmin = dmin.min(d);
            let ld = g.c[1] / g.c[0] * tau * (w * half);
            m.m0 += ld;
            m.m1 += ld * z;
            m.abs += ld.norm();
        }
        Ok((m, dmin))
    }

    fn adaptive(&self, e: &PathPiece, s0: f64, s1: f64, whole: (Moments, f64), tol: f64, depth: usize) -> Result<Moments> {
        let sm = 0.5 * (s0 + s1);
        let left = self.panel(e, s0, sm)?;
        let right = self.panel(e, sm, s1)?;
        let fine = left.0 + right.0;
        let err = (fine.m0 - whole.0.m0).norm();
        let len = s1 - s0;
        let smooth = len <= PHASE_BUDGET * whole.1.min(left.1).min(right.1);
        let floor = ROUNDOFF_FLOOR + NOISE_REL * fine.abs;
        if err <= tol.max(floor) && smooth {
            return Ok(fine);
        }
        if !smooth && len < 10.0 * self.boundary {
            // the log-derivative blows up at a point of the contour
            return Err(Error::BoundaryRoot { nudges: 0 });
        }
        if depth >= MAX_DEPTH {
            return Err(Error::UnresolvedContour { residual: err / (2.0 * PI) });
        }
        let a = self.adaptive(e, s0, sm, left, tol / 2.0, depth + 1)?;
        let b = self.adaptive(e, sm, s1, right, tol / 2.0, depth + 1)?;
        Ok(a + b)
    }
}

/// Raw contour moments of the `a`-point function over `region`'s boundary.
pub fn contour_moments<M: MeroMap + ?Sized>(f: &M, region: &Region, a: Target) -> Result<Moments> {
    let edges = region.edges();
    let total: f64 = edges.iter().map(|e| e.length()).sum();
    let boundary = BOUNDARY_DIST.min(1e-3 * region.diameter());
    let ctx = Ctx { f, a, boundary, evals: AtomicUsize::new(0) };
    let mut m = Moments::default();
    for e in &edges {
        let len = e.length();
        let tol = COUNT_TOL * 2.0 * PI * len / total;
        let whole = ctx.panel(e, 0.0, len)?;
        m = m + ctx.adaptive(e, 0.0, len, whole, tol, 0)?;
    }
    let scale = Complex64::new(0.0, 2.0 * PI);
    Ok(Moments { m0: m.m0 / scale, m1: m.m1 / scale, abs: m.abs / (2.0 * PI) })
}

/// Nearest integer to `m0`, or an error if it is more than 0.25 away.
pub fn rounded_count(m: &Moments) -> Result<u64> {
    let n = m.m0.re.round();
    let residual = (m.m0 - Complex64::new(n, 0.0)).norm();
    if residual > 0.25 || n < 0.0 || !n.is_finite() {
        return Err(Error::UnresolvedContour { residual });
    }
    Ok(n as u64)
}
