//! Transport of `w'' + A w = 0` along paths in the plane, solutions of
//! `S(f) = Q`, loop monodromy and the zero-counting verdicts built on them.
//!
//! The integrator is the Dormand-Prince 5(4) pair on complex states, with the
//! local error controlled per unit arclength relative to the state size.
//! States that grow past `1e150` (solutions grow like `exp(|z|^{(d+2)/2})`)
//! are renormalized and the factor is kept in `log_scale`.

mod monodromy;
mod path;
mod schwarz;
mod verdicts;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mero::RationalMap;

pub use monodromy::{
    elfving_coefficients, elfving_q, monodromy, projective_defect, MonodromyMatrix, MonodromyReport,
};
pub use path::{segment_distance, PathPiece, PathPlan, DEFAULT_CLEARANCE};
pub use schwarz::{solve_schwarzian, OdeMap};
pub use verdicts::{
    sector_verdict, strip_verdict, real_root_count, SectorVerdict, StripVerdict, REAL_TOL, VERDICT_TOL,
};

pub const TOL_MIN: f64 = 1e-13;
pub const TOL_MAX: f64 = 1e-6;

const RENORM_HIGH: f64 = 1e150;
const RENORM_LOW: f64 = 1e-150;
const MAX_STEPS: usize = 5_000_000;

/// `(w, w')` at a point, up to the factor `exp(log_scale)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransportState {
    pub w: Complex64,
    pub w_prime: Complex64,
    /// Sum of the local error estimates, relative to the state size.
    pub accumulated_error: f64,
    pub log_scale: f64,
}

impl TransportState {
    pub fn new(w: Complex64, w_prime: Complex64) -> Self {
        Self { w, w_prime, accumulated_error: 0.0, log_scale: 0.0 }
    }

    pub fn real(w: f64, w_prime: f64) -> Self {
        Self::new(Complex64::new(w, 0.0), Complex64::new(w_prime, 0.0))
    }

    /// `(w, w')` with the scale applied; may overflow.
    pub fn unscaled(&self) -> (Complex64, Complex64) {
        let s = self.log_scale.exp();
        (self.w * s, self.w_prime * s)
    }
}

/// `w1 w2' - w1' w2` (scales applied).
pub fn wronskian(a: &TransportState, b: &TransportState) -> Complex64 {
    (a.w * b.w_prime - a.w_prime * b.w) * (a.log_scale + b.log_scale).exp()
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if (TOL_MIN..=TOL_MAX).contains(&tol) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("tolerance {tol:e} outside [{TOL_MIN:e}, {TOL_MAX:e}]")))
    }
}

/// Transport one solution along `path`.
pub fn transport(a: &RationalMap, path: &PathPlan, init: TransportState, tol: f64) -> Result<TransportState> {
    check_tol(tol)?;
    path.validate(&a.poles())?;
    let [s] = transport_states(a, path, [init], tol)?;
    Ok(s)
}

/// Transport two solutions together (sharing step sizes and scale).
pub fn transport_pair(
    a: &RationalMap,
    path: &PathPlan,
    init: [TransportState; 2],
    tol: f64,
) -> Result<[TransportState; 2]> {
    check_tol(tol)?;
    path.validate(&a.poles())?;
    transport_states(a, path, init, tol)
}

/// Core transport without path validation. `K` solutions, state `[w, w']` each.
pub(crate) fn transport_states<const K: usize>(
    a: &RationalMap,
    path: &PathPlan,
    init: [TransportState; K],
    tol: f64,
) -> Result<[TransportState; K]> {
    let ls = init.iter().map(|s| s.log_scale).fold(f64::NEG_INFINITY, f64::max);
    let mut y = vec![Complex64::new(0.0, 0.0); 2 * K];
    for (i, s) in init.iter().enumerate() {
        let f = (s.log_scale - ls).exp();
        y[2 * i] = s.w * f;
        y[2 * i + 1] = s.w_prime * f;
    }
    let acc0 = init.iter().map(|s| s.accumulated_error).fold(0.0, f64::max);
    let mut run = Run { a, tol, max_step: path.max_step, log_scale: ls, acc: acc0, h: 0.0, s_total: 0.0 };
    renormalize(&mut y, &mut run.log_scale);
    for piece in &path.pieces {
        run.piece(piece, &mut y)?;
    }
    Ok(std::array::from_fn(|i| TransportState {
        w: y[2 * i],
        w_prime: y[2 * i + 1],
        accumulated_error: run.acc,
        log_scale: run.log_scale,
    }))
}

fn renormalize(y: &mut [Complex64], log_scale: &mut f64) {
    let m = y.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if !(RENORM_LOW..=RENORM_HIGH).contains(&m) && m > 0.0 && m.is_finite() {
        for c in y.iter_mut() {
            *c /= m;
        }
        *log_scale += m.ln();
    }
}

struct Run<'a> {
    a: &'a RationalMap,
    tol: f64,
    max_step: Option<f64>,
    log_scale: f64,
    acc: f64,
    h: f64,
    s_total: f64,
}

// Dormand-Prince 5(4)
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

impl Run<'_> {
    fn rhs(&self, piece: &PathPiece, s: f64, y: &[Complex64], out: &mut [Complex64]) {
        let (z, tau) = piece.at(s);
        let av = self.a.eval_value(z);
        for i in (0..y.len()).step_by(2) {
            out[i] = y[i + 1] * tau;
            out[i + 1] = -av * y[i] * tau;
        }
    }

    fn piece(&mut self, piece: &PathPiece, y: &mut Vec<Complex64>) -> Result<()> {
        let len = piece.length();
        if len == 0.0 {
            return Ok(());
        }
        let n = y.len();
        let cap = self.max_step.unwrap_or(f64::INFINITY).min(len);
        if self.h <= 0.0 {
            let (z, _) = piece.at(0.0);
            let av = self.a.eval_value(z).norm();
            self.h = (0.1 / (1.0 + av).powf(0.5)).min(cap);
        }
        let mut k = vec![vec![Complex64::new(0.0, 0.0); n]; 7];
        let mut tmp = vec![Complex64::new(0.0, 0.0); n];
        let mut s = 0.0;
        let mut steps = 0usize;
        while s < len {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::Divergence { param: self.s_total + s });
            }
            let h = self.h.min(cap).min(len - s);
            let last = h >= len - s;
            self.rhs(piece, s, y, &mut k[0]);
            for st in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for j in 0..st {
                        if A[st][j] != 0.0 {
                            acc += k[j][i] * (h * A[st][j]);
                        }
                    }
                    tmp[i] = acc;
                }
                let mut out = std::mem::take(&mut k[st]);
                self.rhs(piece, s + C[st] * h, &tmp, &mut out);
                k[st] = out;
            }
            // tmp now holds the 5th-order solution (row 7 equals b)
            let mut err = 0.0f64;
            let mut scale = 0.0f64;
            for i in 0..n {
                let mut e = Complex64::new(0.0, 0.0);
                for j in 0..7 {
                    if E[j] != 0.0 {
                        e += k[j][i] * E[j];
                    }
                }
                err = err.max((e * h).norm());
                scale = scale.max(y[i].norm()).max(tmp[i].norm());
            }
            let rel = if scale > 0.0 { err / scale } else { err };
            if !rel.is_finite() {
                self.h = h * 0.2;
                if self.h < 1e-14 * (1.0 + self.s_total + s) {
                    return Err(Error::Divergence { param: self.s_total + s });
                }
                continue;
            }
            let per_len = rel / h;
            let factor = if per_len == 0.0 { 5.0 } else { (0.9 * (self.tol / per_len).powf(0.25)).clamp(0.2, 5.0) };
            if per_len <= self.tol {
                y.copy_from_slice(&tmp);
                s = if last { len } else { s + h };
                self.acc += rel;
                renormalize(y, &mut self.log_scale);
                if !last || factor < 1.0 {
                    self.h = h * factor;
                }
            } else {
                self.h = h * factor.min(0.9);
                if self.h < 1e-14 * (1.0 + self.s_total + s) {
                    return Err(Error::Divergence { param: self.s_total + s });
                }
            }
        }
        self.s_total += len;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{airy, AI0, AIP0_NEG};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(v: &[f64]) -> RationalMap {
        RationalMap::polynomial(v.iter().map(|x| c(*x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn airy_transport_matches_specfun() {
        let a = poly(&[0.0, -1.0]);
        let path = PathPlan::segment(c(0.0, 0.0), c(2.0, 0.0));
        let out = transport(&a, &path, TransportState::real(AI0, -AIP0_NEG), 1e-12).unwrap();
        let (w, wp) = out.unscaled();
        let want = airy(c(2.0, 0.0)).unwrap();
        assert!((w - want.ai).norm() < 1e-9);
        assert!((wp - want.ai_prime).norm() < 1e-9);
    }

    #[test]
    fn constant_solution_of_free_equation() {
        let a = poly(&[0.0]);
        let path = PathPlan::segment(c(0.0, 0.0), c(3.0, -4.0));
        let out = transport(&a, &path, TransportState::real(1.0, 0.0), 1e-10).unwrap();
        assert!((out.w - c(1.0, 0.0)).norm() <= 1e-10 * 5.0);
    }

    #[test]
    fn harmonic_oscillator() {
        let a = poly(&[1.0]);
        let path = PathPlan::segment(c(0.0, 0.0), c(std::f64::consts::PI, 0.0));
        let out = transport(&a, &path, TransportState::real(0.0, 1.0), 1e-11).unwrap();
        assert!(out.w.norm() < 1e-9);
        assert!((out.w_prime + 1.0).norm() < 1e-9);
    }

    #[test]
    fn renormalization_keeps_growth() {
        // w'' = 400 w: w = e^{20 x}, e^{20*40} overflows f64
        let a = poly(&[-400.0]);
        let path = PathPlan::segment(c(0.0, 0.0), c(40.0, 0.0));
        let out = transport(&a, &path, TransportState::real(1.0, 20.0), 1e-10).unwrap();
        let log_w = out.log_scale + out.w.norm().ln();
        assert!((log_w - 800.0).abs() < 1e-6, "{log_w}");
    }

    #[test]
    fn tolerance_range_enforced() {
        let a = poly(&[0.0]);
        let path = PathPlan::segment(c(0.0, 0.0), c(1.0, 0.0));
        assert!(transport(&a, &path, TransportState::real(1.0, 0.0), 1e-3).is_err());
    }

    #[test]
    fn path_through_pole_rejected() {
        let a = RationalMap::new(vec![c(1.0, 0.0)], vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let path = PathPlan::segment(c(0.0, 0.0), c(2.0, 0.0));
        let e = transport(&a, &path, TransportState::real(1.0, 0.0), 1e-10).unwrap_err();
        assert!(matches!(e, Error::PathClearance { .. }));
    }

    #[test]
    fn wronskian_drift_bounded() {
        let a = poly(&[0.0, -1.0]);
        let path = PathPlan::polyline(&[c(0.0, 0.0), c(2.0, 1.0), c(-1.0, 3.0)]);
        let init = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
        let w0 = wronskian(&init[0], &init[1]);
        let out = transport_pair(&a, &path, init, 1e-10).unwrap();
        let w1 = wronskian(&out[0], &out[1]);
        assert!((w1 - w0).norm() <= 10.0 * out[0].accumulated_error * w0.norm());
    }
}
