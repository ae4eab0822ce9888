use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream;

/// Tolerance on `|z| = 1` for points on the unit circle.
pub const UNIT_TOL: f64 = 1e-9;
/// Random tuples keep `phi`, `psi` and `phi - psi` at least this far from
/// `0 (mod 2 pi)`.
pub const SAMPLE_MARGIN: f64 = 0.05;

fn wrap(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Closed arc of the unit circle from `start` counterclockwise to `end`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub length: f64,
    /// In `(-pi, pi]`.
    pub start: f64,
    /// `start + length`.
    pub end: f64,
}

/// Shortest arc containing all points: the complement of the largest gap
/// between consecutive arguments.
pub fn minimal_arc(points: &[Complex64]) -> Result<Arc> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    if let Some(p) = points.iter().find(|p| (p.norm() - 1.0).abs() > UNIT_TOL) {
        return Err(Error::InvalidInput(format!("{p} is not on the unit circle")));
    }
    let mut t: Vec<f64> = points.iter().map(|p| p.arg()).collect();
    t.sort_by(f64::total_cmp);
    let n = t.len();
    let (mut gap, mut after) = (t[0] + TAU - t[n - 1], 0);
    for i in 1..n {
        if t[i] - t[i - 1] > gap {
            gap = t[i] - t[i - 1];
            after = i;
        }
    }
    let length = (TAU - gap).max(0.0);
    Ok(Arc { length, start: t[after], end: t[after] + length })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcBoundCheck {
    pub arc_len: f64,
    /// `arccos(Re(A + B) - 1)`.
    pub bound: f64,
    pub holds: bool,
    /// `2 arccos(Re(A + B) / 2)`, which `arc_len` never exceeds. The bound
    /// above fails when `A` and `B` lie on opposite sides of 1: for
    /// `A = e^{it}, B = e^{-it}` the arc is `2t` but `arccos(2 cos t - 1) < 2t`.
    pub sharp_bound: f64,
}

/// Length of the arc through `1, A, B` against `arccos(Re(A+B) - 1)`.
pub fn arc_bound_check(a: Complex64, b: Complex64) -> Result<ArcBoundCheck> {
    let s = (a + b).re;
    if !(s > 0.0) {
        return Err(Error::Hypothesis(format!("Re(A + B) = {s} must be positive")));
    }
    let arc_len = minimal_arc(&[Complex64::new(1.0, 0.0), a, b])?.length;
    let bound = (s - 1.0).clamp(-1.0, 1.0).acos();
    let sharp_bound = 2.0 * (s / 2.0).clamp(-1.0, 1.0).acos();
    Ok(ArcBoundCheck { arc_len, bound, holds: arc_len <= bound + 1e-12, sharp_bound })
}

/// Arguments of `a, b, p, q` on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitTuple {
    pub alpha: f64,
    pub beta: f64,
    pub phi: f64,
    pub psi: f64,
}

impl UnitTuple {
    /// Angles are reduced to `(-pi, pi]`; `1, p, q` must be distinct.
    pub fn new(alpha: f64, beta: f64, phi: f64, psi: f64) -> Result<Self> {
        let t = Self { alpha: wrap(alpha), beta: wrap(beta), phi: wrap(phi), psi: wrap(psi) };
        if [alpha, beta, phi, psi].iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite angle".into()));
        }
        if t.phi == 0.0 || t.psi == 0.0 || t.phi == t.psi {
            return Err(Error::Hypothesis("1, p and q must be distinct".into()));
        }
        Ok(t)
    }

    pub fn from_points(a: Complex64, b: Complex64, p: Complex64, q: Complex64) -> Result<Self> {
        if [a, b, p, q].iter().any(|z| z.norm() == 0.0) {
            return Err(Error::InvalidInput("a, b, p, q must be nonzero".into()));
        }
        Self::new(a.arg(), b.arg(), p.arg(), q.arg())
    }

    /// Uniform angles, redrawn until `phi`, `psi`, `phi - psi` clear `margin`.
    pub fn sample<R: Rng>(rng: &mut R, margin: f64) -> Self {
        loop {
            let mut g = || wrap(rng.gen_range(-PI..PI));
            let (alpha, beta, phi, psi) = (g(), g(), g(), g());
            if phi.abs() >= margin && psi.abs() >= margin && wrap(phi - psi).abs() >= margin {
                return Self { alpha, beta, phi, psi };
            }
        }
    }

    /// `count` tuples, tuple `i` drawn from stream `(seed, i)`.
    pub fn seeded(seed: u64, count: usize) -> Vec<Self> {
        (0..count).map(|i| Self::sample(&mut stream(seed, i as u64), SAMPLE_MARGIN)).collect()
    }

    /// `phi = -psi`, `alpha + beta = pi`: the symmetric configuration.
    pub fn exceptional(alpha: f64, phi: f64) -> Result<Self> {
        Self::new(alpha, PI - alpha, phi, -phi)
    }

    /// `x_n = Re(a p^n + b q^n)` for `n = 1..=len`.
    pub fn sequence(&self, len: usize) -> Vec<f64> {
        (1..=len)
            .map(|n| {
                let n = n as f64;
                (self.alpha + n * self.phi).cos() + (self.beta + n * self.psi).cos()
            })
            .collect()
    }

    /// Arguments of `a p^n` and `b q^n` in `[0, 2 pi)`.
    fn angles(&self, n: u64) -> (f64, f64) {
        let n = n as f64;
        ((self.alpha + n * self.phi).rem_euclid(TAU), (self.beta + n * self.psi).rem_euclid(TAU))
    }
}

/// Shortest arc through `1, e^{i s}, e^{i t}` for `s, t` in `[0, 2 pi)`.
fn arc3(s: f64, t: f64) -> f64 {
    let (b, c) = if s <= t { (s, t) } else { (t, s) };
    TAU - b.max(c - b).max(TAU - c)
}

/// Smallest opening over `1 <= n <= n_max` of an arc containing `1, a p^n,
/// b q^n`; ties go to the smallest `n`.
pub fn sector_search(t: &UnitTuple, n_max: u64) -> Result<(u64, f64)> {
    if n_max == 0 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let mut best = (0, f64::INFINITY);
    for n in 1..=n_max {
        let (s, u) = t.angles(n);
        let d = arc3(s, u);
        if d < best.1 {
            best = (n, d);
            if d == 0.0 {
                break;
            }
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub tuple: UnitTuple,
    pub best_n: u64,
    pub delta: f64,
}

/// [`sector_search`] over many tuples in parallel, rows in input order.
pub fn sector_sweep(tuples: &[UnitTuple], n_max: u64) -> Result<Vec<SweepRow>> {
    tuples
        .par_iter()
        .enumerate()
        .map(|(index, t)| {
            let (best_n, delta) = sector_search(t, n_max)?;
            Ok(SweepRow { index, tuple: *t, best_n, delta })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(t: f64) -> Complex64 {
        Complex64::from_polar(1.0, t)
    }

    #[test]
    fn arcs() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        assert!((minimal_arc(&[one, i, -i]).unwrap().length - PI).abs() < 1e-15);
        assert_eq!(minimal_arc(&[one]).unwrap().length, 0.0);
        let a = minimal_arc(&[e(0.0), e(0.2), e(0.5)]).unwrap();
        assert!((a.length - 0.5).abs() < 1e-15 && a.start == 0.0);
        assert!(minimal_arc(&[Complex64::new(2.0, 0.0)]).is_err());
    }

    #[test]
    fn arc_across_branch_cut() {
        let a = minimal_arc(&[e(3.0), e(-3.0)]).unwrap();
        assert!((a.length - (TAU - 6.0)).abs() < 1e-12);
        assert_eq!(a.start, 3.0);
    }

    #[test]
    fn arc_bound_examples() {
        let a = e(PI / 6.0);
        let c = arc_bound_check(a, a).unwrap();
        assert!((c.arc_len - PI / 6.0).abs() < 1e-12);
        assert!((c.bound - (3f64.sqrt() - 1.0).acos()).abs() < 1e-12);
        assert!(c.holds);
        let c = arc_bound_check(e(0.0), e(0.0)).unwrap();
        assert_eq!((c.arc_len, c.bound), (0.0, 0.0));
        assert!(c.holds);
        assert!(matches!(arc_bound_check(e(2.0), e(-2.0)), Err(Error::Hypothesis(_))));
        let c = arc_bound_check(e(0.3), e(-0.3)).unwrap();
        assert!(!c.holds);
        assert!((c.arc_len - 0.6).abs() < 1e-12 && (c.sharp_bound - 0.6).abs() < 1e-12);
    }

    #[test]
    fn tuple_hypothesis() {
        assert!(UnitTuple::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(UnitTuple::new(0.0, 0.0, 1.0, 1.0 + TAU).is_err());
        assert!(UnitTuple::new(0.0, 0.0, 1.0, -1.0).is_ok());
    }

    #[test]
    fn all_points_meet() {
        let t = UnitTuple::new(0.0, 0.0, PI / 2.0, PI).unwrap();
        assert_eq!(sector_search(&t, 4).unwrap(), (4, 0.0));
    }

    #[test]
    fn symmetric_configuration() {
        let t = UnitTuple::exceptional(0.0, 1.0).unwrap();
        let (_, d) = sector_search(&t, 100_000).unwrap();
        assert!(d < PI - 0.05);
    }

    #[test]
    fn sweep_is_ordered() {
        let ts = UnitTuple::seeded(3, 20);
        let rows = sector_sweep(&ts, 1000).unwrap();
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.index, i);
            assert_eq!(r.tuple, ts[i]);
            assert!(r.delta < PI - 0.01);
        }
    }
}
