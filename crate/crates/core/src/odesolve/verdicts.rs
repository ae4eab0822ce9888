//! Zero-counting verdicts for solutions of `w'' + A w = 0`.
//!
//! * Real zeros of a solution for nonreal polynomial `A`: at most `p + 1`,
//!   where `p` is the number of distinct real zeros of `Im A` on the line.
//! * Zeros in a sector `|arg(z - x1)| < alpha` of a real solution for real
//!   `A ~ c z^gamma` with `(2 + gamma) alpha < pi`: all real.
//!
//! Both scan with the argument principle on the solution continued from the
//! base point, so they count zeros of the actual transported solution.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{OdeMap, TransportState};
use crate::error::{Error, Result};
use crate::mero::{MeroMap, RationalMap};
use crate::rootscan::{locate_roots, Region};

/// Transport tolerance used by the verdicts.
pub const VERDICT_TOL: f64 = 1e-12;
/// A located zero is real when `|Im z| <= REAL_TOL * max(1, |z|)`.
pub const REAL_TOL: f64 = 1e-8;
/// Half-height of the rectangle scanned around the interval.
pub const STRIP_HALF_HEIGHT: f64 = 0.1;
const NEWTON_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripVerdict {
    /// Real zeros of `w` in the interval.
    pub k: usize,
    /// Distinct real zeros of `(A(z) - conj A(conj z)) / 2i`.
    pub p: usize,
    /// Degree of `A`.
    pub n: usize,
    pub holds: bool,
    /// Every zero found in the strip, real or not.
    pub zeros: Vec<Complex64>,
}

/// Count real zeros of the solution with data `init` at `x0` on
/// `[x_lo, x_hi]` and compare with the bound `p + 1`.
pub fn strip_verdict(a: &RationalMap, x0: f64, init: TransportState, interval: (f64, f64)) -> Result<StripVerdict> {
    if !a.is_polynomial() {
        return Err(Error::Hypothesis("A must be a polynomial".into()));
    }
    let coeffs = a.num();
    let imag = coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if imag <= 1e-10 {
        return Err(Error::Hypothesis("A must be a nonreal polynomial".into()));
    }
    let (lo, hi) = interval;
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidInput(format!("interval [{lo}, {hi}]")));
    }
    if !(lo..=hi).contains(&x0) {
        return Err(Error::InvalidInput(format!("base point {x0} outside [{lo}, {hi}]")));
    }
    let n = coeffs.len() - 1;
    let im_coeffs: Vec<f64> = coeffs.iter().map(|c| c.im).collect();
    let p = real_root_count(&im_coeffs);

    let map = OdeMap::single(a.clone(), Complex64::new(x0, 0.0), init, VERDICT_TOL)?;
    for x in [lo, hi] {
        if near_zero(&map, Complex64::new(x, 0.0))? {
            return Err(Error::AmbiguousCount(x));
        }
    }
    let region = Region::rectangle(lo, hi, -STRIP_HALF_HEIGHT, STRIP_HALF_HEIGHT)?;
    let roots = locate_roots(&map, &region, Some(Complex64::new(0.0, 0.0)), NEWTON_TOL)?;
    let mut k = 0;
    let mut zeros = Vec::with_capacity(roots.len());
    for r in &roots {
        let z = r.location;
        if z.im.abs() <= REAL_TOL * z.norm().max(1.0) && z.re >= lo && z.re <= hi {
            k += r.multiplicity as usize;
        }
        zeros.push(z);
    }
    Ok(StripVerdict { k, p, n, holds: k <= p + 1, zeros })
}

/// `|w / w'|` below the real-zero tolerance.
fn near_zero(map: &OdeMap, z: Complex64) -> Result<bool> {
    let g = map.a_point(z, Some(Complex64::new(0.0, 0.0)))?.jet;
    Ok(g.c[0].norm() <= REAL_TOL * z.norm().max(1.0) * g.c[1].norm())
}

/// Number of distinct real roots of a real polynomial (lowest degree
/// first), by a Sturm sequence.
pub fn real_root_count(coeffs: &[f64]) -> usize {
    let p = trim(coeffs.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut seq = vec![p.clone(), derivative(&p)];
    loop {
        let n = seq.len();
        let r = remainder(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.iter().map(|c| -c).collect());
    }
    let variations = |signs: Vec<f64>| signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
    let at_pos: Vec<f64> = seq.iter().map(|q| q[q.len() - 1].signum()).collect();
    let at_neg: Vec<f64> = seq
        .iter()
        .map(|q| {
            let s = q[q.len() - 1].signum();
            if (q.len() - 1) % 2 == 0 { s } else { -s }
        })
        .collect();
    variations(at_neg).saturating_sub(variations(at_pos))
}

fn trim(mut p: Vec<f64>) -> Vec<f64> {
    let scale = p.iter().map(|c| c.abs()).fold(0.0, f64::max);
    while p.last().is_some_and(|c| c.abs() <= 1e-14 * scale) {
        p.pop();
    }
    p
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect()
}

/// Remainder of `a / b`; empty when it vanishes relative to `a`.
fn remainder(a: &[f64], b: &[f64]) -> Vec<f64> {
    let scale = a.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let q = r[r.len() - 1] / b[db];
        let shift = r.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= q * bc;
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.abs() <= 1e-12 * scale) {
        r.pop();
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorVerdict {
    pub all_real: bool,
    /// No zero found in the scanned sector.
    pub inconclusive: bool,
    pub zeros: Vec<Complex64>,
    pub offenders: Vec<Complex64>,
    pub gamma: i64,
    pub c: f64,
}

/// Locate the zeros of the real solution with data `u_init` at `x1` in
/// `{|arg(z - x1)| < alpha, |z - x1| <= scan_radius}` and check they are real.
pub fn sector_verdict(
    a: &RationalMap,
    alpha: f64,
    x1: f64,
    u_init: TransportState,
    scan_radius: f64,
) -> Result<SectorVerdict> {
    let (gamma, c) = real_asymptotics(a)?;
    if gamma <= -2 {
        return Err(Error::Hypothesis(format!("gamma = {gamma} must exceed -2")));
    }
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::Hypothesis(format!("alpha = {alpha} must lie in (0, pi)")));
    }
    if (2.0 + gamma as f64) * alpha >= PI {
        return Err(Error::Hypothesis(format!("(2 + gamma) alpha = {} must be below pi", (2.0 + gamma as f64) * alpha)));
    }
    let s = u_init.w.norm().max(u_init.w_prime.norm());
    if u_init.w.im.abs() > 1e-14 * s || u_init.w_prime.im.abs() > 1e-14 * s {
        return Err(Error::Hypothesis("initial data must be real".into()));
    }
    if !(scan_radius > 0.0 && scan_radius.is_finite()) {
        return Err(Error::InvalidInput(format!("scan radius {scan_radius}")));
    }
    let base = Complex64::new(x1, 0.0);
    let map = OdeMap::single(a.clone(), base, u_init, VERDICT_TOL)?;
    let region = Region::annulus_sector(base, 0.0, scan_radius, -alpha, alpha)?;
    let roots = locate_roots(&map, &region, Some(Complex64::new(0.0, 0.0)), NEWTON_TOL)?;
    let mut zeros: Vec<Complex64> = roots.iter().map(|r| r.location).collect();
    zeros.sort_by(|p, q| p.re.total_cmp(&q.re));
    let offenders: Vec<Complex64> = zeros.iter().copied().filter(|z| z.im.abs() > REAL_TOL * z.norm().max(1.0)).collect();
    Ok(SectorVerdict {
        all_real: offenders.is_empty(),
        inconclusive: zeros.is_empty(),
        zeros,
        offenders,
        gamma,
        c,
    })
}

/// `(gamma, c)` with `A(z) ~ c z^gamma`, after checking `A` is real with `c > 0`.
fn real_asymptotics(a: &RationalMap) -> Result<(i64, f64)> {
    let lead = *a.den().last().expect("nonempty denominator");
    let scale = a.num().iter().chain(a.den()).map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let nonreal = a.num().iter().chain(a.den()).any(|c| (c / lead).im.abs() > 1e-12 * scale);
    if nonreal {
        return Err(Error::Hypothesis("A must be real on the real line".into()));
    }
    let gamma = a.num().len() as i64 - a.den().len() as i64;
    let c = (a.num().last().expect("nonempty numerator") / lead).re;
    if !(c > 0.0) {
        return Err(Error::Hypothesis(format!("leading coefficient c = {c} must be positive")));
    }
    Ok((gamma, c))
}
