//! Meromorphic maps as projective jet pairs, the Schwarzian derivative and
//! Möbius algebra.
//!
//! A [`MeroMap`] evaluates to a pair `(num, den)` of exp-scaled jets with
//! `f = num / den`. Working projectively keeps `f` usable at and near poles,
//! and the `a`-points of `f` are the zeros of `num - a den`.

mod example1;
mod mobius;
mod rational;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet3, ScaledJet};

pub use example1::{example1, Example1};
pub use mobius::{mobius_apply, mobius_invariance_residual, Mobius, MobiusMap};
pub use rational::{build_q, RationalMap, RaySpec};

/// Target value of an `a`-point search; `None` stands for infinity.
pub type Target = Option<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeroValue {
    pub num: ScaledJet,
    pub den: ScaledJet,
    /// Set when `num` and `den` solve a common `w'' + A w = 0`: the constant
    /// `num' den - num den'` divided by `exp(num.log_scale + den.log_scale)`.
    /// Lets `f'` be formed as `W / den^2` instead of by cancellation.
    pub wronskian: Option<Complex64>,
}

impl MeroValue {
    pub fn from_jet(jet: Jet3) -> Self {
        Self {
            num: ScaledJet::unscaled(jet).normalized(),
            den: ScaledJet::unscaled(Jet3::constant(Complex64::new(1.0, 0.0))),
            wronskian: None,
        }
    }

    /// `f(z)`; infinite at poles.
    pub fn value(&self) -> Complex64 {
        let d = self.den.jet.c[0];
        if d == Complex64::new(0.0, 0.0) {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        self.num.jet.c[0] / d * (self.num.log_scale - self.den.log_scale).exp()
    }

    /// `ln |f(z)|`.
    pub fn log_abs(&self) -> f64 {
        self.num.log_abs_value() - self.den.log_abs_value()
    }

    /// Jet of `num - a den` (the `a`-point function), exp-scaled.
    pub fn a_point_jet(&self, a: Target) -> ScaledJet {
        let one = Complex64::new(1.0, 0.0);
        match a {
            None => self.den,
            Some(a) if a == Complex64::new(0.0, 0.0) => self.num,
            Some(a) => self.num.lin_comb(one, &self.den, -a),
        }
    }

    /// Jet of `f` when `|f| <= 1`, otherwise jet of `1/f` (flagged).
    pub fn chart(&self) -> ChartJet {
        let reciprocal = self.log_abs() > 0.0;
        let (top, bottom) = if reciprocal { (&self.den, &self.num) } else { (&self.num, &self.den) };
        let factor = (top.log_scale - bottom.log_scale).exp();
        let mut jet = (top.jet / bottom.jet) * factor;
        if let Some(w) = self.wronskian {
            // (top/bottom)' = ±W / bottom^2, which needs no cancellation
            let sign = if reciprocal { -1.0 } else { 1.0 };
            let inv = bottom.jet.recip();
            let d = (inv * inv) * (w * factor * sign);
            jet.c[1] = d.c[0];
            jet.c[2] = d.c[1] / 2.0;
            jet.c[3] = d.c[2] / 3.0;
        }
        ChartJet { jet, reciprocal }
    }
}

/// A jet of `f` or, when `reciprocal` is set, of `1/f`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartJet {
    pub jet: Jet3,
    pub reciprocal: bool,
}

impl ChartJet {
    /// `f(z)`; infinite at a pole.
    pub fn value(&self) -> Complex64 {
        if self.reciprocal {
            let v = self.jet.c[0];
            if v == Complex64::new(0.0, 0.0) {
                Complex64::new(f64::INFINITY, f64::INFINITY)
            } else {
                v.inv()
            }
        } else {
            self.jet.c[0]
        }
    }
}

/// Evaluation contract for a meromorphic function. Implementations must be
/// pure so that scans can call them from several threads.
pub trait MeroMap: Sync {
    fn eval(&self, z: Complex64) -> Result<MeroValue>;

    /// Known singular points, if the map can list them.
    fn known_poles(&self) -> Vec<Complex64> {
        Vec::new()
    }

    /// Jet of the `a`-point function `num - a den`. Maps with a closed form
    /// that avoids the cancellation near `f = a` override this.
    fn a_point(&self, z: Complex64, a: Target) -> Result<ScaledJet> {
        Ok(self.eval(z)?.a_point_jet(a))
    }

    fn chart(&self, z: Complex64) -> Result<ChartJet> {
        Ok(self.eval(z)?.chart())
    }

    fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(z)?.value())
    }
}

impl<M: MeroMap + ?Sized> MeroMap for &M {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        (**self).eval(z)
    }
    fn a_point(&self, z: Complex64, a: Target) -> Result<ScaledJet> {
        (**self).a_point(z, a)
    }
    fn known_poles(&self) -> Vec<Complex64> {
        (**self).known_poles()
    }
}

impl<M: MeroMap + ?Sized> MeroMap for Box<M> {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        (**self).eval(z)
    }
    fn a_point(&self, z: Complex64, a: Target) -> Result<ScaledJet> {
        (**self).a_point(z, a)
    }
    fn known_poles(&self) -> Vec<Complex64> {
        (**self).known_poles()
    }
}

/// `z -> e^z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExpMap;

impl MeroMap for ExpMap {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        let one = Complex64::new(1.0, 0.0);
        let jet = Jet3::new(one, one, one / 2.0, one / 6.0);
        Ok(MeroValue {
            num: ScaledJet { jet, log_scale: z },
            den: ScaledJet::unscaled(Jet3::constant(one)),
            wronskian: None,
        })
    }
}

/// `z -> z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityMap;

impl MeroMap for IdentityMap {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        Ok(MeroValue::from_jet(Jet3::variable(z)))
    }
}

/// Relative size below which `f'` counts as vanishing.
pub const CRITICAL_TOL: f64 = 1e-12;

/// Schwarzian `6 c3/c1 - 6 (c2/c1)^2` of a Taylor jet.
pub fn schwarzian_of_jet(jet: &Jet3, z: Complex64) -> Result<Complex64> {
    let c = &jet.c;
    let scale = c[1].norm().max(c[2].norm()).max(c[3].norm());
    if !(c[1].norm() > CRITICAL_TOL * scale) {
        return Err(Error::CriticalPoint { z, deriv: c[1].norm() });
    }
    let r2 = c[2] / c[1];
    Ok(c[3] / c[1] * 6.0 - r2 * r2 * 6.0)
}

/// `S(f)(z) = (f''/f')' - (f''/f')^2 / 2`.
///
/// Computed from whichever of `num/den`, `den/num` is regular at `z`; both
/// have the same Schwarzian and the exp scales drop out.
pub fn schwarzian<M: MeroMap + ?Sized>(f: &M, z: Complex64) -> Result<Complex64> {
    let v = f.eval(z)?;
    schwarzian_of_value(&v, z)
}

pub fn schwarzian_of_value(v: &MeroValue, z: Complex64) -> Result<Complex64> {
    let rel = |s: &ScaledJet| s.jet.c[0].norm() / s.jet.scale().max(f64::MIN_POSITIVE);
    if let Some(w) = v.wronskian {
        if w == Complex64::new(0.0, 0.0) {
            return Err(Error::CriticalPoint { z, deriv: 0.0 });
        }
        // S = 2A with A = -w''/w for either solution
        let s = if rel(&v.den) >= rel(&v.num) { &v.den } else { &v.num };
        return Ok(-s.jet.c[2] / s.jet.c[0] * 4.0);
    }
    let ratio = if rel(&v.den) >= rel(&v.num) { v.num.jet / v.den.jet } else { v.den.jet / v.num.jet };
    schwarzian_of_jet(&ratio, z)
}
