use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ChartJet, MeroMap, MeroValue, Target};
use crate::jet::ScaledJet;
use crate::error::Result;
use crate::specfun::{airy_scaled, airy_zero, omega};

/// `f(z) = e^{i pi/3} Ai(w z) / Ai(conj(w) z)` with `w = e^{2 pi i/3}`.
///
/// `S(f) = -2z`; zeros lie on `arg z = pi/3`, poles on `arg z = -pi/3` and
/// one-points on the negative real axis.
#[derive(Clone, Copy, Debug, Default)]
pub struct Example1;

impl Example1 {
    /// k-th zero `e^{i pi/3} |a_k|`.
    pub fn zero(k: u64) -> Result<Complex64> {
        Ok(Complex64::from_polar(-airy_zero(k)?, PI / 3.0))
    }

    /// k-th pole `e^{-i pi/3} |a_k|`.
    pub fn pole(k: u64) -> Result<Complex64> {
        Ok(Complex64::from_polar(-airy_zero(k)?, -PI / 3.0))
    }

    /// k-th one-point `a_k`.
    pub fn one_point(k: u64) -> Result<Complex64> {
        Ok(Complex64::new(airy_zero(k)?, 0.0))
    }
}

impl MeroMap for Example1 {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        crate::specfun::check_finite(z)?;
        let w = omega();
        let mut num = airy_scaled(w * z);
        num.jet = num.jet.chain_linear(w) * Complex64::from_polar(1.0, PI / 3.0);
        let mut den = airy_scaled(w.conj() * z);
        den.jet = den.jet.chain_linear(w.conj());
        // W(Ai(w z), Ai(conj(w) z)) = -i / (2 pi), times e^{i pi/3}
        let w_const = Complex64::new(0.0, -1.0 / (2.0 * PI)) * Complex64::from_polar(1.0, PI / 3.0);
        let wronskian = Some(w_const * (-(num.log_scale + den.log_scale)).exp());
        Ok(MeroValue { num, den, wronskian })
    }

    fn a_point(&self, z: Complex64, a: Target) -> Result<ScaledJet> {
        if a == Some(Complex64::new(1.0, 0.0)) {
            // num - den = w Ai(z), by Ai(z) + w Ai(w z) + conj(w) Ai(conj(w) z) = 0
            crate::specfun::check_finite(z)?;
            let mut g = airy_scaled(z);
            g.jet = g.jet * omega();
            return Ok(g);
        }
        Ok(self.eval(z)?.a_point_jet(a))
    }
}

/// Jet of the example function at `z`, in the reciprocal chart when `|f| > 1`.
pub fn example1(z: Complex64) -> Result<ChartJet> {
    Example1.chart(z)
}
