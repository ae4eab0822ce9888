//! Third-order jets: truncated Taylor arithmetic in one complex variable.
//!
//! A [`Jet3`] stores the Taylor coefficients `c[k] = f^(k)(z0) / k!` for
//! `k = 0..=3`. Products and quotients follow the truncated Cauchy product, so
//! derivatives up to third order propagate exactly (up to rounding).
//!
//! [`ScaledJet`] attaches a constant complex exponent so that functions such as
//! `Ai(z)` at large `|z|` can be carried as `exp(log_scale) * jet` without
//! overflowing.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub c: [Complex64; 4],
}

impl Jet3 {
    pub fn new(c0: Complex64, c1: Complex64, c2: Complex64, c3: Complex64) -> Self {
        Self { c: [c0, c1, c2, c3] }
    }

    pub fn constant(v: Complex64) -> Self {
        Self::new(v, ZERO, ZERO, ZERO)
    }

    /// The identity map expanded at `z0`.
    pub fn variable(z0: Complex64) -> Self {
        Self::new(z0, ONE, ZERO, ZERO)
    }

    /// Build from derivatives `f, f', f'', f'''`.
    pub fn from_derivatives(d: [Complex64; 4]) -> Self {
        Self::new(d[0], d[1], d[2] / 2.0, d[3] / 6.0)
    }

    /// Derivatives `f, f', f'', f'''`.
    pub fn derivatives(&self) -> [Complex64; 4] {
        [self.c[0], self.c[1], self.c[2] * 2.0, self.c[3] * 6.0]
    }

    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.c.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale_by(&self, s: Complex64) -> Self {
        Self { c: self.c.map(|c| c * s) }
    }

    /// Jet of `z -> f(lambda * z)` given the jet of `f` at `lambda * z0`.
    pub fn chain_linear(&self, lambda: Complex64) -> Self {
        let mut p = ONE;
        let mut out = self.c;
        for c in out.iter_mut() {
            *c *= p;
            p *= lambda;
        }
        Self { c: out }
    }

    /// Compose an outer function, given its derivatives at `self.c[0]`,
    /// with this jet (Faa di Bruno to third order).
    pub fn compose(&self, outer: [Complex64; 4]) -> Self {
        let [_, u1, u2, u3] = self.c;
        let [g0, g1, g2, g3] = outer;
        Self::new(
            g0,
            g1 * u1,
            g1 * u2 + g2 * u1 * u1 / 2.0,
            g1 * u3 + g2 * u1 * u2 + g3 * u1 * u1 * u1 / 6.0,
        )
    }

    pub fn exp(&self) -> Self {
        let e = self.c[0].exp();
        self.compose([e; 4])
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.compose([c, -s, -c, s])
    }

    pub fn recip(&self) -> Self {
        Jet3::constant(ONE) / *self
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Jet3::constant(ONE), |acc, _| acc * *self)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, o: Jet3) -> Jet3 {
        Jet3 { c: std::array::from_fn(|k| self.c[k] + o.c[k]) }
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, o: Jet3) -> Jet3 {
        Jet3 { c: std::array::from_fn(|k| self.c[k] - o.c[k]) }
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3 { c: self.c.map(|c| -c) }
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, o: Jet3) -> Jet3 {
        let (a, b) = (self.c, o.c);
        Jet3::new(
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        )
    }
}

impl Mul<Complex64> for Jet3 {
    type Output = Jet3;
    fn mul(self, s: Complex64) -> Jet3 {
        self.scale_by(s)
    }
}

impl Add<Complex64> for Jet3 {
    type Output = Jet3;
    fn add(self, s: Complex64) -> Jet3 {
        let mut c = self.c;
        c[0] += s;
        Jet3 { c }
    }
}

/// Truncated series division; the divisor must have a nonzero constant term.
impl Div for Jet3 {
    type Output = Jet3;
    fn div(self, o: Jet3) -> Jet3 {
        let (a, b) = (self.c, o.c);
        let q0 = a[0] / b[0];
        let q1 = (a[1] - q0 * b[1]) / b[0];
        let q2 = (a[2] - q0 * b[2] - q1 * b[1]) / b[0];
        let q3 = (a[3] - q0 * b[3] - q1 * b[2] - q2 * b[1]) / b[0];
        Jet3::new(q0, q1, q2, q3)
    }
}

/// `exp(log_scale) * jet` with a constant (not z-dependent) exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledJet {
    pub jet: Jet3,
    pub log_scale: Complex64,
}

impl ScaledJet {
    pub fn unscaled(jet: Jet3) -> Self {
        Self { jet, log_scale: ZERO }
    }

    /// Move as much magnitude as possible into the exponent so that the
    /// largest coefficient has modulus one.
    pub fn normalized(self) -> Self {
        let s = self.jet.scale();
        if s == 0.0 || !s.is_finite() {
            return self;
        }
        Self {
            jet: self.jet.scale_by(Complex64::new(1.0 / s, 0.0)),
            log_scale: self.log_scale + s.ln(),
        }
    }

    pub fn mul(&self, o: &ScaledJet) -> ScaledJet {
        ScaledJet { jet: self.jet * o.jet, log_scale: self.log_scale + o.log_scale }.normalized()
    }

    pub fn scale_const(&self, k: Complex64) -> ScaledJet {
        ScaledJet { jet: self.jet * k, log_scale: self.log_scale }
    }

    /// `alpha * self + beta * other`, evaluated relative to the larger exponent.
    pub fn lin_comb(&self, alpha: Complex64, other: &ScaledJet, beta: Complex64) -> ScaledJet {
        let (big, small, a_big, a_small) = if self.log_scale.re >= other.log_scale.re {
            (self, other, alpha, beta)
        } else {
            (other, self, beta, alpha)
        };
        let rel = (small.log_scale - big.log_scale).exp();
        ScaledJet {
            jet: big.jet * a_big + small.jet * (a_small * rel),
            log_scale: big.log_scale,
        }
        .normalized()
    }

    /// `ln |value|`, finite unless the value is exactly zero.
    pub fn log_abs_value(&self) -> f64 {
        self.log_scale.re + self.jet.c[0].norm().ln()
    }

    /// Plain jet; may overflow to infinity.
    pub fn to_jet(&self) -> Jet3 {
        self.jet.scale_by(self.log_scale.exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn product_rule_on_polynomials() {
        // p(z) = 1 + 2z + 3z^2, q(z) = 4 - z + z^3 expanded at 0
        let p = Jet3::new(c(1.0), c(2.0), c(3.0), c(0.0));
        let q = Jet3::new(c(4.0), c(-1.0), c(0.0), c(1.0));
        let r = p * q;
        // (1 + 2z + 3z^2)(4 - z + z^3) = 4 + 7z + 10z^2 - 2z^3 + ...
        assert_eq!(r.c, [c(4.0), c(7.0), c(10.0), c(-2.0)]);
    }

    #[test]
    fn division_inverts_multiplication() {
        let p = Jet3::new(c(2.0), c(1.0), c(-3.0), c(0.5));
        let q = Jet3::new(c(1.5), c(0.25), c(2.0), c(-1.0));
        let r = (p * q) / q;
        for k in 0..4 {
            assert!((r.c[k] - p.c[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn exp_jet_coefficients() {
        let z0 = Complex64::new(0.3, -0.2);
        let e = Jet3::variable(z0).exp();
        let v = z0.exp();
        assert!((e.c[2] - v / 2.0).norm() < 1e-15);
        assert!((e.c[3] - v / 6.0).norm() < 1e-15);
    }

    #[test]
    fn scaled_lin_comb_survives_huge_exponents() {
        let a = ScaledJet { jet: Jet3::constant(c(1.0)), log_scale: c(2000.0) };
        let b = ScaledJet { jet: Jet3::constant(c(1.0)), log_scale: c(1999.0) };
        let s = a.lin_comb(c(1.0), &b, c(-1.0));
        let expected = 2000.0 + (1.0 - (-1.0f64).exp()).ln();
        assert!((s.log_abs_value() - expected).abs() < 1e-12);
    }
}
