use num_complex::Complex64;

use super::{check_tol, transport_states, wronskian, PathPlan, TransportState, DEFAULT_CLEARANCE};
use crate::error::{Error, Result};
use crate::jet::{Jet3, ScaledJet};
use crate::mero::{MeroMap, MeroValue, RationalMap};

/// Smallest admissible initial Wronskian of a basis.
pub const MIN_WRONSKIAN: f64 = 1e-10;

/// Meromorphic map defined by solutions of `w'' + A w = 0` continued from a
/// base point: `f = w1 / w2` for a pair, or `f = w` for a single solution.
///
/// Each evaluation transports the initial data along the straight segment
/// from the base point, detouring around poles of `A`. The result is path
/// independent exactly when the monodromy is projectively trivial.
#[derive(Clone, Debug)]
pub struct OdeMap {
    a: RationalMap,
    poles: Vec<Complex64>,
    base: Complex64,
    init: Vec<TransportState>,
    tol: f64,
    clearance: f64,
    wronskian_hint: bool,
}

impl OdeMap {
    /// Single solution `u` of `u'' + A u = 0` with data `init` at `base`.
    pub fn single(a: RationalMap, base: Complex64, init: TransportState, tol: f64) -> Result<Self> {
        Self::build(a, base, vec![init], tol)
    }

    fn build(a: RationalMap, base: Complex64, init: Vec<TransportState>, tol: f64) -> Result<Self> {
        check_tol(tol)?;
        let poles = a.poles();
        for p in &poles {
            let d = (p - base).norm();
            if d < DEFAULT_CLEARANCE {
                return Err(Error::PathClearance { pole: *p, distance: d });
            }
        }
        Ok(Self { a, poles, base, init, tol, clearance: DEFAULT_CLEARANCE, wronskian_hint: false })
    }

    pub fn with_clearance(mut self, clearance: f64) -> Self {
        self.clearance = clearance.max(DEFAULT_CLEARANCE);
        self
    }

    /// Form `f'` from the conserved Wronskian instead of by differencing
    /// `w1' w2 - w1 w2'`; needed far out where the two products cancel.
    pub fn with_wronskian_hint(mut self) -> Self {
        self.wronskian_hint = true;
        self
    }

    pub fn coefficient(&self) -> &RationalMap {
        &self.a
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    /// Solutions transported to `z`.
    pub fn states_at(&self, z: Complex64) -> Result<Vec<TransportState>> {
        if z == self.base {
            return Ok(self.init.clone());
        }
        let path = PathPlan::routed(self.base, z, &self.poles, self.clearance)?;
        Ok(match self.init.len() {
            1 => transport_states(&self.a, &path, [self.init[0]], self.tol)?.to_vec(),
            _ => transport_states(&self.a, &path, [self.init[0], self.init[1]], self.tol)?.to_vec(),
        })
    }

    fn solution_jet(&self, s: &TransportState, aj: &Jet3) -> ScaledJet {
        let (a0, a1) = (aj.c[0], aj.c[1]);
        let jet = Jet3::new(s.w, s.w_prime, -a0 * s.w / 2.0, -(a1 * s.w + a0 * s.w_prime) / 6.0);
        ScaledJet { jet, log_scale: Complex64::new(s.log_scale, 0.0) }.normalized()
    }
}

impl MeroMap for OdeMap {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        let states = self.states_at(z)?;
        let aj = self.a.jet(z);
        let num = self.solution_jet(&states[0], &aj);
        if states.len() == 1 {
            let mut v = MeroValue::from_jet(Jet3::constant(Complex64::new(1.0, 0.0)));
            v.num = num;
            return Ok(v);
        }
        let den = self.solution_jet(&states[1], &aj);
        let wronskian = self.wronskian_hint.then(|| {
            // MeroValue wants num' den - num den' = -(w1 w2' - w1' w2)
            let w0 = -wronskian(&self.init[0], &self.init[1]);
            w0 * (-(num.log_scale + den.log_scale)).exp()
        });
        Ok(MeroValue { num, den, wronskian })
    }

    fn known_poles(&self) -> Vec<Complex64> {
        self.poles.clone()
    }
}

/// `f = w1 / w2` for a basis of `w'' + (Q/2) w = 0` given at `base`, so that
/// `S(f) = Q`.
pub fn solve_schwarzian(q: &RationalMap, base: Complex64, basis: [TransportState; 2], tol: f64) -> Result<OdeMap> {
    let w = wronskian(&basis[0], &basis[1]).norm();
    if !(w > MIN_WRONSKIAN) {
        return Err(Error::InvalidBasis(w));
    }
    OdeMap::build(q.scaled(Complex64::new(0.5, 0.0)), base, basis.to_vec(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mero::{schwarzian, Example1};
    use crate::specfun::{airy_scaled, omega};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(v: &[Complex64]) -> RationalMap {
        RationalMap::polynomial(v.to_vec()).unwrap()
    }

    #[test]
    fn airy_basis_reproduces_example() {
        let q = poly(&[c(0.0, 0.0), c(-2.0, 0.0)]);
        let w = omega();
        // w1 = e^{i pi/3} Ai(w z), w2 = Ai(conj(w) z) at z = 0
        let n = airy_scaled(c(0.0, 0.0)).to_jet();
        let e = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let basis = [TransportState::new(e * n.c[0], e * w * n.c[1]), TransportState::new(n.c[0], w.conj() * n.c[1])];
        let f = solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-12).unwrap();
        let s = schwarzian(&f, c(1.0, 0.0)).unwrap();
        assert!((s + 2.0).norm() < 1e-6);
        for z in [c(1.0, 1.0), c(-2.0, 0.5), c(0.5, -2.0)] {
            let a = f.value(z).unwrap();
            let b = Example1.value(z).unwrap();
            assert!((a - b).norm() < 1e-8 * (1.0 + b.norm()), "z={z}");
        }
    }

    #[test]
    fn free_equation_gives_mobius() {
        let q = poly(&[c(0.0, 0.0)]);
        let basis = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
        let f = solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-10).unwrap();
        let z = c(0.4, 0.3);
        assert!((f.value(z).unwrap() - z.inv()).norm() < 1e-9);
        assert!(schwarzian(&f, z).unwrap().norm() < 1e-8);
    }

    #[test]
    fn cotangent() {
        let q = poly(&[c(2.0, 0.0)]);
        let basis = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
        let f = solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-12).unwrap();
        let z = c(0.7, 0.0);
        assert!((f.value(z).unwrap() - 1.0 / 0.7f64.tan()).norm() < 1e-9);
        assert!((schwarzian(&f, z).unwrap() - 2.0).norm() < 1e-8);
    }

    #[test]
    fn degenerate_basis_rejected() {
        let q = poly(&[c(2.0, 0.0)]);
        let basis = [TransportState::real(1.0, 1.0), TransportState::real(2.0, 2.0)];
        assert!(matches!(solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-10), Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn wronskian_hint_agrees() {
        let q = poly(&[c(0.0, 0.0), c(-2.0, 0.0)]);
        let basis = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
        let f = solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-12).unwrap();
        let g = f.clone().with_wronskian_hint();
        let z = c(1.5, 0.5);
        let (a, b) = (f.chart(z).unwrap(), g.chart(z).unwrap());
        for k in 0..4 {
            assert!((a.jet.c[k] - b.jet.c[k]).norm() < 1e-8 * (1.0 + a.jet.c[k].norm()), "{a:?} {b:?}");
        }
    }
}
