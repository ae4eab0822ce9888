use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_tol, transport_states, PathPlan, TransportState};
use crate::error::{Error, Result};
use crate::mero::{build_q, RationalMap, RaySpec};

/// `(w, w')` at the end of a loop equals `M (w, w')` at its start, with
/// `M = exp(log_scale) m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyMatrix {
    pub m: [[Complex64; 2]; 2],
    pub log_scale: f64,
}

impl MonodromyMatrix {
    pub fn from_rows(m: [[Complex64; 2]; 2]) -> Self {
        Self { m, log_scale: 0.0 }
    }

    pub fn trace(&self) -> Complex64 {
        (self.m[0][0] + self.m[1][1]) * self.log_scale.exp()
    }

    /// Determinant with the scale applied; 1 for a trace-free equation.
    pub fn det(&self) -> Complex64 {
        let m = &self.m;
        (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * (2.0 * self.log_scale).exp()
    }

    pub fn frobenius_unscaled(&self) -> f64 {
        self.m.iter().flatten().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Distance from the identity, `max |M - I|` over entries.
    pub fn identity_defect(&self) -> f64 {
        let s = self.log_scale.exp();
        let mut d = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let id = if i == j { 1.0 } else { 0.0 };
                d = d.max((self.m[i][j] * s - id).norm());
            }
        }
        d
    }
}

/// `||M - (tr M / 2) I||_F / ||M||_F`, zero exactly for scalar matrices.
pub fn projective_defect(m: &MonodromyMatrix) -> Result<f64> {
    let norm = m.frobenius_unscaled();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::InvalidMatrix(format!("Frobenius norm {norm}")));
    }
    let half = (m.m[0][0] + m.m[1][1]) / 2.0;
    let d00 = m.m[0][0] - half;
    let d11 = m.m[1][1] - half;
    let off = (d00.norm_sqr() + d11.norm_sqr() + m.m[0][1].norm_sqr() + m.m[1][0].norm_sqr()).sqrt();
    Ok(off / norm)
}

/// Monodromy of `w'' + A w = 0` around a closed `lp`.
pub fn monodromy(a: &RationalMap, lp: &PathPlan, tol: f64) -> Result<MonodromyMatrix> {
    check_tol(tol)?;
    if !lp.is_closed() {
        return Err(Error::InvalidInput("monodromy loop is not closed".into()));
    }
    lp.validate(&a.poles())?;
    let basis = [TransportState::real(1.0, 0.0), TransportState::real(0.0, 1.0)];
    let [e1, e2] = transport_states(a, lp, basis, tol)?;
    Ok(MonodromyMatrix { m: [[e1.w, e2.w], [e1.w_prime, e2.w_prime]], log_scale: e1.log_scale })
}

/// Coefficients for which `R(w) = -c + a/(w-p) + b/(w-p)^2` gives a
/// single-valued solution: `b = -27p/2`, `c = (4a^2 + 36a + 45)/(72p)`.
pub fn elfving_coefficients(a: f64, p: f64) -> Result<(f64, f64)> {
    if p == 0.0 || !p.is_finite() || !a.is_finite() {
        return Err(Error::InvalidInput(format!("pole position p = {p} must be finite and nonzero")));
    }
    Ok((-27.0 * p / 2.0, (4.0 * a * a + 36.0 * a + 45.0) / (72.0 * p)))
}

/// `Q(z) = z R(z^3)` for `R(w) = -c + a/(w-p) + b/(w-p)^2`.
///
/// `R(inf) = -c < 0`, so in the normalized form this is `build_q(pi/3, -R)`.
pub fn elfving_q(a: f64, b: f64, c: f64, p: f64) -> Result<RationalMap> {
    let r = |x: f64| Complex64::new(x, 0.0);
    // -R(w) (w-p)^2 = c (w-p)^2 - a (w-p) - b
    let num = vec![r(c * p * p + a * p - b), r(-2.0 * c * p - a), r(c)];
    let den = vec![r(p * p), r(-2.0 * p), r(1.0)];
    let neg_r = RationalMap::new(num, den)?;
    build_q(RaySpec::new(std::f64::consts::PI / 3.0), &neg_r)
}

/// Serializable monodromy run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonodromyReport {
    pub matrix: [[[f64; 2]; 2]; 2],
    pub defect: f64,
    pub tol: f64,
    #[serde(rename = "loop")]
    pub lp: PathPlan,
    pub det: [f64; 2],
}

impl MonodromyReport {
    pub fn new(m: &MonodromyMatrix, lp: &PathPlan, tol: f64) -> Result<Self> {
        let s = m.log_scale.exp();
        let e = |c: Complex64| [c.re * s, c.im * s];
        let det = m.det();
        Ok(Self {
            matrix: [[e(m.m[0][0]), e(m.m[0][1])], [e(m.m[1][0]), e(m.m[1][1])]],
            defect: projective_defect(m)?,
            tol,
            lp: lp.clone(),
            det: [det.re, det.im],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn defect_examples() {
        let d = |m: [[Complex64; 2]; 2]| projective_defect(&MonodromyMatrix::from_rows(m)).unwrap();
        let z = c(0.0, 0.0);
        assert_eq!(d([[c(3.0, 0.0), z], [z, c(3.0, 0.0)]]), 0.0);
        assert!((d([[c(1.0, 0.0), z], [z, c(-1.0, 0.0)]]) - 1.0).abs() < 1e-15);
        let v = d([[c(1.0, 0.0), c(0.1, 0.0)], [z, c(1.0, 0.0)]]);
        assert!((v - 0.1 / 2.01f64.sqrt()).abs() < 1e-15);
        assert!(projective_defect(&MonodromyMatrix::from_rows([[z; 2]; 2])).is_err());
    }

    #[test]
    fn elfving_examples() {
        assert_eq!(elfving_coefficients(1.0, 1.0).unwrap(), (-13.5, 85.0 / 72.0));
        assert_eq!(elfving_coefficients(0.0, 1.0).unwrap(), (-13.5, 0.625));
        assert_eq!(elfving_coefficients(1.0, 2.0).unwrap(), (-27.0, 85.0 / 144.0));
        assert!(elfving_coefficients(1.0, 0.0).is_err());
    }

    #[test]
    fn elfving_q_form() {
        let q = elfving_q(1.0, -13.5, 85.0 / 72.0, 1.0).unwrap();
        let z = c(0.3, 0.8);
        let w = z * z * z;
        let r = -85.0 / 72.0 + 1.0 / (w - 1.0) - 13.5 / ((w - 1.0) * (w - 1.0));
        assert!((q.eval_value(z) - z * r).norm() < 1e-12);
    }

    #[test]
    fn analytic_loop_gives_identity() {
        let a = RationalMap::polynomial(vec![c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let m = monodromy(&a, &PathPlan::circle(c(0.0, 0.0), 2.0, 720), 1e-11).unwrap();
        assert!(m.identity_defect() < 1e-8);
        assert!((m.det() - 1.0).norm() < 1e-6);
    }

    #[test]
    fn elfving_condition_detected() {
        let (b, cc) = elfving_coefficients(1.0, 1.0).unwrap();
        let q = elfving_q(1.0, b, cc, 1.0).unwrap();
        let a = q.scaled(Complex64::new(0.5, 0.0));
        let lp = PathPlan::monodromy_loop(&a.poles());
        let m = monodromy(&a, &lp, 1e-11).unwrap();
        assert!(projective_defect(&m).unwrap() <= 1e-6);

        let q = elfving_q(1.0, b, cc * 1.01, 1.0).unwrap();
        let a = q.scaled(Complex64::new(0.5, 0.0));
        let m = monodromy(&a, &lp, 1e-11).unwrap();
        assert!(projective_defect(&m).unwrap() >= 1e-3);
    }
}
