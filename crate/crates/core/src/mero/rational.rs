use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{MeroMap, MeroValue};
use crate::error::{Error, Result};
use crate::jet::{Jet3, ScaledJet};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Resultant of the normalized numerator and denominator below which they are
/// taken to share a root.
pub const RESULTANT_TOL: f64 = 1e-12;
/// Largest imaginary part tolerated in a "real" coefficient.
pub const REALITY_TOL: f64 = 1e-12;

/// Quotient of two polynomials, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct RationalMap {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct RawRational {
    num: Vec<[f64; 2]>,
    den: Vec<[f64; 2]>,
}

impl TryFrom<RawRational> for RationalMap {
    type Error = Error;
    fn try_from(r: RawRational) -> Result<Self> {
        let conv = |v: Vec<[f64; 2]>| v.into_iter().map(|[a, b]| Complex64::new(a, b)).collect();
        RationalMap::new(conv(r.num), conv(r.den))
    }
}

impl From<RationalMap> for RawRational {
    fn from(r: RationalMap) -> Self {
        let conv = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect();
        RawRational { num: conv(&r.num), den: conv(&r.den) }
    }
}

impl RationalMap {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        for (name, p) in [("numerator", &num), ("denominator", &den)] {
            match p.last() {
                None => return Err(Error::InvalidInput(format!("empty {name}"))),
                Some(c) if *c == ZERO && p.len() > 1 => {
                    return Err(Error::InvalidInput(format!("leading {name} coefficient is zero")))
                }
                _ => {}
            }
            if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite {name} coefficient")));
            }
        }
        if den.iter().all(|c| *c == ZERO) {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        let res = normalized_resultant(&num, &den);
        if res < RESULTANT_TOL {
            return Err(Error::InvalidInput(format!(
                "numerator and denominator share a root (resultant {res:.3e})"
            )));
        }
        Ok(Self { num, den })
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn constant(c: Complex64) -> Self {
        Self { num: vec![c], den: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn num(&self) -> &[Complex64] {
        &self.num
    }

    pub fn den(&self) -> &[Complex64] {
        &self.den
    }

    pub fn eval_value(&self, z: Complex64) -> Complex64 {
        horner(&self.num, z) / horner(&self.den, z)
    }

    /// Taylor jet of the map at `z` (not at a pole).
    pub fn jet(&self, z: Complex64) -> Jet3 {
        poly_jet(&self.num, z) / poly_jet(&self.den, z)
    }

    /// `k` times the map.
    pub fn scaled(&self, k: Complex64) -> RationalMap {
        RationalMap { num: self.num.iter().map(|c| c * k).collect(), den: self.den.clone() }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// Roots of the denominator.
    pub fn poles(&self) -> Vec<Complex64> {
        poly_roots(&self.den)
    }

    pub fn zeros(&self) -> Vec<Complex64> {
        poly_roots(&self.num)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("rational map JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rational map serializes")
    }
}

impl MeroMap for RationalMap {
    fn eval(&self, z: Complex64) -> Result<MeroValue> {
        Ok(MeroValue {
            num: ScaledJet::unscaled(poly_jet(&self.num, z)).normalized(),
            den: ScaledJet::unscaled(poly_jet(&self.den, z)).normalized(),
            wronskian: None,
        })
    }

    fn known_poles(&self) -> Vec<Complex64> {
        self.poles()
    }
}

pub fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

/// Taylor jet of a polynomial at `z` (synthetic division, four passes).
pub fn poly_jet(p: &[Complex64], z: Complex64) -> Jet3 {
    let mut work: Vec<Complex64> = p.to_vec();
    let mut c = [ZERO; 4];
    for ck in c.iter_mut() {
        if work.is_empty() {
            break;
        }
        // divide work by (x - z): remainder is the value
        let mut acc = ZERO;
        let mut quotient = vec![ZERO; work.len().saturating_sub(1)];
        for i in (0..work.len()).rev() {
            acc = acc * z + work[i];
            if i > 0 {
                quotient[i - 1] = acc;
            }
        }
        *ck = acc;
        work = quotient;
    }
    Jet3 { c }
}

/// Roots from the eigenvalues of the companion matrix.
pub fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let mut p = p.to_vec();
    while p.len() > 1 && *p.last().unwrap() == ZERO {
        p.pop();
    }
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    let mut roots: Vec<Complex64> = m.schur().eigenvalues().map(|v| v.iter().copied().collect()).unwrap_or_default();
    // one Newton polish step per root
    for r in roots.iter_mut() {
        let j = poly_jet(&p, *r);
        if j.c[1] != ZERO {
            *r -= j.c[0] / j.c[1];
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
}

/// `|Res(p, q)|` with both polynomials scaled to unit max coefficient.
fn normalized_resultant(p: &[Complex64], q: &[Complex64]) -> f64 {
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m == 0 || n == 0 {
        return f64::INFINITY;
    }
    let norm = |v: &[Complex64]| {
        let s = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        v.iter().map(|c| c / s).collect::<Vec<_>>()
    };
    let (p, q) = (norm(p), norm(q));
    let size = m + n;
    let mut s = DMatrix::<Complex64>::zeros(size, size);
    for row in 0..n {
        for (k, c) in p.iter().rev().enumerate() {
            s[(row, row + k)] = *c;
        }
    }
    for row in 0..m {
        for (k, c) in q.iter().rev().enumerate() {
            s[(n + row, row + k)] = *c;
        }
    }
    s.determinant().norm()
}

/// Direction of a ray, normalized to `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    theta: f64,
}

impl RaySpec {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(2.0 * PI);
        if t > PI {
            t -= 2.0 * PI;
        }
        Self { theta: t }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// `Q(z) = e^{3 i theta} z R(z^3)` for real `R` with `0 < R(inf) < inf`.
pub fn build_q(theta: RaySpec, r: &RationalMap) -> Result<RationalMap> {
    let hyp = |why: String| Error::Hypothesis(format!("R must be real with 0 < R(∞) < ∞: {why}"));
    if r.num.len() != r.den.len() {
        return Err(hyp(format!(
            "deg num = {} differs from deg den = {}",
            r.num.len() - 1,
            r.den.len() - 1
        )));
    }
    let lead = *r.den.last().unwrap();
    let p: Vec<Complex64> = r.num.iter().map(|c| c / lead).collect();
    let s: Vec<Complex64> = r.den.iter().map(|c| c / lead).collect();
    let imag = p.iter().chain(&s).map(|c| c.im.abs()).fold(0.0, f64::max);
    if imag > REALITY_TOL {
        return Err(hyp(format!("coefficient with imaginary part {imag:.3e}")));
    }
    let r_inf = p.last().unwrap().re;
    if !(r_inf > 0.0) {
        return Err(hyp(format!("R(∞) = {r_inf}")));
    }
    let rot = Complex64::from_polar(1.0, 3.0 * theta.theta);
    let m = p.len() - 1;
    let mut qn = vec![ZERO; 3 * m + 2];
    let mut qd = vec![ZERO; 3 * m + 1];
    for k in 0..=m {
        qn[3 * k + 1] = rot * p[k].re;
        qd[3 * k] = Complex64::new(s[k].re, 0.0);
    }
    // cancel common powers of z
    while qn.len() > 1 && qd.len() > 1 && qn[0] == ZERO && qd[0] == ZERO {
        qn.remove(0);
        qd.remove(0);
    }
    RationalMap::new(qn, qd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| c(*x, 0.0)).collect()
    }

    #[test]
    fn jet_of_polynomial() {
        // 1 + 2x + 3x^2 + 4x^3 + 5x^4 at x = 2
        let j = poly_jet(&r(&[1.0, 2.0, 3.0, 4.0, 5.0]), c(2.0, 0.0));
        assert_eq!(j.c[0], c(129.0, 0.0));
        assert_eq!(j.c[1], c(222.0, 0.0));
        assert_eq!(j.c[2], c(3.0 + 24.0 + 120.0, 0.0));
        assert_eq!(j.c[3], c(4.0 + 40.0, 0.0));
    }

    #[test]
    fn roots_of_cubic() {
        let roots = poly_roots(&r(&[-6.0, 11.0, -6.0, 1.0]));
        for (x, e) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn common_root_rejected() {
        // (z - 1)(z + 2) / (z - 1)
        let e = RationalMap::new(r(&[-2.0, 1.0, 1.0]), r(&[-1.0, 1.0])).unwrap_err();
        assert!(matches!(e, Error::InvalidInput(_)));
        assert!(RationalMap::new(r(&[1.0, 0.0]), r(&[1.0])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = RationalMap::new(vec![c(1.0, 2.0), c(0.0, 1.0)], r(&[3.0, 0.0, 1.0])).unwrap();
        let s = q.to_json();
        assert_eq!(s, r#"{"num":[[1.0,2.0],[0.0,1.0]],"den":[[3.0,0.0],[0.0,0.0],[1.0,0.0]]}"#);
        assert_eq!(RationalMap::from_json(&s).unwrap(), q);
        assert!(RationalMap::from_json(r#"{"num":[[1,0]],"den":[[0,0]]}"#).is_err());
    }

    #[test]
    fn build_q_examples() {
        let q = build_q(RaySpec::new(PI), &RationalMap::constant(c(2.0, 0.0))).unwrap();
        let z = c(0.7, -1.3);
        assert!((q.eval_value(z) + z * 2.0).norm() < 1e-14);

        let q = build_q(RaySpec::new(0.0), &RationalMap::constant(c(1.0, 0.0))).unwrap();
        assert!((q.eval_value(z) - z).norm() < 1e-15);

        let rr = RationalMap::new(r(&[1.0, 1.0]), r(&[0.0, 1.0])).unwrap();
        let q = build_q(RaySpec::new(PI / 3.0), &rr).unwrap();
        assert_eq!(q.den().len(), 3, "z factor cancelled");
        let want = -z - z.powi(-2);
        assert!((q.eval_value(z) - want).norm() < 1e-14);
    }

    #[test]
    fn build_q_hypotheses() {
        let neg = RationalMap::constant(c(-1.0, 0.0));
        let e = build_q(RaySpec::new(0.0), &neg).unwrap_err();
        assert!(e.to_string().contains("0 < R(∞) < ∞"));
        let cplx = RationalMap::constant(c(1.0, 1e-6));
        assert!(build_q(RaySpec::new(0.0), &cplx).is_err());
        let unequal = RationalMap::new(r(&[1.0]), r(&[1.0, 1.0])).unwrap();
        assert!(build_q(RaySpec::new(0.0), &unequal).is_err());
    }

    #[test]
    fn ray_normalization() {
        assert_eq!(RaySpec::new(-PI).theta(), PI);
        assert!((RaySpec::new(3.0 * PI / 2.0).theta() + PI / 2.0).abs() < 1e-15);
    }
}
