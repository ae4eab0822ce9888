//! Exponentially scaled Ai and Ai' for `|z| > SERIES_RADIUS`, `|arg z| <= 2pi/3`.
//!
//! Uses `Ai(z) = sqrt(z/3)/pi K_{1/3}(zeta)` and `Ai'(z) = -z/(pi sqrt 3) K_{2/3}(zeta)`
//! with `zeta = 2/3 z^{3/2}` and the Laplace-type integral
//!
//! ```text
//! K_nu(zeta) = sqrt(pi / (2 zeta)) e^{-zeta} / Gamma(nu + 1/2)
//!              * int_0^inf e^{-t} t^{nu - 1/2} (1 + t / (2 zeta))^{nu - 1/2} dt
//! ```
//!
//! The integration ray is rotated by `arg(zeta)/4` so that the branch point
//! `t = -2 zeta` stays at least `pi/4` away from it, then evaluated with
//! generalized Gauss-Laguerre rules.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::quad::GaussLaguerre;

pub const PRIMARY_NODES: usize = 40;
pub const CHECK_NODES: usize = 32;

struct Rules {
    primary: [GaussLaguerre; 2],
    check: [GaussLaguerre; 2],
}

fn rules() -> &'static Rules {
    static RULES: OnceLock<Rules> = OnceLock::new();
    RULES.get_or_init(|| Rules {
        primary: [
            GaussLaguerre::new(PRIMARY_NODES, -1.0 / 6.0),
            GaussLaguerre::new(PRIMARY_NODES, 1.0 / 6.0),
        ],
        check: [
            GaussLaguerre::new(CHECK_NODES, -1.0 / 6.0),
            GaussLaguerre::new(CHECK_NODES, 1.0 / 6.0),
        ],
    })
}

/// `zeta = 2/3 z^{3/2}` from polar coordinates, exact in the angle.
pub fn zeta_polar(r: f64, theta: f64) -> Complex64 {
    Complex64::from_polar(2.0 / 3.0 * r * r.sqrt(), 1.5 * theta)
}

/// `e^{zeta} K_nu(zeta) / sqrt(pi/(2 zeta))` for `nu = beta + 1/2`.
fn k_reduced(rule: &GaussLaguerre, beta: f64, zeta_abs: f64, zeta_arg: f64) -> Complex64 {
    let phi = zeta_arg / 4.0;
    let tan = phi.tan();
    let rot = Complex64::new(1.0, tan); // e^{i phi} / cos(phi)
    let inv_2zeta = Complex64::from_polar(0.5 / zeta_abs, -zeta_arg);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = rot * x;
        let osc = Complex64::from_polar(1.0, -x * tan);
        acc += osc * (Complex64::new(1.0, 0.0) + t * inv_2zeta).powf(beta) * *w;
    }
    acc * rot.powf(beta + 1.0)
}

/// Scaled pair `(e^{zeta} Ai(z), e^{zeta} Ai'(z))` and a truncation estimate
/// (difference between the primary and the check rule, times 4).
pub fn airy_scaled_polar(r: f64, theta: f64, with_estimate: bool) -> (Complex64, Complex64, f64) {
    debug_assert!(theta.abs() <= 2.0 * PI / 3.0 + 1e-12);
    let zeta_abs = 2.0 / 3.0 * r * r.sqrt();
    let zeta_arg = 1.5 * theta;
    let pref = Complex64::from_polar((PI / (2.0 * zeta_abs)).sqrt(), -zeta_arg / 2.0);
    let sqrt_z3 = Complex64::from_polar((r / 3.0).sqrt(), theta / 2.0);
    let z = Complex64::from_polar(r, theta);
    let eval = |set: &[GaussLaguerre; 2]| {
        let k13 = pref * k_reduced(&set[0], -1.0 / 6.0, zeta_abs, zeta_arg);
        let k23 = pref * k_reduced(&set[1], 1.0 / 6.0, zeta_abs, zeta_arg);
        (sqrt_z3 / PI * k13, -z / (PI * 3f64.sqrt()) * k23)
    };
    let rs = rules();
    let (ai, aip) = eval(&rs.primary);
    let est = if with_estimate {
        let (ai2, aip2) = eval(&rs.check);
        4.0 * (ai - ai2).norm().max((aip - aip2).norm())
    } else {
        0.0
    };
    (ai, aip, est)
}
