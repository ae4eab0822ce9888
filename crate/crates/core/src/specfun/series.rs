//! Maclaurin expansion of Ai about the origin.

use num_complex::Complex64;

use crate::jet::Jet3;

/// Ai(0).
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// -Ai'(0).
pub const AIP0_NEG: f64 = 0.258_819_403_792_806_8;

const MAX_TERMS: usize = 200;
/// Safety factor applied to the first omitted term.
pub const ERROR_SAFETY: f64 = 4.0;

/// Jet of Ai at `z` from the termwise-differentiated power series, together
/// with the truncation estimate for the value and first derivative.
pub fn airy_series_jet(z: Complex64) -> (Jet3, f64) {
    let z3 = z * z * z;
    // f-series: sum f_k z^{3k}; g-series: sum g_k z^{3k+1}
    let mut fk = 1.0f64;
    let mut gk = 1.0f64;
    let mut d = [Complex64::new(0.0, 0.0); 4];
    let mut z3k = Complex64::new(1.0, 0.0); // z^{3k}
    let mut omitted = 0.0;
    for k in 0..MAX_TERMS {
        let n0 = 3 * k;
        let n1 = 3 * k + 1;
        let a0 = AI0 * fk;
        let a1 = -AIP0_NEG * gk;
        let mut step = [Complex64::new(0.0, 0.0); 4];
        for (j, s) in step.iter_mut().enumerate() {
            *s += a0 * falling(n0, j) * pow_shift(z, z3k, n0, j);
            *s += a1 * falling(n1, j) * pow_shift(z, z3k, n1, j);
        }
        for j in 0..4 {
            d[j] += step[j];
        }
        let mag = step[0].norm() + step[1].norm();
        let total = d[0].norm() + d[1].norm();
        if k > 2 && mag <= 1e-18 * total.max(f64::MIN_POSITIVE) {
            // next term as the truncation estimate
            let fk1 = fk / (((3 * k + 2) * (3 * k + 3)) as f64);
            let gk1 = gk / (((3 * k + 3) * (3 * k + 4)) as f64);
            let r = z.norm();
            let m = 3 * (k + 1);
            omitted = AI0 * fk1 * r.powi(m as i32) * (1.0 + m as f64 / r.max(1e-300))
                + AIP0_NEG * gk1 * r.powi(m as i32 + 1) * (1.0 + (m + 1) as f64 / r.max(1e-300));
            if r == 0.0 {
                omitted = 0.0;
            }
            break;
        }
        fk /= ((3 * k + 2) * (3 * k + 3)) as f64;
        gk /= ((3 * k + 3) * (3 * k + 4)) as f64;
        z3k *= z3;
    }
    (Jet3::from_derivatives(d), ERROR_SAFETY * omitted)
}

fn falling(n: usize, j: usize) -> f64 {
    (0..j).map(|i| n as f64 - i as f64).product()
}

/// `z^{n-j}` given `z^{3k}` with `n = 3k` or `3k+1`; zero when `n < j`.
fn pow_shift(z: Complex64, z3k: Complex64, n: usize, j: usize) -> Complex64 {
    if n < j {
        Complex64::new(0.0, 0.0)
    } else if z.norm() == 0.0 {
        Complex64::new(if n == j { 1.0 } else { 0.0 }, 0.0)
    } else {
        z3k * z.powi((n % 3) as i32 - j as i32)
    }
}
