//! Airy function values, zeros and the connection identity.

use num_complex::Complex64;
use trirays::specfun::{airy, airy_connection_residual, airy_zero, airy_zero_asymptotic};

fn main() -> trirays::Result<()> {
    for z in [Complex64::new(0.0, 0.0), Complex64::new(-2.5, 1.0), Complex64::new(8.0, -6.0)] {
        let v = airy(z)?;
        println!("Ai({z}) = {:.15e}  Ai' = {:.15e}  est err {:.1e}", v.ai, v.ai_prime, v.est_abs_error);
        println!("  connection residual {:.1e}", airy_connection_residual(z)?);
    }
    for k in [1, 2, 10, 1000] {
        println!("a_{k} = {:.15}  (asymptotic {:.15})", airy_zero(k)?, airy_zero_asymptotic(k));
    }
    Ok(())
}
