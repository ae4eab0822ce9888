//! Real-zero verdicts: zeros in a strip for a polynomial coefficient with
//! imaginary part, and in a sector for `w'' = z w`.

use std::f64::consts::PI;

use num_complex::Complex64;
use trirays::mero::RationalMap;
use trirays::odesolve::{sector_verdict, strip_verdict, TransportState};
use trirays::specfun::{AI0, AIP0_NEG};

fn main() -> trirays::Result<()> {
    let a = RationalMap::polynomial(vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)])?;
    let v = strip_verdict(&a, 0.3, TransportState::new(Complex64::new(0.0, 0.0), Complex64::new(0.6, -0.8)), (-4.0, 4.0))?;
    println!("strip: k = {}, p = {}, n = {}, k <= p + 1: {}", v.k, v.p, v.n, v.holds);

    let airy = RationalMap::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])?;
    let v = sector_verdict(&airy, 0.9 * PI / 3.0, 0.0, TransportState::real(AI0, AIP0_NEG), 9.5)?;
    println!("sector: {} zeros, all real: {}", v.zeros.len(), v.all_real);
    for z in &v.zeros {
        println!("  {z:.12}");
    }
    Ok(())
}
