//! Solve `S(f) = q` through `w'' + (q/2) w = 0` and check the result.

use num_complex::Complex64;
use trirays::mero::{mobius_apply, mobius_invariance_residual, schwarzian, Mobius, RationalMap};
use trirays::odesolve::{solve_schwarzian, TransportState};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> trirays::Result<()> {
    let q = RationalMap::polynomial(vec![c(0.0, 0.0), c(-2.0, 0.0)])?;
    let basis = [TransportState::real(0.0, 1.0), TransportState::real(1.0, 0.0)];
    let f = solve_schwarzian(&q, c(0.0, 0.0), basis, 1e-11)?.with_wronskian_hint();
    for z in [c(0.7, 0.2), c(-1.5, 1.0), c(2.0, -2.5)] {
        let s = schwarzian(&f, z)?;
        println!("S(f)({z}) = {s:.10}  expected {:.10}", q.eval_value(z));
    }
    let l = Mobius::new(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0))?;
    let z = c(1.2, 0.4);
    println!("Möbius invariance residual {:.1e}", mobius_invariance_residual(l, &f, z)?);
    println!("L(f)({z}) = {:.10}", schwarzian(&mobius_apply(l, &f), z)?);
    Ok(())
}
