//! Projective monodromy of `w'' + (z R(z^3) / 2) w = 0` for the Elfving
//! family: trivial at the predicted coefficients, not after a perturbation.

use trirays::odesolve::{elfving_coefficients, elfving_q, monodromy, projective_defect, PathPlan};

fn main() -> trirays::Result<()> {
    let (a, p) = (1.0, 1.0);
    let (b, c) = elfving_coefficients(a, p)?;
    println!("b = {b}, c = {c}");
    for (label, cc) in [("predicted", c), ("perturbed", 1.01 * c)] {
        let q = elfving_q(a, b, cc, p)?;
        let half = q.scaled(num_complex::Complex64::new(0.5, 0.0));
        let lp = PathPlan::monodromy_loop(&half.poles());
        let m = monodromy(&half, &lp, 1e-11)?;
        println!("{label}: projective defect {:.2e}", projective_defect(&m)?);
    }
    Ok(())
}
