//! Arcs through `1, a p^n, b q^n` and averages of `Re(a p^n + b q^n)`.

use num_complex::Complex64;
use trirays::asymptotics::{arc_bound_check, limsup_product_check, minimal_arc, sector_search, sector_sweep, UnitTuple};

fn main() -> trirays::Result<()> {
    let tuples = UnitTuple::seeded(42, 200);
    let rows = sector_sweep(&tuples, 10_000)?;
    let worst = rows.iter().max_by(|a, b| a.delta.total_cmp(&b.delta)).expect("nonempty");
    println!("200 tuples: worst opening {:.4} at index {} (n = {})", worst.delta, worst.index, worst.best_n);

    let t = UnitTuple::exceptional(0.3, 1.0)?;
    let (n, d) = sector_search(&t, 10_000)?;
    println!("symmetric tuple: opening {d:.6} at n = {n}");

    let e = |t: f64| Complex64::from_polar(1.0, t);
    let arc = minimal_arc(&[e(0.0), e(0.5), e(-0.4)])?;
    println!("minimal arc length {:.4}", arc.length);
    let c = arc_bound_check(e(0.5), e(-0.4))?;
    println!("arc {:.4} <= {:.4}: {}  (sharp bound {:.4})", c.arc_len, c.bound, c.holds, c.sharp_bound);

    let x = tuples[0].sequence(20_000);
    let l = limsup_product_check(&x)?;
    println!("limsup x * limsup |x| = {:.4} vs av(x^2) = {:.4}: {}", l.lhs, l.rhs, l.holds);
    Ok(())
}
