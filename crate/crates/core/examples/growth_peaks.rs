//! Pólya peak search and order estimates on a sampled growth function.

use trirays::asymptotics::{order_bounds, polya_peaks, GrowthSample, PeakKind, PolyaOptions, DEFAULT_SCHEDULE};

fn main() -> trirays::Result<()> {
    // r^1.5 with a slow logarithmic wobble
    let radii = GrowthSample::geometric_radii(1.0, 1e4, 81);
    let g = GrowthSample::from_fn(&radii, |r| r.powf(1.5) * (2.0 + (r.ln() / 3.0).sin()))?;
    let o = order_bounds(&g)?;
    println!("lower order {:.4}, order {:.4}, slope {:.4} ± {:.4}", o.lower_order, o.order, o.slope, o.slope_stderr);
    for kind in [PeakKind::First, PeakKind::Second] {
        let rep = polya_peaks(&g, 1.5, kind, &DEFAULT_SCHEDULE, PolyaOptions::default())?;
        for l in &rep.levels {
            println!("{kind:?} eps {:<5} eligible {:>3} qualifying {:>3}", l.epsilon, l.eligible, l.qualifying.len());
        }
    }
    Ok(())
}
