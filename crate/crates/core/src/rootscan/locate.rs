use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{contour_moments, count_with_nudges, rounded_count, Moments, Region};
use crate::error::{Error, Result};
use crate::mero::{MeroMap, Target};

/// Boxes below this diameter are reported as multiplicity clusters.
pub const MIN_BOX: f64 = 1e-10;
const NEWTON_STEPS: usize = 50;
/// Split positions tried in turn; off-center so that roots on symmetric
/// grids do not land on cut lines.
const SPLIT_FRACS: [f64; 5] = [0.5137, 0.4629, 0.5731, 0.4183, 0.6311];
/// Boxes with at least this many roots split their children in parallel.
const PARALLEL_MIN: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub location: Complex64,
    pub multiplicity: u32,
    pub target: Target,
    /// `|f - a|` at the location (`|1/f|` for `a = inf`), or the box
    /// diameter for an unrefined record.
    pub refined_residual: f64,
    /// Newton did not converge; `location` is the box center.
    pub unrefined: bool,
}

impl RootRecord {
    pub fn exact(location: Complex64, target: Target) -> Self {
        Self { location, multiplicity: 1, target, refined_residual: 0.0, unrefined: false }
    }
}

/// All `a`-points of `f` in `region`, by recursive bisection and Newton.
pub fn locate_roots<M: MeroMap + ?Sized>(f: &M, region: &Region, a: Target, tol: f64) -> Result<Vec<RootRecord>> {
    let (reg, m, n) = count_with_nudges(f, region, a)?;
    let mut out = Vec::new();
    descend(f, &reg, a, tol, m, n, &mut out)?;
    Ok(out)
}

/// [`locate_roots`] over several disjoint regions in parallel, results in
/// region order.
pub fn locate_roots_in<M: MeroMap + ?Sized>(f: &M, regions: &[Region], a: Target, tol: f64) -> Result<Vec<RootRecord>> {
    let parts: Vec<Result<Vec<RootRecord>>> = regions.par_iter().map(|r| locate_roots(f, r, a, tol)).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn descend<M: MeroMap + ?Sized>(
    f: &M,
    reg: &Region,
    a: Target,
    tol: f64,
    m: Moments,
    n: u64,
    out: &mut Vec<RootRecord>,
) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        out.push(refine(f, reg, a, tol, m.m1)?);
        return Ok(());
    }
    if reg.diameter() < MIN_BOX {
        let loc = m.m1 / n as f64;
        out.push(RootRecord {
            location: loc,
            multiplicity: n as u32,
            target: a,
            refined_residual: residual(f, loc, a)?,
            unrefined: false,
        });
        return Ok(());
    }
    let mut last_err = None;
    for frac in SPLIT_FRACS {
        let (r1, r2) = reg.split(frac);
        let counted = |r: &Region| -> Result<(Moments, u64)> {
            let m = contour_moments(f, r, a)?;
            Ok((m, rounded_count(&m)?))
        };
        let (c1, c2) = if n >= PARALLEL_MIN { rayon::join(|| counted(&r1), || counted(&r2)) } else { (counted(&r1), counted(&r2)) };
        match (c1, c2) {
            (Ok((m1, n1)), Ok((m2, n2))) if n1 + n2 == n => {
                if n >= PARALLEL_MIN {
                    let (mut o1, mut o2) = (Vec::new(), Vec::new());
                    let (e1, e2) = rayon::join(
                        || descend(f, &r1, a, tol, m1, n1, &mut o1),
                        || descend(f, &r2, a, tol, m2, n2, &mut o2),
                    );
                    e1?;
                    e2?;
                    out.extend(o1);
                    out.extend(o2);
                } else {
                    descend(f, &r1, a, tol, m1, n1, out)?;
                    descend(f, &r2, a, tol, m2, n2, out)?;
                }
                return Ok(());
            }
            (Ok((_, n1)), Ok((_, n2))) => {
                last_err = Some(Error::UnresolvedContour { residual: (n1 + n2) as f64 - n as f64 })
            }
            (Err(e), _) | (_, Err(e)) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(Error::UnresolvedContour { residual: f64::NAN }))
}

fn residual<M: MeroMap + ?Sized>(f: &M, z: Complex64, a: Target) -> Result<f64> {
    let v = f.eval(z)?;
    Ok(match a {
        None => (-v.log_abs()).exp(),
        Some(a) => (f.a_point(z, Some(a))?.log_abs_value() - v.den.log_abs_value()).exp(),
    })
}

fn refine<M: MeroMap + ?Sized>(f: &M, reg: &Region, a: Target, tol: f64, seed: Complex64) -> Result<RootRecord> {
    let diam = reg.diameter();
    let mut z = seed;
    let mut converged = false;
    for _ in 0..NEWTON_STEPS {
        let g = f.a_point(z, a)?.jet;
        if g.c[0] == Complex64::new(0.0, 0.0) {
            converged = true;
            break;
        }
        let step = g.c[0] / g.c[1];
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 4.0 * f64::EPSILON * z.norm().max(diam) {
            converged = true;
            break;
        }
    }
    let inside = (z - seed).norm() <= diam && reg.dilate(1e-6).contains(z);
    let res = if converged && inside { residual(f, z, a)? } else { f64::INFINITY };
    if converged && inside && res <= tol.max(1e-8 * scale_at(f, z)?) {
        Ok(RootRecord { location: z, multiplicity: 1, target: a, refined_residual: res, unrefined: false })
    } else {
        Ok(RootRecord { location: reg.midpoint(), multiplicity: 1, target: a, refined_residual: diam, unrefined: true })
    }
}

/// Local magnitude used to judge residuals: `max(1, |f'| * 1e-8)`.
fn scale_at<M: MeroMap + ?Sized>(f: &M, z: Complex64) -> Result<f64> {
    let ch = f.chart(z)?;
    Ok(1.0f64.max(ch.jet.c[1].norm()))
}
