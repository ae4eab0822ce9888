use serde::{Deserialize, Serialize};

use super::{target_label, RootRecord};
use crate::error::{Error, Result};

/// Sorted root moduli, one entry per unit of multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingFunction {
    pub label: String,
    pub moduli: Vec<f64>,
}

impl CountingFunction {
    pub fn from_moduli(label: impl Into<String>, mut moduli: Vec<f64>) -> Self {
        moduli.sort_by(f64::total_cmp);
        Self { label: label.into(), moduli }
    }

    /// `n(r)`: number of entries `<= r`.
    pub fn n(&self, r: f64) -> usize {
        self.moduli.partition_point(|m| *m <= r)
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }
}

pub fn counting(catalog: &[RootRecord]) -> CountingFunction {
    let label = catalog.first().map(|r| target_label(r.target)).unwrap_or_default();
    let moduli = catalog
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.location.norm(), r.multiplicity as usize))
        .collect();
    CountingFunction::from_moduli(label, moduli)
}

/// Multiset union, e.g. `n(r) = n(r,0) + n(r,1) + n(r,inf)`.
pub fn combined(parts: &[&CountingFunction]) -> CountingFunction {
    let label = parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join("+");
    let moduli = parts.iter().flat_map(|p| p.moduli.iter().copied()).collect();
    CountingFunction::from_moduli(label, moduli)
}

/// Least-squares slope of `log n(r)` against `log r` at the root moduli in
/// `[r_lo, r_hi]`, with its standard error.
pub fn growth_exponent(c: &CountingFunction, r_lo: f64, r_hi: f64) -> Result<(f64, f64)> {
    let pts: Vec<(f64, f64)> = c
        .moduli
        .iter()
        .filter(|m| **m >= r_lo && **m <= r_hi && **m > 0.0)
        .map(|m| (m.ln(), (c.n(*m) as f64).ln()))
        .collect();
    if pts.len() < 10 {
        return Err(Error::InvalidInput(format!(
            "{} roots in [{r_lo}, {r_hi}], need at least 10",
            pts.len()
        )));
    }
    Ok(linear_fit(&pts))
}

/// Slope and its standard error for `y = a + b x`.
pub(crate) fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let sse: f64 = pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum();
    let stderr = if pts.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { f64::INFINITY };
    (slope, stderr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let moduli: Vec<f64> = (1..=2000).map(|k| (k as f64).powf(2.0 / 3.0)).collect();
        let c = CountingFunction::from_moduli("0", moduli);
        let (slope, _) = growth_exponent(&c, 10.0, 150.0).unwrap();
        assert!((slope - 1.5).abs() < 0.01);
        assert_eq!(c.n(0.5), 0);
        assert!(c.n(3.0) <= c.n(4.0));
    }

    #[test]
    fn too_few_points() {
        let c = CountingFunction::from_moduli("0", vec![1.0, 2.0, 3.0]);
        assert!(growth_exponent(&c, 0.0, 10.0).is_err());
    }

    #[test]
    fn union_counts() {
        let a = CountingFunction::from_moduli("0", vec![1.0, 3.0]);
        let b = CountingFunction::from_moduli("1", vec![2.0]);
        let u = combined(&[&a, &b]);
        assert_eq!(u.n(2.5), 2);
        assert_eq!(u.label, "0+1");
    }
}
