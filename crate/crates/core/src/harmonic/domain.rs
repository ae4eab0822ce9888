use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PathPiece;

/// Endpoint chaining tolerance, relative to `max(1, diameter)`.
pub const CLOSURE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledPiece {
    #[serde(flatten)]
    pub piece: PathPiece,
    pub label: String,
}

/// Jordan domain bounded by a closed chain of labeled segments and arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDomain", into = "RawDomain")]
pub struct PlanarDomain {
    pieces: Vec<LabeledPiece>,
    diameter: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawDomain {
    pieces: Vec<LabeledPiece>,
}

impl TryFrom<RawDomain> for PlanarDomain {
    type Error = Error;
    fn try_from(r: RawDomain) -> Result<Self> {
        PlanarDomain::new(r.pieces)
    }
}

impl From<PlanarDomain> for RawDomain {
    fn from(d: PlanarDomain) -> Self {
        RawDomain { pieces: d.pieces }
    }
}

impl PlanarDomain {
    /// Checks that consecutive pieces chain up and the last returns to the
    /// first.
    pub fn new(pieces: Vec<LabeledPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput("domain has no boundary pieces".into()));
        }
        for (i, p) in pieces.iter().enumerate() {
            let ok = match p.piece {
                PathPiece::Segment { from, to } => from != to && [from, to].iter().all(|z| z.re.is_finite() && z.im.is_finite()),
                PathPiece::Arc { center, radius, start, sweep } => {
                    radius > 0.0 && sweep != 0.0 && [center.re, center.im, radius, start, sweep].iter().all(|x| x.is_finite())
                }
            };
            if !ok {
                return Err(Error::InvalidInput(format!("piece {i} ({}) is degenerate", p.label)));
            }
        }
        let diameter = bounding_diameter(&pieces);
        let tol = CLOSURE_TOL * diameter.max(1.0);
        for i in 0..pieces.len() {
            let next = &pieces[(i + 1) % pieces.len()];
            let gap = (pieces[i].piece.end() - next.piece.start()).norm();
            if gap > tol {
                return Err(Error::InvalidInput(format!(
                    "piece {i} ({}) ends {gap:e} away from the start of {}",
                    pieces[i].label, next.label
                )));
            }
        }
        Ok(Self { pieces, diameter })
    }

    pub fn pieces(&self) -> &[LabeledPiece] {
        &self.pieces
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn labels(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self.pieces.iter().map(|p| p.label.as_str()).collect();
        v.dedup();
        v
    }

    /// Distance to the boundary and the index of the nearest piece.
    pub fn nearest(&self, z: Complex64) -> (f64, usize) {
        let mut best = (f64::INFINITY, 0);
        for (i, p) in self.pieces.iter().enumerate() {
            let d = p.piece.distance_to(z);
            if d < best.0 {
                best = (d, i);
            }
        }
        best
    }

    /// Even-odd test with a ray towards `+inf`.
    pub fn contains(&self, z: Complex64) -> bool {
        let mut crossings = 0usize;
        for p in &self.pieces {
            crossings += match p.piece {
                PathPiece::Segment { from, to } => {
                    if (from.im > z.im) != (to.im > z.im) {
                        let x = from.re + (z.im - from.im) / (to.im - from.im) * (to.re - from.re);
                        usize::from(x > z.re)
                    } else {
                        0
                    }
                }
                PathPiece::Arc { center, radius, start, sweep } => arc_crossings(center, radius, start, sweep, z),
            };
        }
        crossings % 2 == 1
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("domain JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain serializes")
    }

    /// Unit disk split into arcs at the given increasing angles; the arc
    /// starting at `cuts[i]` is labeled `labels[i]`.
    pub fn disk_arcs(cuts: &[f64], labels: &[&str]) -> Result<Self> {
        if cuts.is_empty() || cuts.len() != labels.len() || cuts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("cuts must increase and match labels".into()));
        }
        if cuts[cuts.len() - 1] - cuts[0] >= 2.0 * PI {
            return Err(Error::InvalidInput("cuts span a full turn".into()));
        }
        let n = cuts.len();
        let pieces = (0..n)
            .map(|i| {
                let end = if i + 1 < n { cuts[i + 1] } else { cuts[0] + 2.0 * PI };
                LabeledPiece {
                    piece: PathPiece::Arc { center: Complex64::new(0.0, 0.0), radius: 1.0, start: cuts[i], sweep: end - cuts[i] },
                    label: labels[i].to_string(),
                }
            })
            .collect();
        Self::new(pieces)
    }
}

fn arc_crossings(center: Complex64, radius: f64, start: f64, sweep: f64, z: Complex64) -> usize {
    let dy = z.im - center.im;
    if dy.abs() >= radius {
        return 0;
    }
    let dx = (radius * radius - dy * dy).sqrt();
    let (a0, a1) = if sweep >= 0.0 { (start, start + sweep) } else { (start + sweep, start) };
    [center.re - dx, center.re + dx]
        .iter()
        .filter(|&&x| x > z.re)
        .filter(|&&x| {
            let t = dy.atan2(x - center.re);
            sweep.abs() >= 2.0 * PI || a0 + (t - a0).rem_euclid(2.0 * PI) < a1
        })
        .count()
}

fn bounding_diameter(pieces: &[LabeledPiece]) -> f64 {
    let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in pieces {
        let n = match p.piece {
            PathPiece::Segment { .. } => 1,
            PathPiece::Arc { .. } => 64,
        };
        let len = p.piece.length();
        for k in 0..=n {
            let z = p.piece.at(len * k as f64 / n as f64).0;
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
    }
    (hi - lo).norm()
}

/// Label of the bottom segment of the slot in [`build_domain_h`].
pub const GAMMA: &str = "gamma";

/// Cap `{|z| < 5 eps, Im z > eps}` joined to the slot
/// `{2 eps < Re z < 3 eps, -eps < Im z <= eps}`, traversed counterclockwise.
/// The outer arc is split at `5 i eps`, giving seven pieces.
pub fn build_domain_h(eps: f64) -> Result<PlanarDomain> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon = {eps} must be positive")));
    }
    let c = |x: f64, y: f64| Complex64::new(x * eps, y * eps);
    let s24 = 24f64.sqrt();
    let t0 = 1f64.atan2(s24);
    let seg = |from, to, label: &str| LabeledPiece { piece: PathPiece::Segment { from, to }, label: label.into() };
    let arc = |start: f64, sweep: f64, label: &str| LabeledPiece {
        piece: PathPiece::Arc { center: c(0.0, 0.0), radius: 5.0 * eps, start, sweep },
        label: label.into(),
    };
    PlanarDomain::new(vec![
        seg(c(-s24, 1.0), c(2.0, 1.0), "top_left"),
        seg(c(2.0, 1.0), c(2.0, -1.0), "slot_left"),
        seg(c(2.0, -1.0), c(3.0, -1.0), GAMMA),
        seg(c(3.0, -1.0), c(3.0, 1.0), "slot_right"),
        seg(c(3.0, 1.0), c(s24, 1.0), "top_right"),
        arc(t0, PI / 2.0 - t0, "arc_right"),
        arc(PI / 2.0, PI / 2.0 - t0, "arc_left"),
    ])
}
