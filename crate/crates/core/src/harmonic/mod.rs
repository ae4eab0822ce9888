//! Harmonic measure on planar domains bounded by segments and circular arcs:
//! walk-on-spheres estimates, the disk oracle, the slotted cap domain and
//! the half-plane representation fit.

mod domain;
mod fit;
mod walk;

pub use domain::{build_domain_h, LabeledPiece, PlanarDomain, CLOSURE_TOL, GAMMA};
pub use fit::{half_plane_fit, HalfPlaneFit, FAMILY_TOL};
pub use walk::{disk_arc_measure, walk_on_spheres, WalkEstimate, WalkOptions, MIN_CLEARANCE};
