//! Meromorphic functions whose zeros, poles and one-points lie asymptotically
//! on finitely many rays: Airy-type examples, Schwarzian ODEs, root catalogs,
//! growth diagnostics and harmonic-measure estimates.

pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod geom;
pub mod harmonic;
pub mod jet;
pub mod quad;
pub mod rootscan;
pub mod rng;
pub mod mero;
pub mod odesolve;
pub mod specfun;

pub use error::{Error, Result};
