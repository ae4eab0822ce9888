//! Sequence averages, covering arcs of unit-modulus points, Pólya peaks and
//! order estimates for growth data.

mod arcs;
mod growth;
mod sequences;

pub use arcs::{
    sector_sweep, arc_bound_check, minimal_arc, sector_search, Arc, ArcBoundCheck, SweepRow, UnitTuple, SAMPLE_MARGIN,
};
pub use growth::{
    order_bounds, polya_peaks, GrowthSample, OrderBounds, Peak, PeakKind, PeakLevel, PeakReport, PolyaOptions,
    DEFAULT_SCHEDULE,
};
pub use sequences::{average, average_complex, limsup_product_check, window_maxima, windowed_limsup, Average, LimsupCheck};
