//! Quality factors of resonance curves and thermal-radiation spectra.
//!
//! The crate locates peaks, N-dB crossing points, bandwidths, Q values,
//! 50%-area medians and in-band area fractions for the generalized thermal
//! family `X^M/(e^X + n)` and for Gaussian, Lorentzian, Voigt, series-RLC
//! and BVD line shapes.

// `!(x > 0.0)` is used on purpose throughout: it rejects NaN as well.
// Float special cases are matched with guards rather than literal patterns.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::redundant_guards)]

pub mod analysis;
pub mod circuits;
pub mod control;
pub mod error;
pub mod lineshapes;
pub mod physical;
pub mod roots;
pub mod specfun;

pub use analysis::{
    area_fraction, find_peak, full_report, level_points, median_point, q_factor, sample_curve,
    LevelSpec, ReciprocalView, ShapeAnalysis,
};
pub use circuits::{BvdParams, SeriesRlc};
pub use control::ConvergenceControl;
pub use error::{Error, Result};
pub use lineshapes::{LineShape, ShapeDomain};
pub use physical::{Axis, PhysicalContext};
