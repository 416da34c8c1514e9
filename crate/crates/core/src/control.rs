use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and iteration cap shared by every iterative routine.
///
/// `max_iter` bounds Newton/Halley/Brent iterations and the number of
/// panels the adaptive integrator may hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for ConvergenceControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 1e-300,
            max_iter: 200,
        }
    }
}

impl ConvergenceControl {
    pub fn new(rel_tol: f64, abs_tol: f64, max_iter: usize) -> Result<Self> {
        let ctrl = Self {
            rel_tol,
            abs_tol,
            max_iter,
        };
        ctrl.validate()?;
        Ok(ctrl)
    }

    /// Defaults with a different relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, Self::default().abs_tol, Self::default().max_iter)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain(
                "ConvergenceControl",
                format!("rel_tol must be > 0, got {}", self.rel_tol),
            ));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::domain(
                "ConvergenceControl",
                format!("abs_tol must be >= 0, got {}", self.abs_tol),
            ));
        }
        if self.max_iter < 1 {
            return Err(Error::domain("ConvergenceControl", "max_iter must be >= 1"));
        }
        Ok(())
    }

    /// Acceptance threshold for an estimate of magnitude `value`.
    pub fn threshold(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
