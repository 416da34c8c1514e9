//! Mapping the dimensionless abscissa `X = hν/kT = hc/λkT` to physical
//! frequency and wavelength.

use serde::{Deserialize, Serialize};

use crate::analysis::{find_peak, level_points, LevelSpec};
use crate::control::ConvergenceControl;
use crate::error::{Error, Result};
use crate::lineshapes::LineShape;

/// Planck constant, J·s (exact SI value).
pub const PLANCK_H: f64 = 6.626_070_15e-34;
/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN_K: f64 = 1.380_649e-23;
/// Speed of light in vacuum, m/s (exact SI value).
pub const LIGHT_C: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalContext {
    pub temperature_k: f64,
    pub h: f64,
    pub k_b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Frequency,
    Wavelength,
}

impl PhysicalContext {
    pub fn new(temperature_k: f64) -> Result<Self> {
        if !(temperature_k > 0.0 && temperature_k.is_finite()) {
            return Err(Error::domain(
                "PhysicalContext",
                format!("T = {temperature_k} K must be > 0"),
            ));
        }
        Ok(Self {
            temperature_k,
            h: PLANCK_H,
            k_b: BOLTZMANN_K,
            c: LIGHT_C,
        })
    }

    /// ν = X·k_B·T/h, in Hz.
    pub fn x_to_frequency(&self, x: f64) -> Result<f64> {
        positive("x_to_frequency", x)?;
        Ok(x * self.k_b * self.temperature_k / self.h)
    }

    /// λ = h·c/(X·k_B·T), in m.
    pub fn x_to_wavelength(&self, x: f64) -> Result<f64> {
        positive("x_to_wavelength", x)?;
        Ok(self.h * self.c / (x * self.k_b * self.temperature_k))
    }

    pub fn frequency_to_x(&self, nu_hz: f64) -> Result<f64> {
        positive("frequency_to_x", nu_hz)?;
        Ok(self.h * nu_hz / (self.k_b * self.temperature_k))
    }

    pub fn wavelength_to_x(&self, lambda_m: f64) -> Result<f64> {
        positive("wavelength_to_x", lambda_m)?;
        Ok(self.h * self.c / (lambda_m * self.k_b * self.temperature_k))
    }
}

fn positive(op: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("argument {v} must be > 0")))
    }
}

/// Q measured on a physical axis: `ν_p/Δν` or `λ_p/Δλ`.
///
/// The crossings are found in X and then mapped through the context, so
/// the temperature enters only through a common scale factor.
pub fn physical_q(
    shape: &LineShape,
    ctx: &PhysicalContext,
    level: LevelSpec,
    axis: Axis,
    ctrl: &ConvergenceControl,
) -> Result<f64> {
    if !matches!(shape, LineShape::GeneralizedThermal { .. }) {
        return Err(Error::domain(
            "physical_q",
            format!("{} is not a thermal spectrum", shape.name()),
        ));
    }
    let (x_peak, _) = find_peak(shape, ctrl)?;
    let (x_lo, x_hi) = level_points(shape, level, ctrl)?;
    match axis {
        Axis::Frequency => {
            let peak = ctx.x_to_frequency(x_peak)?;
            Ok(peak / (ctx.x_to_frequency(x_hi)? - ctx.x_to_frequency(x_lo)?))
        }
        Axis::Wavelength => {
            let peak = ctx.x_to_wavelength(x_peak)?;
            Ok(peak / (ctx.x_to_wavelength(x_lo)? - ctx.x_to_wavelength(x_hi)?))
        }
    }
}

/// Wien displacement product `λ_p·T = h·c/(X_p·k_B)` for the peak of the
/// M = 5 Planck curve, computed rather than stored.
pub fn wien_displacement_constant(ctrl: &ConvergenceControl) -> Result<f64> {
    let (x_peak, _) = find_peak(&LineShape::GeneralizedThermal { m: 5.0, n: -1.0 }, ctrl)?;
    Ok(PLANCK_H * LIGHT_C / (x_peak * BOLTZMANN_K))
}
