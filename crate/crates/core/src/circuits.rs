//! Series RLC and Butterworth–Van Dyke (BVD) circuit relations, plus the
//! ring-down and restitution estimators of Q.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::{find_peak, level_points, LevelSpec};
use crate::control::ConvergenceControl;
use crate::error::{Error, Result};
use crate::lineshapes::LineShape;

/// Series R-L-C with element values in ohms, henries and farads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesRlc {
    pub r_ohms: f64,
    pub l_henry: f64,
    pub c_farad: f64,
}

impl SeriesRlc {
    pub fn new(r_ohms: f64, l_henry: f64, c_farad: f64) -> Result<Self> {
        for (name, v) in [("R", r_ohms), ("L", l_henry), ("C", c_farad)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(
                    "SeriesRlc",
                    format!("{name} = {v} must be > 0"),
                ));
            }
        }
        Ok(Self {
            r_ohms,
            l_henry,
            c_farad,
        })
    }

    /// ω₁ with `L·C·ω₁² = 1`, in rad/s.
    pub fn resonance_angular_frequency(&self) -> f64 {
        1.0 / (self.l_henry * self.c_farad).sqrt()
    }

    /// f₁ = ω₁/2π in Hz.
    pub fn resonance_frequency(&self) -> f64 {
        self.resonance_angular_frequency() / (2.0 * PI)
    }

    /// Normalized frequency Ω = ω·√(LC).
    pub fn normalized_frequency(&self, omega_rad_s: f64) -> f64 {
        omega_rad_s * (self.l_henry * self.c_farad).sqrt()
    }
}

/// Normalized BVD description: motional-branch Q and `r = C0/C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BvdParams {
    pub q: f64,
    pub r_ratio: f64,
}

impl BvdParams {
    pub fn new(q: f64, r_ratio: f64) -> Result<Self> {
        let p = Self { q, r_ratio };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(Error::domain(
                "BvdParams",
                format!("q = {} must be > 0", self.q),
            ));
        }
        if !(self.r_ratio >= 0.0 && self.r_ratio.is_finite()) {
            return Err(Error::domain(
                "BvdParams",
                format!("r = {} must be >= 0", self.r_ratio),
            ));
        }
        Ok(())
    }
}

/// `Q = (1/R)·√(L/C)`.
pub fn q_from_elements(rlc: &SeriesRlc) -> Result<f64> {
    let rlc = SeriesRlc::new(rlc.r_ohms, rlc.l_henry, rlc.c_farad)?;
    Ok((rlc.l_henry / rlc.c_farad).sqrt() / rlc.r_ohms)
}

/// Closed-form half-power frequencies `Ω± = √(1 + 1/(2Q)²) ± 1/(2Q)`.
///
/// The lower root is formed as `1/Ω+` so that `Ω+·Ω- = 1` holds to
/// rounding even for very large Q.
pub fn half_power_frequencies(q: f64) -> Result<(f64, f64)> {
    level_frequencies(q, 0.5)
}

/// Roots of `g(Ω) = α` for the series RLC conductance.
pub fn level_frequencies(q: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::domain(
            "half_power_frequencies",
            format!("q = {q} must be > 0"),
        ));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(
            "half_power_frequencies",
            format!("alpha = {alpha} outside (0, 1)"),
        ));
    }
    let a = (1.0 / alpha - 1.0).sqrt() / (2.0 * q);
    let upper = a.hypot(1.0) + a;
    Ok((1.0 / upper, upper))
}

/// `Q = π/δ` for logarithmic decrement δ.
pub fn q_from_log_decrement(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::domain(
            "q_from_log_decrement",
            format!("delta = {delta} must be > 0"),
        ));
    }
    Ok(PI / delta)
}

/// `Q = (-π/2)/ln(C_R)` for a coefficient of restitution in (0, 1).
pub fn q_from_restitution(c_r: f64) -> Result<f64> {
    if !(c_r > 0.0 && c_r < 1.0) {
        return Err(Error::domain(
            "q_from_restitution",
            format!("C_R = {c_r} outside (0, 1)"),
        ));
    }
    Ok(-0.5 * PI / c_r.ln())
}

/// Normalized admittance `Y·R = 1/[1 + jQ(Ω - 1/Ω)] + jΩr/Q`.
pub fn evaluate_bvd_admittance(params: &BvdParams, omega: f64) -> Result<Complex64> {
    params.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(
            "evaluate_bvd_admittance",
            format!("omega = {omega} must be > 0"),
        ));
    }
    Ok(bvd_admittance(params.q, params.r_ratio, omega))
}

/// `|Y·R|`.
pub fn bvd_admittance_magnitude(params: &BvdParams, omega: f64) -> Result<f64> {
    evaluate_bvd_admittance(params, omega).map(|y| y.norm())
}

pub(crate) fn bvd_admittance(q: f64, r: f64, omega: f64) -> Complex64 {
    let motional = Complex64::new(1.0, q * (omega - 1.0 / omega)).inv();
    motional + Complex64::new(0.0, omega * r / q)
}

/// Level crossings of the BVD admittance magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BvdBandwidth {
    pub omega_max: f64,
    pub magnitude_max: f64,
    pub omega_lower: f64,
    pub omega_upper: f64,
    pub band: f64,
    /// `Ω_max / band`, the naive f/Δf reading of Q.
    pub centered_q_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BvdResponse {
    Resonant(BvdBandwidth),
    /// |Y·R| has no interior maximum in (0.5, 1.5).
    NoResonantPeak,
    /// The magnitude never falls to the level on at least one side.
    CrossingsAbsent {
        omega_max: f64,
        magnitude_max: f64,
    },
}

/// Bandwidth of `|Y·R|` at a power fraction α (so the magnitude crossings
/// sit at `√α·|Y|max`), and the centered Q estimate it implies.
pub fn bvd_magnitude_bandwidth(
    params: &BvdParams,
    level: LevelSpec,
    ctrl: &ConvergenceControl,
) -> Result<BvdResponse> {
    params.validate()?;
    let shape = LineShape::BvdAdmittanceMagnitude {
        q: params.q,
        r: params.r_ratio,
    };
    let (omega_max, power_max) = match find_peak(&shape, ctrl) {
        Ok(p) => p,
        Err(e) if matches!(e.root_cause(), Error::NoResonantPeak { .. }) => {
            return Ok(BvdResponse::NoResonantPeak)
        }
        Err(e) => return Err(e),
    };
    let magnitude_max = power_max.sqrt();
    match level_points(&shape, level, ctrl) {
        Ok((lo, hi)) => {
            let band = hi - lo;
            Ok(BvdResponse::Resonant(BvdBandwidth {
                omega_max,
                magnitude_max,
                omega_lower: lo,
                omega_upper: hi,
                band,
                centered_q_estimate: omega_max / band,
            }))
        }
        Err(e) if matches!(e.root_cause(), Error::LevelNotCrossed { .. }) => {
            Ok(BvdResponse::CrossingsAbsent {
                omega_max,
                magnitude_max,
            })
        }
        Err(e) => Err(e),
    }
}
