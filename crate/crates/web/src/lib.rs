//! WebAssembly entry points for the static demo page in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string: either the
//! payload, or `{"error": "..."}`. Keeping the boundary to strings means the
//! same functions run natively under `cargo test`.

use qshape::circuits::{bvd_magnitude_bandwidth, level_frequencies, BvdParams, BvdResponse};
use qshape::{
    full_report, level_points, sample_curve, ConvergenceControl, LevelSpec, LineShape,
    ShapeAnalysis,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 2000;

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v),
        Err(error) => serde_json::to_string(&Failure { error }),
    }
    .unwrap_or_else(|e| format!("{{\"error\":\"serialization failed: {e}\"}}"))
}

fn points(requested: u32) -> usize {
    (requested as usize).clamp(16, MAX_POINTS)
}

fn level(alpha: f64) -> Result<LevelSpec, String> {
    LevelSpec::fraction_of(alpha).map_err(|e| e.to_string())
}

fn curve(
    shape: &LineShape,
    lo: f64,
    hi: f64,
    count: usize,
    ctrl: &ConvergenceControl,
) -> Result<Vec<[f64; 2]>, String> {
    let pts = sample_curve(shape, lo, hi, count, false, ctrl).map_err(|e| e.to_string())?;
    Ok(pts.into_iter().map(|(x, f)| [x, f]).collect())
}

#[derive(Serialize)]
struct ThermalView {
    curve: Vec<[f64; 2]>,
    report: ShapeAnalysis,
}

/// Curve and full report for `X^M/(e^X + n)` at crossing level `alpha`.
#[wasm_bindgen]
pub fn thermal_explorer(m: f64, n: f64, alpha: f64, count: u32) -> String {
    respond((|| {
        let ctrl = ConvergenceControl::default();
        let shape = LineShape::thermal(m, n).map_err(|e| e.to_string())?;
        let report = full_report(&shape, level(alpha)?, &ctrl).map_err(|e| e.to_string())?;
        let hi = (2.5 * report.x_upper).max(10.0);
        let curve = curve(&shape, hi * 1e-4, hi, points(count), &ctrl)?;
        Ok(ThermalView { curve, report })
    })())
}

#[derive(Serialize)]
struct ResonanceView {
    /// `[Ω, |Y·R|²]`; equals the RLC conductance when r = 0.
    curve: Vec<[f64; 2]>,
    rlc_lower: f64,
    rlc_upper: f64,
    rlc_band: f64,
    bvd: BvdResponse,
}

/// Series-RLC resonance with an optional shunt capacitance ratio `r`.
#[wasm_bindgen]
pub fn resonance_explorer(q: f64, r: f64, alpha: f64, count: u32) -> String {
    respond((|| {
        let ctrl = ConvergenceControl::default();
        let params = BvdParams::new(q, r).map_err(|e| e.to_string())?;
        let level = level(alpha)?;
        let (rlc_lower, rlc_upper) = level_frequencies(q, alpha).map_err(|e| e.to_string())?;
        let bvd = bvd_magnitude_bandwidth(&params, level, &ctrl).map_err(|e| e.to_string())?;
        // wide enough to show the band, and the antiresonance when there is one
        let half = (8.0 * (rlc_upper - rlc_lower)).max(0.05);
        let mut hi = (1.0 + half).min(4.0);
        if r > 0.0 {
            hi = hi.max((1.15 * (1.0 + 1.0 / r).sqrt()).min(4.0));
        }
        let lo = (1.0 - half).max(0.02);
        let shape = LineShape::BvdAdmittanceMagnitude { q, r };
        Ok(ResonanceView {
            curve: curve(&shape, lo, hi, points(count), &ctrl)?,
            rlc_lower,
            rlc_upper,
            rlc_band: rlc_upper - rlc_lower,
            bvd,
        })
    })())
}

#[derive(Serialize)]
struct VoigtView {
    curve: Vec<[f64; 2]>,
    fwhm: f64,
    /// `0.5346·f_L + √(0.2166·f_L² + f_G²)`, for comparison.
    fwhm_approximation: f64,
    gaussian_fwhm: f64,
    lorentzian_fwhm: f64,
}

/// Peak-normalized Voigt profile for a Lorentzian/Gaussian width ratio γ/σ.
#[wasm_bindgen]
pub fn voigt_explorer(gamma_over_sigma: f64, count: u32) -> String {
    respond((|| {
        let ctrl = ConvergenceControl::default();
        let shape = LineShape::Voigt { gamma_over_sigma };
        let (lo, hi) =
            level_points(&shape, LevelSpec::half_power(), &ctrl).map_err(|e| e.to_string())?;
        let fwhm = hi - lo;
        let f_g = 2.0 * (2.0 * std::f64::consts::LN_2).sqrt();
        let f_l = 2.0 * gamma_over_sigma;
        let span = 3.0 * fwhm;
        Ok(VoigtView {
            curve: curve(&shape, -span, span, points(count), &ctrl)?,
            fwhm,
            fwhm_approximation: 0.5346 * f_l + (0.2166 * f_l * f_l + f_g * f_g).sqrt(),
            gaussian_fwhm: f_g,
            lorentzian_fwhm: f_l,
        })
    })())
}
