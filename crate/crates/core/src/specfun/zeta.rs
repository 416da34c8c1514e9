use std::f64::consts::LN_2;

use crate::control::ConvergenceControl;
use crate::error::{Error, Result};

/// Hard cap on terms for the plain power series of `Li_s(z)`, `0 < z < 1`.
const SERIES_TERM_CAP: usize = 50_000_000;

/// `Σ_{k≥0} (-1)^k a_k` for a totally monotone (Hausdorff moment) sequence
/// `a_k`, using the Cohen–Villegas–Zagier acceleration.
///
/// The error after `n` terms is bounded by `2·a_0/(3+√8)^n`, so `n` is
/// chosen from the relative tolerance.
pub(crate) fn alternating_sum(a: impl Fn(usize) -> f64, ctrl: &ConvergenceControl) -> f64 {
    let rate = 3.0 + 8f64.sqrt();
    let needed = ((2.0 / (0.25 * ctrl.rel_tol)).ln() / rate.ln()).ceil() as usize;
    let n = needed.clamp(8, 60);
    let mut d = rate.powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// Dirichlet eta `η(s) = Σ (-1)^{k-1}/k^s` for real `s > 0`.
pub fn dirichlet_eta(s: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(
            "dirichlet_eta",
            format!("s = {s} must be > 0"),
        ));
    }
    if s > 60.0 {
        // terms past 2^-s are below double precision
        return Ok(1.0 - 2f64.powf(-s) + 3f64.powf(-s));
    }
    Ok(alternating_sum(|k| (k as f64 + 1.0).powf(-s), ctrl))
}

/// Riemann zeta for real `s > 1`, via `ζ(s) = η(s)/(1 - 2^{1-s})`.
pub fn riemann_zeta(s: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::domain(
            "riemann_zeta",
            format!("s = {s} must be > 1"),
        ));
    }
    let eta = dirichlet_eta(s, ctrl)?;
    let factor = -((1.0 - s) * LN_2).exp_m1();
    Ok(eta / factor)
}

/// Polylogarithm `Li_s(z) = Σ_{k≥1} z^k/k^s` for `s > 1`, `|z| ≤ 1`.
///
/// Negative `z` goes through the accelerated alternating sum, `z = 1` is
/// `ζ(s)`, and `0 < z < 1` sums the power series with a remainder bound.
pub fn polylog_neg_arg(s: f64, z: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::domain(
            "polylog_neg_arg",
            format!("s = {s} must be > 1"),
        ));
    }
    if !(z.abs() <= 1.0) {
        return Err(Error::domain(
            "polylog_neg_arg",
            format!("|z| = {} exceeds 1", z.abs()),
        ));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        return riemann_zeta(s, ctrl);
    }
    if z < 0.0 {
        let t = -z;
        let sum = alternating_sum(|k| t.powi(k as i32) * (k as f64 + 1.0).powf(-s), ctrl);
        return Ok(-t * sum);
    }

    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..=SERIES_TERM_CAP {
        zk *= z;
        let kf = k as f64;
        sum += zk * kf.powf(-s);
        let next = zk * z;
        let by_ratio = next * (kf + 1.0).powf(-s) / (1.0 - z);
        let by_integral = next * kf.powf(1.0 - s) / (s - 1.0);
        if by_ratio.min(by_integral) <= ctrl.threshold(sum) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        method: "polylog power series",
        iterations: SERIES_TERM_CAP,
        estimate: sum,
    })
}
