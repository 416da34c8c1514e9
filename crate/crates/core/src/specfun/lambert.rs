use std::f64::consts::E;

use crate::control::ConvergenceControl;
use crate::error::{Error, Result};

const BRANCH_POINT: f64 = -1.0 / E;

/// Principal branch of the Lambert W function, `w·e^w = z` with `w ≥ -1`.
///
/// Halley iteration from a piecewise starting guess: the branch-point
/// series close to `-1/e`, `ln(1+z)` in the middle and the two-term
/// asymptotic expansion for large `z`.
pub fn lambert_w0(z: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::domain("lambert_w0", "argument is NaN"));
    }
    // z = x·e^x evaluated at x = -1 can land a few ulps below -1/e.
    let slack = 4.0 * f64::EPSILON * BRANCH_POINT.abs();
    if z < BRANCH_POINT - slack {
        return Err(Error::domain(
            "lambert_w0",
            format!("z = {z} is below -1/e"),
        ));
    }
    if z <= BRANCH_POINT + slack {
        return Ok(-1.0);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let mut w = initial_guess(z);
    for _ in 0..ctrl.max_iter {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= ctrl.rel_tol * (1.0 + w.abs()) || f == 0.0 {
            return Ok(w.max(-1.0));
        }
    }
    Err(Error::Convergence {
        method: "lambert_w0 Halley",
        iterations: ctrl.max_iter,
        estimate: w,
    })
}

fn initial_guess(z: f64) -> f64 {
    if z < -0.25 {
        let p = (2.0 * (E * z + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < E {
        z.ln_1p() * (1.0 - 0.25 * z.ln_1p() / (1.0 + z.ln_1p()))
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}
