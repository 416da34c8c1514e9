#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for real `s > 0`.
///
/// Integer arguments up to 171 are returned as exact factorial products;
/// everything else goes through the Lanczos approximation (g = 7, n = 9),
/// with the reflection formula below 1/2.
pub fn gamma_real(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain("gamma_real", format!("s = {s} must be > 0")));
    }
    if s.fract() == 0.0 && s <= 171.0 {
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < s {
            acc *= k;
            k += 1.0;
        }
        return Ok(acc);
    }
    if s > 171.7 {
        return Ok(f64::INFINITY);
    }
    Ok(lanczos(s))
}

fn lanczos(s: f64) -> f64 {
    if s < 0.5 {
        return PI / ((PI * s).sin() * lanczos(1.0 - s));
    }
    let x = s - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // split the power to keep t^(x+0.5) finite up to s ≈ 171
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * sum
}
