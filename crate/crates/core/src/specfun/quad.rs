//! Adaptive Gauss–Kronrod (7/15) quadrature with global bisection.
//!
//! Infinite limits are mapped onto the unit interval with
//! `x = a + t/(1-t)`; the Kronrod nodes never touch `t = 1`, so the
//! transformed integrand only has to decay fast enough to stay bounded
//! (algebraic `x^-2` decay is enough).

use crate::control::ConvergenceControl;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral estimate with its error bound and the number of panels used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// `∫_a^b f(x) dx`; either limit may be infinite.
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    ctrl: &ConvergenceControl,
) -> Result<f64> {
    adaptive_integrate_detailed(f, a, b, &[], ctrl).map(|r| r.value)
}

/// As [`adaptive_integrate`], with extra interior breakpoints where the
/// integrand is known to be sharply peaked or non-smooth.
pub fn adaptive_integrate_points<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    ctrl: &ConvergenceControl,
) -> Result<f64> {
    adaptive_integrate_detailed(f, a, b, points, ctrl).map(|r| r.value)
}

pub fn adaptive_integrate_detailed<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    ctrl: &ConvergenceControl,
) -> Result<Integral> {
    integrate(&f, a, b, points, ctrl)
}

fn integrate(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    points: &[f64],
    ctrl: &ConvergenceControl,
) -> Result<Integral> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::domain("adaptive_integrate", "NaN limit"));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            panels: 0,
        });
    }
    if a > b {
        let r = integrate(f, b, a, points, ctrl)?;
        return Ok(Integral {
            value: -r.value,
            ..r
        });
    }

    match (a.is_finite(), b.is_finite()) {
        (true, true) => {
            let mut cuts: Vec<f64> = points.iter().copied().filter(|&p| p > a && p < b).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut edges = Vec::with_capacity(cuts.len() + 2);
            edges.push(a);
            edges.extend(cuts);
            edges.push(b);
            integrate_panels(f, &edges, ctrl)
        }
        (true, false) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(a + t / s) / (s * s)
            };
            let mut edges = vec![0.0];
            let mut cuts: Vec<f64> = points
                .iter()
                .filter(|&&p| p > a)
                .map(|&p| (p - a) / (1.0 + p - a))
                .collect();
            cuts.sort_by(f64::total_cmp);
            edges.extend(cuts);
            edges.push(1.0);
            edges.dedup();
            integrate_panels(&g, &edges, ctrl)
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                f(b - t / s) / (s * s)
            };
            let mut edges = vec![0.0];
            let mut cuts: Vec<f64> = points
                .iter()
                .filter(|&&p| p < b)
                .map(|&p| (b - p) / (1.0 + b - p))
                .collect();
            cuts.sort_by(f64::total_cmp);
            edges.extend(cuts);
            edges.push(1.0);
            edges.dedup();
            integrate_panels(&g, &edges, ctrl)
        }
        (false, false) => {
            let left = integrate(f, f64::NEG_INFINITY, 0.0, points, ctrl)?;
            let right = integrate(f, 0.0, f64::INFINITY, points, ctrl)?;
            Ok(Integral {
                value: left.value + right.value,
                error: left.error + right.error,
                panels: left.panels + right.panels,
            })
        }
    }
}

fn integrate_panels<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    edges: &[f64],
    ctrl: &ConvergenceControl,
) -> Result<Integral> {
    let mut panels = Vec::with_capacity(ctrl.max_iter.max(edges.len()));
    for w in edges.windows(2) {
        panels.push(kronrod15(f, w[0], w[1])?);
    }
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= ctrl.threshold(total) {
            return Ok(Integral {
                value: total,
                error,
                panels: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        let splittable = mid > p.a
            && mid < p.b
            && (p.b - p.a) > 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE);
        if panels.len() >= ctrl.max_iter || !splittable {
            return Err(Error::Convergence {
                method: "adaptive Gauss-Kronrod",
                iterations: panels.len(),
                estimate: total,
            });
        }
        panels[worst] = kronrod15(f, p.a, mid)?;
        panels.push(kronrod15(f, mid, p.b)?);
    }
}

fn kronrod15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::domain(
                "adaptive_integrate",
                format!("integrand is {y} at x = {x}"),
            ))
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let h = half.abs();
    let value = res_k * half;
    res_abs *= h;
    res_asc *= h;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Panel { a, b, value, error })
}
