//! Peak, level crossings, bandwidth, Q, median and area fraction for any
//! [`LineShape`].
//!
//! Q is `x_ref / (x_upper - x_lower)`. One-sided thermal curves use the
//! peak abscissa as `x_ref`; the centered shapes (Gaussian, Lorentzian,
//! Voigt) and the circuit responses use a unit reference, i.e. the
//! normalized center frequency, so that Q = 1/ΔΩ.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::circuits::level_frequencies;
use crate::control::ConvergenceControl;
use crate::error::{Error, Result, StageExt};
use crate::lineshapes::LineShape;
use crate::roots::{brent, minimize, safeguarded_newton};
use crate::specfun::lambert_w0;

/// Window searched for the BVD magnitude maximum.
const BVD_PEAK_WINDOW: (f64, f64) = (0.5, 1.5);

/// Crossing level, as a power fraction or in dB below the peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSpec {
    Fraction(f64),
    Db(f64),
}

impl LevelSpec {
    pub fn half_power() -> Self {
        LevelSpec::Fraction(0.5)
    }

    pub fn fraction_of(alpha: f64) -> Result<Self> {
        let l = LevelSpec::Fraction(alpha);
        l.validate()?;
        Ok(l)
    }

    pub fn db(db: f64) -> Result<Self> {
        let l = LevelSpec::Db(db);
        l.validate()?;
        Ok(l)
    }

    /// Power fraction α; `α = 10^(-dB/10)`.
    pub fn fraction(&self) -> f64 {
        match *self {
            LevelSpec::Fraction(a) => a,
            LevelSpec::Db(d) => 10f64.powf(-d / 10.0),
        }
    }

    pub fn as_db(&self) -> f64 {
        match *self {
            LevelSpec::Fraction(a) => -10.0 * a.log10(),
            LevelSpec::Db(d) => d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LevelSpec::Fraction(a) if !(a > 0.0 && a < 1.0) => Err(Error::domain(
                "LevelSpec",
                format!("fraction {a} outside (0, 1)"),
            )),
            LevelSpec::Db(d) if !(d > 0.0 && d.is_finite()) => Err(Error::domain(
                "LevelSpec",
                format!("dB value {d} must be > 0"),
            )),
            _ => Ok(()),
        }
    }
}

/// Everything the analyzer reports for one shape at one level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeAnalysis {
    pub shape: LineShape,
    pub level: LevelSpec,
    pub x_peak: f64,
    pub f_peak: f64,
    pub x_lower: f64,
    pub x_upper: f64,
    pub bandwidth: f64,
    pub q_direct: f64,
    /// Q on the reciprocal axis Y = 1/X; thermal family only.
    pub q_reciprocal: Option<f64>,
    /// `None` when the total area is infinite (BVD with a shunt).
    pub x_median: Option<f64>,
    pub area_fraction: Option<f64>,
}

/// The thermal-family crossings re-expressed on Y = 1/X.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReciprocalView {
    pub y_peak: f64,
    /// `1/x_upper`
    pub y_lower: f64,
    /// `1/x_lower`
    pub y_upper: f64,
    pub y_bandwidth: f64,
    pub y_median: Option<f64>,
}

impl ShapeAnalysis {
    pub fn reciprocal_view(&self) -> Option<ReciprocalView> {
        if !matches!(self.shape, LineShape::GeneralizedThermal { .. }) {
            return None;
        }
        let y_lower = 1.0 / self.x_upper;
        let y_upper = 1.0 / self.x_lower;
        Some(ReciprocalView {
            y_peak: 1.0 / self.x_peak,
            y_lower,
            y_upper,
            y_bandwidth: y_upper - y_lower,
            y_median: self.x_median.map(|x| 1.0 / x),
        })
    }
}

/// Collects the first failure of a fallible function so it can be used
/// inside the plain `Fn(f64) -> f64` solvers.
struct Probe<'a> {
    shape: &'a LineShape,
    ctrl: &'a ConvergenceControl,
    failure: RefCell<Option<Error>>,
}

impl<'a> Probe<'a> {
    fn new(shape: &'a LineShape, ctrl: &'a ConvergenceControl) -> Self {
        Self {
            shape,
            ctrl,
            failure: RefCell::new(None),
        }
    }

    fn value(&self, x: f64) -> f64 {
        match self.shape {
            LineShape::Voigt { .. } => match self.shape.evaluate(x, self.ctrl) {
                Ok(v) => v,
                Err(e) => {
                    self.failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            s => s.value(x),
        }
    }

    fn check<T>(&self, r: Result<T>) -> Result<T> {
        match self.failure.borrow_mut().take() {
            Some(e) => Err(e),
            None => r,
        }
    }
}

/// Peak of `X^M/(e^X - 1)` from `X_p = M + W₀(-M·e^{-M})`.
pub fn thermal_peak_lambert(m: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if !(m > 1.0) {
        return Err(Error::domain(
            "thermal_peak_lambert",
            format!("M = {m} must be > 1"),
        ));
    }
    Ok(m + lambert_w0(-m * (-m).exp(), ctrl)?)
}

/// Peak of `X^M/(e^X + n)` as the root of `X - M(1 + n·e^{-X}) = 0`,
/// bracketed from `max(0, M-1)` upward.
pub fn thermal_peak_newton(m: f64, n: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    LineShape::thermal(m, n)?;
    let fdf = |x: f64| {
        let e = n * (-x).exp();
        (x - m * (1.0 + e), 1.0 + m * e)
    };
    let lo = (m - 1.0).max(0.0);
    let mut hi = m + 1.0;
    while fdf(hi).0 <= 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoBracket {
                what: "thermal peak",
            });
        }
    }
    safeguarded_newton(fdf, lo, hi, ctrl)
}

/// Abscissa and value of the maximum.
pub fn find_peak(shape: &LineShape, ctrl: &ConvergenceControl) -> Result<(f64, f64)> {
    shape.validate()?;
    let x = match *shape {
        LineShape::GeneralizedThermal { m, n } if n == -1.0 => thermal_peak_lambert(m, ctrl)?,
        LineShape::GeneralizedThermal { m, n } if n == 0.0 => m,
        LineShape::GeneralizedThermal { m, n } => thermal_peak_newton(m, n, ctrl)?,
        LineShape::Gaussian | LineShape::Lorentzian | LineShape::Voigt { .. } => 0.0,
        LineShape::RlcConductance { .. } => 1.0,
        LineShape::BvdAdmittanceMagnitude { q, .. } => bvd_peak(shape, q, ctrl)?,
    };
    Ok((x, shape.evaluate(x, ctrl)?))
}

fn bvd_peak(shape: &LineShape, q: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    let (lo, hi) = BVD_PEAK_WINDOW;
    let step = (0.05 / q).min(1e-3);
    let count = (((hi - lo) / step).ceil() as usize).clamp(100, 2_000_000);
    let grid = |i: usize| lo + (hi - lo) * i as f64 / count as f64;
    let (best, _) = (0..=count).map(|i| (i, shape.value(grid(i)))).fold(
        (0, f64::NEG_INFINITY),
        |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
    );
    if best == 0 || best == count {
        return Err(Error::NoResonantPeak { lo, hi });
    }
    minimize(|x| -shape.value(x), grid(best - 1), grid(best + 1), ctrl)
}

/// The two abscissas where the shape falls to `α·f_peak`.
pub fn level_points(
    shape: &LineShape,
    level: LevelSpec,
    ctrl: &ConvergenceControl,
) -> Result<(f64, f64)> {
    level.validate()?;
    let (x_peak, f_peak) = find_peak(shape, ctrl).stage("peak")?;
    crossings(shape, level.fraction(), x_peak, f_peak, ctrl).stage("level crossings")
}

fn crossings(
    shape: &LineShape,
    alpha: f64,
    x_peak: f64,
    f_peak: f64,
    ctrl: &ConvergenceControl,
) -> Result<(f64, f64)> {
    let target = alpha * f_peak;
    let probe = Probe::new(shape, ctrl);
    let h = |x: f64| probe.value(x) - target;

    let (lower, upper) = match *shape {
        LineShape::BvdAdmittanceMagnitude { q, .. } => {
            let lo = march_below(&h, x_peak, -1.0, q, "lower")?;
            let hi = march_below(&h, x_peak, 1.0, q, "upper")?;
            (lo, hi)
        }
        _ => {
            let one_sided = shape.domain().lower == 0.0;
            let lo = probe.check(expand_below(&h, x_peak, one_sided, -1.0, "lower"))?;
            let hi = probe.check(expand_below(&h, x_peak, one_sided, 1.0, "upper"))?;
            (lo, hi)
        }
    };
    let x_lower = probe.check(brent(h, lower.0, lower.1, ctrl))?;
    let x_upper = probe.check(brent(h, upper.0, upper.1, ctrl))?;

    if let LineShape::RlcConductance { q } = *shape {
        let (lo, hi) = level_frequencies(q, alpha)?;
        let agree = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b;
        if !agree(x_lower, lo) || !agree(x_upper, hi) {
            return Err(Error::Convergence {
                method: "rlc crossings vs closed form",
                iterations: 0,
                estimate: x_upper - x_lower,
            });
        }
    }
    Ok((x_lower, x_upper))
}

/// Step away from the peak (geometrically: factor 2 on one-sided domains,
/// doubling offsets otherwise) until `h` turns negative. Returns an
/// ordered bracket.
fn expand_below(
    h: &impl Fn(f64) -> f64,
    x_peak: f64,
    one_sided: bool,
    dir: f64,
    side: &'static str,
) -> Result<(f64, f64)> {
    let mut prev = x_peak;
    let mut offset = 1.0;
    for _ in 0..1100 {
        let x = if one_sided {
            if dir > 0.0 {
                prev * 2.0
            } else {
                prev * 0.5
            }
        } else {
            x_peak + dir * offset
        };
        if !x.is_finite() || (one_sided && x <= 0.0) {
            break;
        }
        let v = h(x);
        if v.is_nan() {
            break;
        }
        if v < 0.0 {
            return Ok(if x < prev { (x, prev) } else { (prev, x) });
        }
        prev = x;
        offset *= 2.0;
    }
    Err(Error::LevelNotCrossed {
        side,
        level: f64::NAN,
    })
}

/// Walk from the peak in bounded steps for responses that may turn back up
/// (BVD above resonance). A local minimum that stays above the level means
/// the crossing is absent.
fn march_below(
    h: &impl Fn(f64) -> f64,
    x_peak: f64,
    dir: f64,
    q: f64,
    side: &'static str,
) -> Result<(f64, f64)> {
    let ctrl = ConvergenceControl::default();
    let mut step = (0.125 / q).min(0.01);
    let max_step = 0.1;
    let mut before = x_peak;
    let mut prev = x_peak;
    let mut h_prev = h(prev);
    for _ in 0..10_000_000 {
        let mut x = prev + dir * step;
        if x <= 0.0 {
            x = 0.5 * prev;
        }
        let hx = h(x);
        if hx < 0.0 {
            return Ok(if x < prev { (x, prev) } else { (prev, x) });
        }
        if hx > h_prev && prev != x_peak {
            // turned back up: is the valley between `before` and `x` below the level?
            let (a, b) = if before < x { (before, x) } else { (x, before) };
            let xmin = minimize(h, a, b, &ctrl)?;
            if h(xmin) < 0.0 {
                return Ok(if xmin < before {
                    (xmin, before)
                } else {
                    (before, xmin)
                });
            }
            return Err(Error::LevelNotCrossed {
                side,
                level: f64::NAN,
            });
        }
        if dir < 0.0 && prev < 1e-300 {
            break;
        }
        before = prev;
        prev = x;
        h_prev = hx;
        step = (step * 1.5).min(max_step);
    }
    Err(Error::LevelNotCrossed {
        side,
        level: f64::NAN,
    })
}

/// `(q_direct, q_reciprocal)`; the reciprocal-axis value exists only for
/// the thermal family.
pub fn q_factor(
    shape: &LineShape,
    level: LevelSpec,
    ctrl: &ConvergenceControl,
) -> Result<(f64, Option<f64>)> {
    let (x_peak, _) = find_peak(shape, ctrl).stage("peak")?;
    let (lo, hi) = level_points(shape, level, ctrl)?;
    Ok(q_values(shape, x_peak, lo, hi))
}

fn q_values(shape: &LineShape, x_peak: f64, lo: f64, hi: f64) -> (f64, Option<f64>) {
    match shape {
        LineShape::GeneralizedThermal { .. } => {
            let direct = x_peak / (hi - lo);
            let reciprocal = (1.0 / x_peak) / (1.0 / lo - 1.0 / hi);
            (direct, Some(reciprocal))
        }
        _ => (1.0 / (hi - lo), None),
    }
}

/// Abscissa splitting the total area in half.
pub fn median_point(shape: &LineShape, ctrl: &ConvergenceControl) -> Result<f64> {
    let total = shape.total_area(ctrl).stage("total area")?;
    if !total.is_finite() {
        return Err(Error::domain(
            "median_point",
            format!("{} has infinite total area", shape.name()),
        ))
        .stage("median");
    }
    // even shapes split their area at the centre exactly
    if let Some(center) = shape.domain().symmetric_center {
        return Ok(center);
    }
    median_with_total(shape, total, ctrl).stage("median")
}

fn median_with_total(shape: &LineShape, total: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    let domain = shape.domain();
    let (x_peak, f_peak) = find_peak(shape, ctrl)?;
    let (far_lo, far_hi) = crossings(shape, 0.01, x_peak, f_peak, ctrl)?;
    let start = domain.lower;
    let failure = RefCell::new(None);
    let excess = |x: f64| match shape.integral(start, x, ctrl) {
        Ok(v) => v - 0.5 * total,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };

    let mut lo = if start.is_finite() { start } else { far_lo };
    let mut hi = far_hi;
    let width = far_hi - far_lo;
    while excess(lo) > 0.0 {
        lo -= width;
    }
    while excess(hi) < 0.0 {
        hi += width;
    }
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    let root = brent(excess, lo, hi, ctrl);
    let failed = failure.borrow_mut().take();
    match failed {
        Some(e) => Err(e),
        None => root,
    }
}

/// Fraction of the total area lying between the level crossings.
pub fn area_fraction(
    shape: &LineShape,
    level: LevelSpec,
    ctrl: &ConvergenceControl,
) -> Result<f64> {
    let (lo, hi) = level_points(shape, level, ctrl)?;
    let total = shape.total_area(ctrl).stage("total area")?;
    if !total.is_finite() {
        return Err(Error::domain(
            "area_fraction",
            format!("{} has infinite total area", shape.name()),
        ))
        .stage("area fraction");
    }
    Ok(shape.integral(lo, hi, ctrl).stage("area fraction")? / total)
}

/// Every [`ShapeAnalysis`] field; errors carry the failing stage.
pub fn full_report(
    shape: &LineShape,
    level: LevelSpec,
    ctrl: &ConvergenceControl,
) -> Result<ShapeAnalysis> {
    shape.validate()?;
    level.validate()?;
    let (x_peak, f_peak) = find_peak(shape, ctrl).stage("peak")?;
    let (x_lower, x_upper) =
        crossings(shape, level.fraction(), x_peak, f_peak, ctrl).stage("level crossings")?;
    let (q_direct, q_reciprocal) = q_values(shape, x_peak, x_lower, x_upper);

    let total = shape.total_area(ctrl).stage("total area")?;
    let (x_median, area_fraction) = if total.is_finite() {
        let median = median_with_total(shape, total, ctrl).stage("median")?;
        let inside = shape
            .integral(x_lower, x_upper, ctrl)
            .stage("area fraction")?;
        (Some(median), Some(inside / total))
    } else {
        (None, None)
    };

    Ok(ShapeAnalysis {
        shape: *shape,
        level,
        x_peak,
        f_peak,
        x_lower,
        x_upper,
        bandwidth: x_upper - x_lower,
        q_direct,
        q_reciprocal,
        x_median,
        area_fraction,
    })
}

/// `count` points of the curve on `[x_min, x_max]`, endpoints exact.
pub fn sample_curve(
    shape: &LineShape,
    x_min: f64,
    x_max: f64,
    count: usize,
    log_spacing: bool,
    ctrl: &ConvergenceControl,
) -> Result<Vec<(f64, f64)>> {
    shape.validate()?;
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(Error::domain(
            "sample_curve",
            format!("empty range [{x_min}, {x_max}]"),
        ));
    }
    if count < 2 {
        return Err(Error::domain("sample_curve", "count must be >= 2"));
    }
    if log_spacing && x_min <= 0.0 {
        return Err(Error::domain("sample_curve", "log spacing needs x_min > 0"));
    }
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            let x = if i == 0 {
                x_min
            } else if i == count - 1 {
                x_max
            } else if log_spacing {
                (x_min.ln() + (x_max.ln() - x_min.ln()) * i as f64 / last).exp()
            } else {
                x_min + (x_max - x_min) * i as f64 / last
            };
            shape.evaluate(x, ctrl).map(|f| (x, f))
        })
        .collect()
}
