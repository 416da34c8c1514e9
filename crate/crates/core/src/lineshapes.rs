//! Curve families and their pointwise values and total areas.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::circuits::bvd_admittance;
use crate::control::ConvergenceControl;
use crate::error::{Error, Result};
use crate::specfun::{
    adaptive_integrate, adaptive_integrate_points, dirichlet_eta, erfc, gamma_real,
    polylog_neg_arg, riemann_zeta,
};

/// Half-width of the window outside which the unit Gaussian kernel of the
/// Voigt convolution is below 1e-32 and dropped.
const VOIGT_KERNEL_CUTOFF: f64 = 12.0;

/// Above this X the thermal family is evaluated in log form to avoid
/// overflow of both `X^M` and `e^X`.
const THERMAL_LOG_FORM_X: f64 = 50.0;

/// A curve family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LineShape {
    /// `X^M/(e^X + n)` on X > 0.
    GeneralizedThermal { m: f64, n: f64 },
    /// `exp(-ln2·X²)`, half-power points at ±1.
    Gaussian,
    /// `1/(1 + X²)`, half-power points at ±1.
    Lorentzian,
    /// Series RLC conductance `g(Ω) = 1/[1 + Q²(Ω - 1/Ω)²]`.
    RlcConductance { q: f64 },
    /// Power-like BVD response `|Y·R|²`; equals `g` when `r = 0`.
    BvdAdmittanceMagnitude { q: f64, r: f64 },
    /// Unit-σ Gaussian convolved with a Lorentzian of HWHM `γ = ratio·σ`,
    /// scaled to a unit peak.
    Voigt { gamma_over_sigma: f64 },
}

/// Where a shape is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeDomain {
    /// Open lower end; `0` for one-sided families.
    pub lower: f64,
    pub upper: f64,
    pub symmetric_center: Option<f64>,
}

impl ShapeDomain {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

impl LineShape {
    pub fn thermal(m: f64, n: f64) -> Result<Self> {
        let s = LineShape::GeneralizedThermal { m, n };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            LineShape::GeneralizedThermal { m, n } => {
                if !(m > 1.0 && m.is_finite()) {
                    return Err(Error::domain(
                        "GeneralizedThermal",
                        format!("M = {m} must be > 1"),
                    ));
                }
                if !(n >= -1.0 && n.is_finite()) {
                    return Err(Error::domain(
                        "GeneralizedThermal",
                        format!("n = {n} must be >= -1"),
                    ));
                }
            }
            LineShape::Gaussian | LineShape::Lorentzian => {}
            LineShape::RlcConductance { q } => {
                if !(q > 0.0 && q.is_finite()) {
                    return Err(Error::domain(
                        "RlcConductance",
                        format!("Q = {q} must be > 0"),
                    ));
                }
            }
            LineShape::BvdAdmittanceMagnitude { q, r } => {
                if !(q > 0.0 && q.is_finite()) {
                    return Err(Error::domain(
                        "BvdAdmittanceMagnitude",
                        format!("Q = {q} must be > 0"),
                    ));
                }
                if !(r >= 0.0 && r.is_finite()) {
                    return Err(Error::domain(
                        "BvdAdmittanceMagnitude",
                        format!("r = {r} must be >= 0"),
                    ));
                }
            }
            LineShape::Voigt { gamma_over_sigma } => {
                if !(gamma_over_sigma >= 0.0 && gamma_over_sigma.is_finite()) {
                    return Err(Error::domain(
                        "Voigt",
                        format!("gamma/sigma = {gamma_over_sigma} must be >= 0"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Short family name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            LineShape::GeneralizedThermal { .. } => "thermal",
            LineShape::Gaussian => "gaussian",
            LineShape::Lorentzian => "lorentzian",
            LineShape::RlcConductance { .. } => "rlc",
            LineShape::BvdAdmittanceMagnitude { .. } => "bvd",
            LineShape::Voigt { .. } => "voigt",
        }
    }

    pub fn domain(&self) -> ShapeDomain {
        match self {
            LineShape::GeneralizedThermal { .. }
            | LineShape::RlcConductance { .. }
            | LineShape::BvdAdmittanceMagnitude { .. } => ShapeDomain {
                lower: 0.0,
                upper: f64::INFINITY,
                symmetric_center: None,
            },
            LineShape::Gaussian | LineShape::Lorentzian | LineShape::Voigt { .. } => ShapeDomain {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
                symmetric_center: Some(0.0),
            },
        }
    }

    /// Pointwise value, with parameter and domain checks.
    pub fn evaluate(&self, x: f64, ctrl: &ConvergenceControl) -> Result<f64> {
        self.validate()?;
        if !self.domain().contains(x) {
            return Err(Error::domain(
                "evaluate",
                format!("x = {x} outside the {} domain", self.name()),
            ));
        }
        match *self {
            LineShape::Voigt { gamma_over_sigma } => evaluate_voigt(gamma_over_sigma, x, ctrl),
            _ => Ok(self.value(x)),
        }
    }

    /// Unchecked value for the closed-form families; callers have validated
    /// the shape. Voigt is not closed-form and must go through `evaluate`.
    pub(crate) fn value(&self, x: f64) -> f64 {
        match *self {
            LineShape::GeneralizedThermal { m, n } => thermal_value(m, n, x),
            LineShape::Gaussian => (-LN_2 * x * x).exp(),
            LineShape::Lorentzian => 1.0 / (1.0 + x * x),
            LineShape::RlcConductance { q } => {
                let u = q * (x - 1.0 / x);
                1.0 / (1.0 + u * u)
            }
            LineShape::BvdAdmittanceMagnitude { q, r } => bvd_admittance(q, r, x).norm_sqr(),
            LineShape::Voigt { .. } => unreachable!("Voigt has no closed form"),
        }
    }

    /// Leading small-X behaviour of the thermal family (`X^{M-1}` for
    /// n = -1, `X^M/(1+n)` otherwise); `None` for other shapes.
    pub fn small_x_asymptote(&self, x: f64) -> Option<f64> {
        match *self {
            LineShape::GeneralizedThermal { m, n } if n == -1.0 => Some(x.powf(m - 1.0)),
            LineShape::GeneralizedThermal { m, n } => Some(x.powf(m) / (1.0 + n)),
            _ => None,
        }
    }

    /// `∫_a^b F`, limits clipped to the domain.
    pub fn integral(&self, a: f64, b: f64, ctrl: &ConvergenceControl) -> Result<f64> {
        self.validate()?;
        let d = self.domain();
        let (a, b) = (a.max(d.lower), b.min(d.upper));
        if a >= b {
            return Ok(0.0);
        }
        match *self {
            LineShape::Voigt { gamma_over_sigma } => voigt_integral(gamma_over_sigma, a, b, ctrl),
            LineShape::RlcConductance { .. } | LineShape::BvdAdmittanceMagnitude { .. } => {
                adaptive_integrate_points(|x| self.value(x), a, b, &[1.0], ctrl)
            }
            _ => adaptive_integrate(|x| self.value(x), a, b, ctrl),
        }
    }

    /// Area over the whole domain; `+∞` for the BVD response with a shunt
    /// capacitor, whose magnitude grows like `Ω·r/Q`.
    pub fn total_area(&self, ctrl: &ConvergenceControl) -> Result<f64> {
        self.validate()?;
        match *self {
            LineShape::GeneralizedThermal { m, n } => thermal_total_area(m, n, ctrl),
            LineShape::Gaussian => Ok((PI / LN_2).sqrt()),
            LineShape::Lorentzian => Ok(PI),
            LineShape::RlcConductance { q } => Ok(PI / (2.0 * q)),
            LineShape::BvdAdmittanceMagnitude { q, r } => Ok(if r == 0.0 {
                PI / (2.0 * q)
            } else {
                f64::INFINITY
            }),
            LineShape::Voigt { gamma_over_sigma } => {
                Ok(1.0 / voigt_unnormalized(gamma_over_sigma, 0.0, ctrl)?)
            }
        }
    }
}

/// `X^M/(e^X + n)` with `e^X + n` written as `expm1(X) + (1 + n)`, which
/// stays accurate near X = 0 for n = -1.
fn thermal_value(m: f64, n: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x > THERMAL_LOG_FORM_X {
        (m * x.ln() - x).exp() / (1.0 + n * (-x).exp())
    } else {
        x.powf(m) / (x.exp_m1() + (1.0 + n))
    }
}

fn thermal_total_area(m: f64, n: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    let s = m + 1.0;
    let g = gamma_real(s)?;
    if n == -1.0 {
        Ok(g * riemann_zeta(s, ctrl)?)
    } else if n == 0.0 {
        Ok(g)
    } else if n == 1.0 {
        Ok(g * dirichlet_eta(s, ctrl)?)
    } else if n.abs() < 1.0 {
        Ok(-g * polylog_neg_arg(s, -n, ctrl)? / n)
    } else {
        adaptive_integrate(|x| thermal_value(m, n, x), 0.0, f64::INFINITY, ctrl)
    }
}

fn gaussian_kernel(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// Unit-normal CDF.
fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Raw convolution `∫ G(t)·L(x - t) dt` with unit area.
///
/// Substituting `x - t = γ·tan θ` turns the Lorentzian into the uniform
/// measure `dθ/π`, leaving `(1/π)∫ G(x - γ·tan θ) dθ`, which is smooth for
/// both narrow and wide Lorentzians.
fn voigt_unnormalized(gamma: f64, x: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(gaussian_kernel(x));
    }
    let lo = ((x - VOIGT_KERNEL_CUTOFF) / gamma).atan();
    let hi = ((x + VOIGT_KERNEL_CUTOFF) / gamma).atan();
    let center = (x / gamma).atan();
    let v = adaptive_integrate_points(
        |th| gaussian_kernel(x - gamma * th.tan()),
        lo,
        hi,
        &[center],
        ctrl,
    )?;
    Ok(v / PI)
}

/// Voigt profile `V(x)` with `V(0) = 1`, by convolution quadrature.
pub fn evaluate_voigt(gamma_over_sigma: f64, x: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    if !(gamma_over_sigma >= 0.0 && gamma_over_sigma.is_finite()) {
        return Err(Error::domain(
            "evaluate_voigt",
            format!("gamma/sigma = {gamma_over_sigma} must be >= 0"),
        ));
    }
    if !x.is_finite() {
        return Err(Error::domain(
            "evaluate_voigt",
            format!("x = {x} must be finite"),
        ));
    }
    if gamma_over_sigma == 0.0 {
        return Ok((-0.5 * x * x).exp());
    }
    Ok(voigt_unnormalized(gamma_over_sigma, x, ctrl)?
        / voigt_unnormalized(gamma_over_sigma, 0.0, ctrl)?)
}

/// `∫_a^b V`. The unnormalized profile is the density of a Gaussian plus
/// an independent Lorentzian variable, so its mass on `[a, b]` is
/// `(1/π)∫ [Φ(b - γ·tan θ) - Φ(a - γ·tan θ)] dθ` over `(-π/2, π/2)`.
fn voigt_integral(gamma: f64, a: f64, b: f64, ctrl: &ConvergenceControl) -> Result<f64> {
    let peak = voigt_unnormalized(gamma, 0.0, ctrl)?;
    let cdf = |z: f64| {
        if z == f64::NEG_INFINITY {
            0.0
        } else if z == f64::INFINITY {
            1.0
        } else {
            normal_cdf(z)
        }
    };
    if gamma == 0.0 {
        return Ok((cdf(b) - cdf(a)) / peak);
    }
    let points: Vec<f64> = [a, b]
        .iter()
        .filter(|v| v.is_finite())
        .map(|v| (v / gamma).atan())
        .collect();
    let mass = adaptive_integrate_points(
        |th| {
            let shift = gamma * th.tan();
            cdf(b - shift) - cdf(a - shift)
        },
        -0.5 * PI,
        0.5 * PI,
        &points,
        ctrl,
    )?;
    Ok(mass / PI / peak)
}
