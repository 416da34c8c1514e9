use qshape::circuits::{
    bvd_magnitude_bandwidth, level_frequencies, q_from_elements, q_from_log_decrement,
    q_from_restitution, BvdParams, BvdResponse, SeriesRlc,
};
use qshape::{
    full_report, sample_curve, ConvergenceControl, LevelSpec, LineShape, PhysicalContext,
};
use serde::{Deserialize, Serialize};

use crate::args::{
    Cli, Command, ConvertArgs, CurveArgs, LevelArgs, PeakOf, RlcArgs, ShapeArgs, ShapeKind,
};
use crate::format::{csv_writer, finish_csv, OutputFormat, Precision};
use crate::report::{Field, Report};
use crate::tables;
use crate::CliError;

pub fn run(cli: &Cli, ctrl: &ConvergenceControl) -> Result<String, CliError> {
    let p = Precision::from_flag(cli.full_precision);
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Analyze { shape, level } => {
            Ok(analyze(shape, level, ctrl)?.render(fmt(OutputFormat::Text), p))
        }
        Command::Table { id } => Ok(tables::build(*id, p, ctrl)?.render(fmt(OutputFormat::Text))),
        Command::Curve(args) => Ok(curve(args, ctrl)?.render(fmt(OutputFormat::Csv), p)),
        Command::Convert(args) => Ok(convert(args, ctrl)?.render(fmt(OutputFormat::Text), p)),
        Command::Rlc(args) => Ok(rlc(args, ctrl)?.render(fmt(OutputFormat::Text), p)),
    }
}

impl ShapeArgs {
    /// The selected shape, rejecting parameters that do not belong to it.
    pub fn build(&self) -> Result<LineShape, CliError> {
        let given = [
            ("--m", self.m.is_some()),
            ("--n", self.n.is_some()),
            ("--stats", self.stats.is_some()),
            ("--q", self.q.is_some()),
            ("--r", self.r.is_some()),
            ("--ratio", self.ratio.is_some()),
        ];
        let allowed: &[&str] = match self.shape {
            ShapeKind::Thermal => &["--m", "--n", "--stats"],
            ShapeKind::Gaussian | ShapeKind::Lorentzian => &[],
            ShapeKind::Rlc => &["--q"],
            ShapeKind::Bvd => &["--q", "--r"],
            ShapeKind::Voigt => &["--ratio"],
        };
        if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
            return Err(CliError::usage(format!(
                "{flag} does not apply to --shape {}",
                self.kind_name()
            )));
        }
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| {
                CliError::usage(format!("--shape {} requires {flag}", self.kind_name()))
            })
        };
        let shape = match self.shape {
            ShapeKind::Thermal => LineShape::GeneralizedThermal {
                m: need(self.m, "--m")?,
                n: self.n.or(self.stats.map(|s| s.n())).unwrap_or(-1.0),
            },
            ShapeKind::Gaussian => LineShape::Gaussian,
            ShapeKind::Lorentzian => LineShape::Lorentzian,
            ShapeKind::Rlc => LineShape::RlcConductance {
                q: need(self.q, "--q")?,
            },
            ShapeKind::Bvd => LineShape::BvdAdmittanceMagnitude {
                q: need(self.q, "--q")?,
                r: need(self.r, "--r")?,
            },
            ShapeKind::Voigt => LineShape::Voigt {
                gamma_over_sigma: need(self.ratio, "--ratio")?,
            },
        };
        shape.validate()?;
        Ok(shape)
    }

    fn kind_name(&self) -> &'static str {
        match self.shape {
            ShapeKind::Thermal => "thermal",
            ShapeKind::Gaussian => "gaussian",
            ShapeKind::Lorentzian => "lorentzian",
            ShapeKind::Rlc => "rlc",
            ShapeKind::Bvd => "bvd",
            ShapeKind::Voigt => "voigt",
        }
    }
}

impl LevelArgs {
    pub fn spec(&self) -> Result<LevelSpec, CliError> {
        let level = match (self.level, self.db) {
            (Some(a), _) => LevelSpec::fraction_of(a)?,
            (None, Some(d)) => LevelSpec::db(d)?,
            (None, None) => LevelSpec::half_power(),
        };
        Ok(level)
    }
}

/// `analyze` output; field names are part of the JSON contract.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub shape: String,
    pub m: Option<f64>,
    pub n: Option<f64>,
    pub level_fraction: f64,
    pub x_peak: f64,
    pub f_peak: f64,
    pub x_lower: f64,
    pub x_upper: f64,
    pub bandwidth: f64,
    pub q_direct: f64,
    pub q_reciprocal: Option<f64>,
    pub x_median: Option<f64>,
    pub area_fraction: Option<f64>,
}

impl Report for AnalyzeReport {
    fn fields(&self) -> Vec<(&'static str, Field)> {
        vec![
            ("shape", self.shape.as_str().into()),
            ("m", self.m.into()),
            ("n", self.n.into()),
            ("level_fraction", self.level_fraction.into()),
            ("x_peak", self.x_peak.into()),
            ("f_peak", self.f_peak.into()),
            ("x_lower", self.x_lower.into()),
            ("x_upper", self.x_upper.into()),
            ("bandwidth", self.bandwidth.into()),
            ("q_direct", self.q_direct.into()),
            ("q_reciprocal", self.q_reciprocal.into()),
            ("x_median", self.x_median.into()),
            ("area_fraction", self.area_fraction.into()),
        ]
    }
}

pub fn analyze(
    shape: &ShapeArgs,
    level: &LevelArgs,
    ctrl: &ConvergenceControl,
) -> Result<AnalyzeReport, CliError> {
    let s = shape.build()?;
    let level = level.spec()?;
    let r = full_report(&s, level, ctrl)?;
    let (m, n) = match s {
        LineShape::GeneralizedThermal { m, n } => (Some(m), Some(n)),
        _ => (None, None),
    };
    Ok(AnalyzeReport {
        shape: s.name().to_string(),
        m,
        n,
        level_fraction: level.fraction(),
        x_peak: r.x_peak,
        f_peak: r.f_peak,
        x_lower: r.x_lower,
        x_upper: r.x_upper,
        bandwidth: r.bandwidth,
        q_direct: r.q_direct,
        q_reciprocal: r.q_reciprocal,
        x_median: r.x_median,
        area_fraction: r.area_fraction,
    })
}

/// Sampled curve: two named columns and the points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveData {
    pub columns: [String; 2],
    pub points: Vec<[f64; 2]>,
}

impl CurveData {
    pub fn render(&self, format: OutputFormat, p: Precision) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string(self).expect("curve serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut w = csv_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for [x, f] in &self.points {
                    w.write_record([p.render(*x), p.render(*f)])
                        .expect("in-memory write");
                }
                finish_csv(w)
            }
            OutputFormat::Text => {
                let width = p.digits() + 8;
                let mut out = format!("{:<width$}  {}\n", self.columns[0], self.columns[1]);
                for [x, f] in &self.points {
                    out += &format!("{:<width$}  {}\n", p.render(*x), p.render(*f));
                }
                out
            }
        }
    }
}

pub fn curve(args: &CurveArgs, ctrl: &ConvergenceControl) -> Result<CurveData, CliError> {
    let shape = args.shape.build()?;
    let columns = match shape {
        LineShape::RlcConductance { .. } | LineShape::BvdAdmittanceMagnitude { .. } => {
            ["omega", "g"]
        }
        _ => ["x", "f"],
    };
    let domain = shape.domain();
    if !(domain.contains(args.from) && domain.contains(args.to)) {
        return Err(CliError::usage(format!(
            "range [{}, {}] leaves the {} domain ({}, {})",
            args.from,
            args.to,
            shape.name(),
            domain.lower,
            domain.upper
        )));
    }
    let mut points = sample_curve(&shape, args.from, args.to, args.points, args.log, ctrl)?;
    if args.rj_asymptote {
        for (x, f) in points.iter_mut() {
            *f = shape
                .small_x_asymptote(*x)
                .ok_or_else(|| CliError::usage("--rj-asymptote needs --shape thermal"))?;
        }
    }
    Ok(CurveData {
        columns: columns.map(String::from),
        points: points.into_iter().map(|(x, f)| [x, f]).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertReport {
    pub temperature_k: f64,
    pub peak_of: Option<String>,
    pub x: f64,
    pub nu_hz: f64,
    pub lambda_m: f64,
    /// Wien displacement product, m·K (wavelength-rule peak only).
    pub lambda_p_times_t: Option<f64>,
    /// Hz/K (frequency-rule peak only).
    pub nu_p_over_t: Option<f64>,
}

impl Report for ConvertReport {
    fn fields(&self) -> Vec<(&'static str, Field)> {
        vec![
            ("temperature_k", self.temperature_k.into()),
            ("peak_of", self.peak_of.clone().into()),
            ("x", self.x.into()),
            ("nu_hz", self.nu_hz.into()),
            ("lambda_m", self.lambda_m.into()),
            ("lambda_p_times_t", self.lambda_p_times_t.into()),
            ("nu_p_over_t", self.nu_p_over_t.into()),
        ]
    }
}

pub fn convert(args: &ConvertArgs, ctrl: &ConvergenceControl) -> Result<ConvertReport, CliError> {
    let ctx = PhysicalContext::new(args.temperature)?;
    let t = args.temperature;
    let (x, peak_of) = match (args.x, args.peak_of) {
        (Some(x), None) => (x, None),
        (None, Some(which)) => {
            let m = match which {
                PeakOf::M3 => 3.0,
                PeakOf::M5 => 5.0,
            };
            let (xp, _) = qshape::find_peak(&LineShape::GeneralizedThermal { m, n: -1.0 }, ctrl)?;
            (xp, Some(which))
        }
        _ => return Err(CliError::usage("give exactly one of --x or --peak-of")),
    };
    let nu = ctx.x_to_frequency(x)?;
    let lambda = ctx.x_to_wavelength(x)?;
    Ok(ConvertReport {
        temperature_k: t,
        peak_of: peak_of.map(|w| match w {
            PeakOf::M3 => "m3".to_string(),
            PeakOf::M5 => "m5".to_string(),
        }),
        x,
        nu_hz: nu,
        lambda_m: lambda,
        lambda_p_times_t: (peak_of == Some(PeakOf::M5)).then_some(lambda * t),
        nu_p_over_t: (peak_of == Some(PeakOf::M3)).then_some(nu / t),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RlcReport {
    /// Which input the Q came from: q, elements, decrement or restitution.
    pub source: String,
    pub q: f64,
    pub omega1_rad_s: Option<f64>,
    pub f1_hz: Option<f64>,
    pub level_fraction: f64,
    pub omega_lower: f64,
    pub omega_upper: f64,
    pub bandwidth: f64,
    pub shunt_ratio: Option<f64>,
    pub bvd_status: Option<String>,
    pub bvd_omega_max: Option<f64>,
    pub bvd_magnitude_max: Option<f64>,
    pub bvd_omega_lower: Option<f64>,
    pub bvd_omega_upper: Option<f64>,
    pub bvd_band: Option<f64>,
    pub bvd_q_estimate: Option<f64>,
}

impl Report for RlcReport {
    fn fields(&self) -> Vec<(&'static str, Field)> {
        let mut f: Vec<(&'static str, Field)> = vec![
            ("source", self.source.as_str().into()),
            ("q", self.q.into()),
            ("omega1_rad_s", self.omega1_rad_s.into()),
            ("f1_hz", self.f1_hz.into()),
            ("level_fraction", self.level_fraction.into()),
            ("omega_lower", self.omega_lower.into()),
            ("omega_upper", self.omega_upper.into()),
            ("bandwidth", self.bandwidth.into()),
        ];
        if self.shunt_ratio.is_some() {
            f.extend([
                ("shunt_ratio", self.shunt_ratio.into()),
                ("bvd_status", self.bvd_status.clone().into()),
                ("bvd_omega_max", self.bvd_omega_max.into()),
                ("bvd_magnitude_max", self.bvd_magnitude_max.into()),
                ("bvd_omega_lower", self.bvd_omega_lower.into()),
                ("bvd_omega_upper", self.bvd_omega_upper.into()),
                ("bvd_band", self.bvd_band.into()),
                ("bvd_q_estimate", self.bvd_q_estimate.into()),
            ]);
        }
        f
    }
}

pub fn rlc(args: &RlcArgs, ctrl: &ConvergenceControl) -> Result<RlcReport, CliError> {
    let mut omega1 = None;
    let mut f1 = None;
    let (source, q) = match (args.q, args.r, args.decrement, args.restitution) {
        (Some(q), None, None, None) => ("q", q),
        (None, Some(r), None, None) => {
            let (l, c) = args
                .l
                .zip(args.c)
                .ok_or_else(|| CliError::usage("--r needs --l and --c"))?;
            let circuit = SeriesRlc::new(r, l, c)?;
            omega1 = Some(circuit.resonance_angular_frequency());
            f1 = Some(circuit.resonance_frequency());
            ("elements", q_from_elements(&circuit)?)
        }
        (None, None, Some(d), None) => ("decrement", q_from_log_decrement(d)?),
        (None, None, None, Some(cr)) => ("restitution", q_from_restitution(cr)?),
        _ => {
            return Err(CliError::usage(
                "give exactly one of --q, --r/--l/--c, --decrement or --restitution",
            ))
        }
    };
    let level = args.level.spec()?;
    let (lo, hi) = level_frequencies(q, level.fraction())?;
    let mut report = RlcReport {
        source: source.into(),
        q,
        omega1_rad_s: omega1,
        f1_hz: f1,
        level_fraction: level.fraction(),
        omega_lower: lo,
        omega_upper: hi,
        bandwidth: hi - lo,
        shunt_ratio: None,
        bvd_status: None,
        bvd_omega_max: None,
        bvd_magnitude_max: None,
        bvd_omega_lower: None,
        bvd_omega_upper: None,
        bvd_band: None,
        bvd_q_estimate: None,
    };
    if let Some(r) = args.shunt_ratio {
        report.shunt_ratio = Some(r);
        let response = bvd_magnitude_bandwidth(&BvdParams::new(q, r)?, level, ctrl)?;
        match response {
            BvdResponse::Resonant(b) => {
                report.bvd_status = Some("resonant".into());
                report.bvd_omega_max = Some(b.omega_max);
                report.bvd_magnitude_max = Some(b.magnitude_max);
                report.bvd_omega_lower = Some(b.omega_lower);
                report.bvd_omega_upper = Some(b.omega_upper);
                report.bvd_band = Some(b.band);
                report.bvd_q_estimate = Some(b.centered_q_estimate);
            }
            BvdResponse::NoResonantPeak => report.bvd_status = Some("no_resonant_peak".into()),
            BvdResponse::CrossingsAbsent {
                omega_max,
                magnitude_max,
            } => {
                report.bvd_status = Some("crossings_absent".into());
                report.bvd_omega_max = Some(omega_max);
                report.bvd_magnitude_max = Some(magnitude_max);
            }
        }
    }
    Ok(report)
}
