use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::format::OutputFormat;
use crate::tables::TableId;

#[derive(Debug, Parser)]
#[command(
    name = "qshape",
    version,
    about = "Peak, bandwidth, Q, median and area-fraction analysis of line shapes"
)]
pub struct Cli {
    /// Output format; `curve` defaults to csv, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Print 17 significant digits instead of 6.
    #[arg(long, global = true)]
    pub full_precision: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one line shape: peak, crossings, Q, median, area fraction.
    Analyze {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        level: LevelArgs,
    },
    /// Recompute one of the reference tables.
    Table {
        #[arg(value_enum)]
        id: TableId,
    },
    /// Sample a curve for plotting.
    Curve(CurveArgs),
    /// Map X = hν/kT to frequency and wavelength at a temperature.
    Convert(ConvertArgs),
    /// Series-RLC utilities: Q from elements, decrement or restitution.
    Rlc(RlcArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeKind {
    Thermal,
    Gaussian,
    Lorentzian,
    Rlc,
    Bvd,
    Voigt,
}

/// Statistics shorthand for the thermal family's n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stats {
    /// Bose-Einstein, n = -1
    Be,
    /// Maxwell-Boltzmann, n = 0
    Mb,
    /// Fermi-Dirac, n = +1
    Fd,
}

impl Stats {
    pub fn n(self) -> f64 {
        match self {
            Stats::Be => -1.0,
            Stats::Mb => 0.0,
            Stats::Fd => 1.0,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum)]
    pub shape: ShapeKind,
    /// Thermal exponent M (> 1).
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<f64>,
    /// Thermal statistics index n (>= -1); defaults to -1.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "stats")]
    pub n: Option<f64>,
    #[arg(long, value_enum)]
    pub stats: Option<Stats>,
    /// Quality factor for rlc and bvd.
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// BVD capacitance ratio r = C0/C.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Voigt gamma/sigma.
    #[arg(long, allow_negative_numbers = true)]
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct LevelArgs {
    /// Crossing level as a fraction of the peak (default 0.5).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "db")]
    pub level: Option<f64>,
    /// Crossing level in dB below the peak (3 dB is 10^-0.3, not exactly 1/2).
    #[arg(long, allow_negative_numbers = true)]
    pub db: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Logarithmic abscissa spacing (needs --from > 0).
    #[arg(long)]
    pub log: bool,
    /// Emit the small-X asymptote (X^(M-1) for n = -1, X^M/(1+n) otherwise)
    /// instead of the curve; thermal only.
    #[arg(long)]
    pub rj_asymptote: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PeakOf {
    /// Peak of X^3/(e^X - 1), the frequency-rule maximum.
    M3,
    /// Peak of X^5/(e^X - 1), the wavelength-rule maximum.
    M5,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("point").required(true).args(["x", "peak_of"])))]
pub struct ConvertArgs {
    /// Temperature in kelvin.
    #[arg(long, allow_negative_numbers = true)]
    pub temperature: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, value_enum)]
    pub peak_of: Option<PeakOf>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["q", "r", "decrement", "restitution"])))]
pub struct RlcArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    /// Series resistance in ohms (with --l and --c).
    #[arg(long, allow_negative_numbers = true, requires_all = ["l", "c"])]
    pub r: Option<f64>,
    /// Inductance in henry.
    #[arg(long, allow_negative_numbers = true, requires = "r")]
    pub l: Option<f64>,
    /// Capacitance in farad.
    #[arg(long, allow_negative_numbers = true, requires = "r")]
    pub c: Option<f64>,
    /// Logarithmic decrement δ; Q = π/δ.
    #[arg(long, allow_negative_numbers = true)]
    pub decrement: Option<f64>,
    /// Coefficient of restitution of a bounce.
    #[arg(long, allow_negative_numbers = true)]
    pub restitution: Option<f64>,
    /// Add a shunt capacitance C0 = r·C and report the BVD magnitude bandwidth.
    #[arg(long, allow_negative_numbers = true)]
    pub shunt_ratio: Option<f64>,
    #[command(flatten)]
    pub level: LevelArgs,
}
