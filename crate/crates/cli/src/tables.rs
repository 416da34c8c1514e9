//! The four reference tables, recomputed from the engine on every call.

use clap::ValueEnum;
use qshape::{full_report, ConvergenceControl, LevelSpec, LineShape, ShapeAnalysis};
use serde::{Deserialize, Serialize};

use crate::format::{csv_writer, finish_csv, OutputFormat, Precision};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    #[value(name = "III")]
    III,
    #[value(name = "IV")]
    IV,
    #[value(name = "V")]
    V,
    #[value(name = "VI")]
    VI,
}

/// One table cell. Numeric cells keep the engine's value untouched next to
/// the string that is printed; text cells have no value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub value: Option<f64>,
    pub display: String,
}

impl Cell {
    fn text(s: &str) -> Self {
        Cell {
            value: None,
            display: s.to_string(),
        }
    }

    fn num(v: f64, p: Precision) -> Self {
        Cell {
            value: Some(v),
            display: p.render(v),
        }
    }

    /// A fraction shown as a percentage; `value` stays the raw fraction.
    fn percent(v: f64, p: Precision) -> Self {
        Cell {
            value: Some(v),
            display: p.render(100.0 * v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub label: String,
    pub cell: Cell,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub id: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<Note>,
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("table serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => {
                let mut w = csv_writer(Vec::new());
                w.write_record(&self.columns).expect("in-memory write");
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| c.display.as_str()))
                        .expect("in-memory write");
                }
                let blanks = self.columns.len().saturating_sub(2);
                for note in &self.notes {
                    let mut rec = vec![note.label.as_str(), note.cell.display.as_str()];
                    rec.extend(std::iter::repeat_n("", blanks));
                    w.write_record(rec).expect("in-memory write");
                }
                finish_csv(w)
            }
        }
    }

    fn render_text(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| width(c)).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(width(&c.display));
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - width(c))))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = format!("{}\n\n", self.title);
        out += &line(self.columns.iter().map(String::as_str).collect());
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out += &line(rule.iter().map(String::as_str).collect());
        for row in &self.rows {
            out += &line(row.iter().map(|c| c.display.as_str()).collect());
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for note in &self.notes {
                out += &format!("{} = {}\n", note.label, note.cell.display);
            }
        }
        out
    }
}

fn report(shape: LineShape, ctrl: &ConvergenceControl) -> Result<ShapeAnalysis, CliError> {
    full_report(&shape, LevelSpec::half_power(), ctrl).map_err(CliError::from)
}

fn eval(shape: &LineShape, x: f64, ctrl: &ConvergenceControl) -> Result<f64, CliError> {
    shape.evaluate(x, ctrl).map_err(CliError::from)
}

fn missing(what: &str) -> CliError {
    CliError::Numerical {
        stage: what.to_string(),
        message: "value undefined for this shape".into(),
    }
}

pub fn build(id: TableId, p: Precision, ctrl: &ConvergenceControl) -> Result<Table, CliError> {
    match id {
        TableId::III => table_iii(p, ctrl),
        TableId::IV => table_iv(p, ctrl),
        TableId::V => table_v(p, ctrl),
        TableId::VI => table_vi(p, ctrl),
    }
}

fn table_iii(p: Precision, ctrl: &ConvergenceControl) -> Result<Table, CliError> {
    let shape = LineShape::GeneralizedThermal { m: 3.0, n: -1.0 };
    let r = report(shape, ctrl)?;
    let median = r.x_median.ok_or_else(|| missing("median"))?;
    let row =
        |label: &str, x: f64, f: f64| vec![Cell::text(label), Cell::num(x, p), Cell::num(f, p)];
    Ok(Table {
        id: "III".into(),
        title: "Table III. Pertinent locations on the Planck curve Pl3(X) = X^3/(e^X - 1), frequency parameterization (M = 3)"
            .into(),
        columns: vec!["Location".into(), "X".into(), "Pl3(X)".into()],
        rows: vec![
            row("Lower 1/2-power X-", r.x_lower, eval(&shape, r.x_lower, ctrl)?),
            row("Peak Xp", r.x_peak, r.f_peak),
            row("50%-area divisor X50", median, eval(&shape, median, ctrl)?),
            row("Upper 1/2-power X+", r.x_upper, eval(&shape, r.x_upper, ctrl)?),
        ],
        notes: vec![
            Note {
                label: "Delta3 = X+ - X-".into(),
                cell: Cell::num(r.bandwidth, p),
            },
            Note {
                label: "Q3 = Xp/Delta3".into(),
                cell: Cell::num(r.q_direct, p),
            },
        ],
    })
}

fn table_iv(p: Precision, ctrl: &ConvergenceControl) -> Result<Table, CliError> {
    let shape = LineShape::GeneralizedThermal { m: 5.0, n: -1.0 };
    let r = report(shape, ctrl)?;
    let y = r
        .reciprocal_view()
        .ok_or_else(|| missing("reciprocal view"))?;
    let median = r.x_median.ok_or_else(|| missing("median"))?;
    let y_median = y.y_median.ok_or_else(|| missing("median"))?;
    let q_lambda = r.q_reciprocal.ok_or_else(|| missing("reciprocal Q"))?;
    // Y = 1/X leaves the ordinate unchanged, so Pl5(Y) is F at the companion X.
    let row = |label: &str, y: f64, f: f64, x: f64| {
        vec![
            Cell::text(label),
            Cell::num(y, p),
            Cell::num(f, p),
            Cell::num(x, p),
        ]
    };
    Ok(Table {
        id: "IV".into(),
        title: "Table IV. Pertinent locations on the Planck curve Pl5 = X^5/(e^X - 1), wavelength parameterization Y = 1/X (M = 5)"
            .into(),
        columns: vec!["Location".into(), "Y".into(), "Pl5(Y)".into(), "X".into()],
        rows: vec![
            row("Lower 1/2-power Y-", y.y_lower, eval(&shape, r.x_upper, ctrl)?, r.x_upper),
            row("50%-area divisor Y50", y_median, eval(&shape, median, ctrl)?, median),
            row("Peak Yp", y.y_peak, r.f_peak, r.x_peak),
            row("Upper 1/2-power Y+", y.y_upper, eval(&shape, r.x_lower, ctrl)?, r.x_lower),
        ],
        notes: vec![
            Note {
                label: "Delta5 = Y+ - Y-".into(),
                cell: Cell::num(y.y_bandwidth, p),
            },
            Note {
                label: "Q5(lambda) = Yp/Delta5".into(),
                cell: Cell::num(q_lambda, p),
            },
            Note {
                label: "Q5(nu) = Xp/(X+ - X-)".into(),
                cell: Cell::num(r.q_direct, p),
            },
        ],
    })
}

fn table_v(p: Precision, ctrl: &ConvergenceControl) -> Result<Table, CliError> {
    struct Row {
        name: &'static str,
        formula: &'static str,
        shape: LineShape,
        reciprocal_q: bool,
        comment: &'static str,
    }
    let thermal = |m, n| LineShape::GeneralizedThermal { m, n };
    let specs = [
        Row {
            name: "Gaussian",
            formula: "exp(-ln(2)*X^2)",
            shape: LineShape::Gaussian,
            reciprocal_q: false,
            comment: "1/2-power points at X = +-1",
        },
        Row {
            name: "Lorentzian",
            formula: "1/(1 + X^2)",
            shape: LineShape::Lorentzian,
            reciprocal_q: false,
            comment: "1/2-power points at X = +-1",
        },
        Row {
            name: "RLC/BVD",
            formula: "1/[1 + Q^2*(X - 1/X)^2]",
            shape: LineShape::RlcConductance { q: 1.0 },
            reciprocal_q: false,
            comment: "variable parameter Q; shown at Q = 1",
        },
        Row {
            name: "Bose-Einstein (Planck)",
            formula: "X^3/(e^X - 1)",
            shape: thermal(3.0, -1.0),
            reciprocal_q: false,
            comment: "nu dispersion",
        },
        Row {
            name: "Bose-Einstein (Planck)",
            formula: "X^5/(e^X - 1)",
            shape: thermal(5.0, -1.0),
            reciprocal_q: true,
            comment: "lambda dispersion; Q on Y = 1/X",
        },
        Row {
            name: "Maxwell-Boltzmann (Wien)",
            formula: "X^3/(e^X - 0)",
            shape: thermal(3.0, 0.0),
            reciprocal_q: false,
            comment: "nu dispersion",
        },
        Row {
            name: "Fermi-Dirac",
            formula: "X^3/(e^X + 1)",
            shape: thermal(3.0, 1.0),
            reciprocal_q: false,
            comment: "nu dispersion",
        },
    ];
    let mut rows = Vec::with_capacity(specs.len());
    for s in &specs {
        let r = report(s.shape, ctrl)?;
        let fraction = r.area_fraction.ok_or_else(|| missing("area fraction"))?;
        let q = if s.reciprocal_q {
            r.q_reciprocal.ok_or_else(|| missing("reciprocal Q"))?
        } else {
            r.q_direct
        };
        rows.push(vec![
            Cell::text(s.name),
            Cell::text(s.formula),
            Cell::percent(fraction, p),
            Cell::num(q, p),
            Cell::text(s.comment),
        ]);
    }
    Ok(Table {
        id: "V".into(),
        title: "Table V. Fraction of area between the 1/2-power points to total area, and Q, for several line shapes"
            .into(),
        columns: vec![
            "Line shape".into(),
            "F".into(),
            "Ratio (%)".into(),
            "Q".into(),
            "Comments".into(),
        ],
        rows,
        notes: vec![],
    })
}

fn table_vi(p: Precision, ctrl: &ConvergenceControl) -> Result<Table, CliError> {
    let mut rows = Vec::new();
    for (name, n) in [
        ("Bose-Einstein", -1.0),
        ("Maxwell-Boltzmann", 0.0),
        ("Fermi-Dirac", 1.0),
    ] {
        let r = report(LineShape::GeneralizedThermal { m: 3.0, n }, ctrl)?;
        rows.push(vec![
            Cell::text(name),
            Cell::num(n, p),
            Cell::num(r.x_lower, p),
            Cell::num(r.x_peak, p),
            Cell::num(r.x_upper, p),
            Cell::num(r.q_direct, p),
        ]);
    }
    Ok(Table {
        id: "VI".into(),
        title: "Table VI. Q by the 1/2-power method for X^3/(e^X + n), frequency parameterization (M = 3)".into(),
        columns: vec![
            "Statistics".into(),
            "n".into(),
            "X-".into(),
            "Xp".into(),
            "X+".into(),
            "Q".into(),
        ],
        rows,
        notes: vec![],
    })
}
