//! Number rendering shared by every output format.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Significant digits used when a float becomes text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(usize);

impl Precision {
    /// Six significant digits, the resolution of the published tables.
    pub const DISPLAY: Precision = Precision(6);
    /// Seventeen digits: enough to recover the exact binary value.
    pub const FULL: Precision = Precision(17);

    pub fn from_flag(full: bool) -> Self {
        if full {
            Self::FULL
        } else {
            Self::DISPLAY
        }
    }

    pub fn digits(self) -> usize {
        self.0
    }

    /// Fixed notation for moderate magnitudes, scientific otherwise; trailing
    /// zeros are dropped so `3.00000` prints as `3`.
    pub fn render(self, v: f64) -> String {
        if v.is_nan() {
            return "nan".into();
        }
        if v.is_infinite() {
            return if v > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if v == 0.0 {
            return "0".into();
        }
        let sig = self.0;
        let sci = format!("{:.*e}", sig - 1, v);
        let (mantissa, exp) = sci.split_once('e').expect("exponent form");
        let exp: i32 = exp.parse().expect("integer exponent");
        if (-5..sig as i32).contains(&exp) {
            let decimals = (sig as i32 - 1 - exp).max(0) as usize;
            trim_zeros(&format!("{v:.decimals$}")).to_string()
        } else {
            format!("{}e{exp}", trim_zeros(mantissa))
        }
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Plain CSV writer: `.` decimals, LF line endings, minimal quoting.
pub fn csv_writer(out: Vec<u8>) -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory CSV flush cannot fail");
    String::from_utf8(bytes).expect("CSV built from UTF-8 strings")
}
