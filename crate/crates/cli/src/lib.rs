//! Library half of the `qshape` command: argument model, report types and
//! rendering. `main.rs` only parses, runs and maps errors to exit codes.

pub mod args;
pub mod commands;
pub mod format;
pub mod report;
pub mod tables;

use qshape::{ConvergenceControl, Error};
use thiserror::Error;

/// Environment variable that overrides the relative tolerance.
pub const TOL_ENV: &str = "Q_ANALYZER_TOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure in stage '{stage}': {message}")]
    Numerical { stage: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for usage errors, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical { .. } => 3,
        }
    }
}

impl From<Error> for CliError {
    /// Bad parameters surface as usage errors; everything else is a
    /// numerical failure labelled with the analysis stage that raised it.
    fn from(e: Error) -> Self {
        if e.is_domain() {
            return CliError::Usage(e.root_cause().to_string());
        }
        match e {
            Error::Stage { stage, source } => CliError::Numerical {
                stage: stage.to_string(),
                message: source.root_cause().to_string(),
            },
            other => CliError::Numerical {
                stage: "evaluation".into(),
                message: other.to_string(),
            },
        }
    }
}

/// Default control, with the relative tolerance taken from `Q_ANALYZER_TOL`
/// when that variable is set.
pub fn control_from_env(var: Option<String>) -> Result<ConvergenceControl, CliError> {
    match var {
        None => Ok(ConvergenceControl::default()),
        Some(s) => {
            let tol: f64 = s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("{TOL_ENV}={s:?} is not a number")))?;
            ConvergenceControl::with_rel_tol(tol)
                .map_err(|e| CliError::usage(format!("{TOL_ENV}: {e}")))
        }
    }
}
