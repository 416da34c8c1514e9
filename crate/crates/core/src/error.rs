use thiserror::Error;

/// Failures raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative method did not reach its tolerance.
    #[error("{method} did not converge after {iterations} iterations (estimate {estimate:e})")]
    Convergence {
        method: &'static str,
        iterations: usize,
        estimate: f64,
    },

    /// A root search could not bracket a sign change.
    #[error("no sign change found for {what}")]
    NoBracket { what: &'static str },

    /// The curve has no interior maximum in the search window.
    #[error("no resonant peak in ({lo}, {hi})")]
    NoResonantPeak { lo: f64, hi: f64 },

    /// The curve never falls to the requested level on one side of the peak.
    #[error("level {level:e} is not crossed on the {side} side of the peak")]
    LevelNotCrossed { side: &'static str, level: f64 },

    /// An analysis sub-step failed; `stage` names which one.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// Innermost error, with stage labels stripped.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root_cause(),
            other => other,
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self.root_cause(), Error::Domain { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Attach a stage label to the error of a fallible step.
pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| match e {
            // keep the outermost label only
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        })
    }
}
