use thiserror::Error;

/// Errors raised by evaluators, oracles and the certification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge after {terms} terms ({what})")]
    NonConvergence { what: &'static str, terms: usize },
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),
    #[error("cancellation loss: {0}")]
    CancellationLoss(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("finite-difference stencil leaves the domain at x = {x} (step {step})")]
    StepUnderflow { x: f64, step: f64 },
    #[error("oracle quadrature exceeded its panel budget of {0}")]
    PanelBudgetExceeded(usize),
    #[error("record {id}: {source}")]
    Record { id: String, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
