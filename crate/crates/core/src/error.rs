use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or polynomial parameter is outside its admissible range.
    #[error("parameter-domain: {0}")]
    ParameterDomain(String),

    #[error("unknown parameter '{name}' for {family}; accepted: {accepted}")]
    UnknownParameter {
        name: String,
        family: String,
        accepted: String,
    },

    #[error("missing parameter '{name}' for {family}")]
    MissingParameter { name: String, family: String },

    #[error("unknown tag '{0}'")]
    UnknownTag(String),

    #[error("domain: x={x} outside ({lo}, {hi})")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("bracket: no sign change on [{lo}, {hi}] (f_lo={f_lo}, f_hi={f_hi})")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("evaluation: non-finite value at x={0}")]
    Evaluation(f64),

    /// The radicand went negative inside the integration interval.
    #[error("integrand-sign: Q({x})={value} < 0 inside the turning points")]
    IntegrandSign { x: f64, value: f64 },

    #[error("accuracy: no convergence after {evaluations} evaluations (best={best}, err={error})")]
    Accuracy {
        best: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("no-bound-state: level {n} does not exist (n_max={n_max:?})")]
    NoBoundState { n: usize, n_max: Option<usize> },

    #[error("plateau: E={energy} is not below the asymptotic limit {limit} of W^2")]
    Plateau { energy: f64, limit: f64 },

    #[error("domain-edge: turning-point search left the domain ({0})")]
    DomainEdge(String),

    #[error("capability: {0}")]
    Capability(String),

    #[error("search-bound: {0}")]
    SearchBound(String),

    #[error("trial-energy-out-of-range: E={energy}: {reason}")]
    TrialEnergyOutOfRange { energy: f64, reason: String },

    #[error("grid-mismatch: {0}")]
    GridMismatch(String),
}

impl Error {
    /// True for failures of the numerical machinery as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Bracket { .. }
                | Error::Evaluation(_)
                | Error::IntegrandSign { .. }
                | Error::Accuracy { .. }
                | Error::DomainEdge(_)
                | Error::SearchBound(_)
        )
    }
}
