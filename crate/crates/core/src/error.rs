use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid mode (n={n}, l={l}, m={m}): require |m| <= l")]
    InvalidMode { n: u32, l: u32, m: i32 },

    #[error(
        "operation would raise degree {degree} past cutoff {cutoff}; enlarge the cutoff instead of truncating"
    )]
    Truncation { degree: u32, cutoff: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("quadrature did not converge for {context}: error estimate {achieved:.3e} > target {target:.3e}")]
    Quadrature {
        context: String,
        achieved: f64,
        target: f64,
    },

    #[error("finite part paths disagree: limit {limit}, double integral {double_integral}")]
    FinitePartMismatch { limit: f64, double_integral: f64 },

    #[error("epsilon-limit did not converge after {halvings} halvings (last change {last_change:.3e})")]
    LimitNotConverged { halvings: u32, last_change: f64 },

    #[error("invalid kernel: {0}")]
    Kernel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
