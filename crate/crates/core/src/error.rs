use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The continued fraction terminated: the point is rational and
    /// `B_σ` is `+∞` there.
    #[error("rational input: expansion terminates after {depth} quotients")]
    RationalInput { depth: usize },

    #[error("invalid continued-fraction spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("partial quotient {quotient} exceeds the cap of 10^12")]
    QuotientCap { quotient: String },

    /// The float-seeded expansion lost its accuracy budget before the
    /// requested depth.
    #[error("precision exhausted at depth {depth} (requested {requested})")]
    PrecisionExhausted { depth: usize, requested: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Interval evaluation could not decide a sign or a bound.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("insufficient decay: {0}")]
    InsufficientDecay(String),
}
