use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n = {n} exceeds the brute-force cap of {cap} (the output grows like 2^(n-1))")]
    CapExceeded { n: usize, cap: usize },

    #[error("series with zero constant term has no reciprocal")]
    NonInvertible,

    #[error("coefficient of z^{index} in {series} is not an integer: {value}")]
    NotIntegral {
        series: &'static str,
        index: usize,
        value: String,
    },

    #[error("coefficient of z^{index} in {series} is negative: {value}")]
    Negative {
        series: &'static str,
        index: usize,
        value: String,
    },

    #[error("argument {0} lies outside the open interval (0, 1)")]
    Domain(String),

    #[error("denominator has no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("derivative of the denominator at the root is numerically zero")]
    DegeneratePole,

    #[error("invalid precision: {0}")]
    Precision(String),

    #[error("{name} did not converge within {terms} terms")]
    NoConvergence { name: &'static str, terms: usize },
}
