use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Error classes shared by every module.
///
/// The distinction matters to callers: `Domain`/`Pole` flag invalid inputs,
/// `Data` flags missing or malformed arithmetic data (coefficient horizons,
/// prime coverage, parse problems), `Precision` flags a numerical procedure
/// that did not converge to its target, `Config` flags an inconsistent
/// parameter set, and `LemmaViolation` flags a scan that failed to produce
/// a witness an existence lemma guarantees (never expected on valid input).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// Evaluation requested at a pole.
    Pole(String),
    /// Required data is missing, out of range, or malformed.
    Data(String),
    /// A numerical procedure failed to reach its accuracy target.
    Precision(String),
    /// Parameter set violates the operation's configuration contract.
    Config(String),
    /// An exhaustive scan found no witness where one is guaranteed.
    LemmaViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Pole(m) => write!(f, "pole error: {m}"),
            Error::Data(m) => write!(f, "data error: {m}"),
            Error::Precision(m) => write!(f, "precision error: {m}"),
            Error::Config(m) => write!(f, "config error: {m}"),
            Error::LemmaViolation(m) => write!(f, "lemma violation: {m}"),
        }
    }
}

impl core::error::Error for Error {}
