use num::complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("denominator vanishes at the origin")]
    DenominatorVanishesAtOrigin,

    #[error("denominator vanishes at sample point {point}")]
    PoleAtSample { point: Complex64 },

    #[error("truncation too short: need order {needed}, have {available}")]
    TruncationTooShort { needed: usize, available: usize },

    #[error("determinant condition is vacuous for q = 0")]
    QZero,

    #[error("not in D_{{{p},{q}}}{}", if *.degenerate { " (numerically degenerate)" } else { "" })]
    NotInDpq { p: usize, q: usize, degenerate: bool },

    #[error("expanded Jacobi denominator vanishes at 0")]
    DegenerateNormalization,

    #[error("no admissible perturbation parameter among {tried} candidates")]
    NoAdmissibleD { tried: usize },

    #[error("sample set is empty")]
    EmptySample,

    #[error("no usable (p, q) in the frontier set")]
    NoUsableIndex,

    #[error("stability probe exhausted {halvings} halvings")]
    StabilityBudgetExceeded { halvings: usize },

    #[error("partial sums did not reach the tolerance by order {cap} (last norm {last_norm:e})")]
    TruncationDiverged { cap: usize, last_norm: f64 },

    #[error("witness poles intrude on the sampled region after {retries} retries")]
    PoleIntrusion { retries: usize },

    #[error("parameter search did not converge after {retries} retries")]
    SearchExhausted { retries: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
