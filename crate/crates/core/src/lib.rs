//! Padé approximation laboratory.
//!
//! Exact (Gaussian-rational) and floating computation of Padé approximants
//! from Taylor data, Hankel-determinant membership tests, derivative
//! sup-norms on sampled compact regions, and constructive witnesses showing
//! that a function can be approximated by its own Padé approximants.

pub mod error;
pub mod linalg;
pub mod norms;
pub mod pade;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod table;
pub mod witness;

pub use error::{Error, Result};
pub use pade::{PadeIndex, PadeResult};
pub use scalar::{ExactComplex, FloatComplex, Scalar, Tol};
pub use series::{Analytic, Builtin, Polynomial, PowerSeriesJet, RationalFunction};
