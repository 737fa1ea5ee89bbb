//! Coefficient fields: exact Gaussian rationals and floating complex numbers.
//!
//! Every polynomial, series and determinant routine in the crate is generic
//! over [`Scalar`]. The exact field is ℚ(i) built from a pair of big
//! rationals; the float field wraps `Complex<f64>` and defers zero-tests to a
//! caller-provided threshold.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default relative zero-test threshold for float computations.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Relative tolerance used by float zero-tests. Ignored by exact scalars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol(pub f64);

impl Default for Tol {
    fn default() -> Self {
        Tol(DEFAULT_TOL)
    }
}

impl Tol {
    /// Absolute threshold for a computation whose magnitudes are of order `scale`.
    pub fn threshold(self, scale: f64) -> f64 {
        self.0 * scale
    }
}

/// A field of coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and equality is decidable.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_exact(x: &ExactComplex) -> Self;
    fn to_c64(&self) -> Complex64;
    fn to_exact(&self) -> Option<ExactComplex>;
    /// Exact zero test (bitwise zero for floats).
    fn is_zero(&self) -> bool;
    fn modulus(&self) -> f64;

    /// Zero under the active policy: exact zero for exact scalars,
    /// `|x| <= threshold` for floats.
    fn negligible(&self, threshold: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.is_zero() || self.modulus() <= threshold
        }
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }
}

/// Gaussian rational `re + im·i` with arbitrary-precision parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        ExactComplex { re, im: BigRational::zero() }
    }

    /// `n/d + 0i`. Panics if `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Gaussian rational `(a/b) + (c/d)i`.
    pub fn gaussian(a: i64, b: i64, c: i64, d: i64) -> Self {
        ExactComplex {
            re: BigRational::new(a.into(), b.into()),
            im: BigRational::new(c.into(), d.into()),
        }
    }

    /// `2^(-k)` as an exact real.
    pub fn pow2_neg(k: u32) -> Self {
        Self::real(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// Exact conversion of a finite float (every finite f64 is a dyadic rational).
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_f64(x).map(Self::real)
    }

    pub fn from_c64(z: Complex64) -> Option<Self> {
        Some(ExactComplex {
            re: BigRational::from_f64(z.re)?,
            im: BigRational::from_f64(z.im)?,
        })
    }

    pub fn conj(&self) -> Self {
        ExactComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by exact zero");
        ExactComplex { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for ExactComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        ExactComplex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ExactComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        ExactComplex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ExactComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return ExactComplex::real(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        ExactComplex { re, im }
    }
}

impl Div for ExactComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.im.is_zero() {
            assert!(!rhs.re.is_zero(), "division by exact zero");
            return ExactComplex { re: self.re / &rhs.re, im: self.im / rhs.re };
        }
        self * rhs.inv()
    }
}

impl Neg for ExactComplex {
    type Output = Self;
    fn neg(self) -> Self {
        ExactComplex { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for ExactComplex {
    /// `re`, or `re(+|-)|im|i` when the imaginary part is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl Scalar for ExactComplex {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::real(BigRational::zero())
    }
    fn one() -> Self {
        Self::real(BigRational::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }
    fn from_exact(x: &ExactComplex) -> Self {
        x.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn to_exact(&self) -> Option<ExactComplex> {
        Some(self.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::ratio(n, d)
    }
}

/// Double-precision complex scalar.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FloatComplex(pub Complex64);

impl FloatComplex {
    pub fn new(re: f64, im: f64) -> Self {
        FloatComplex(Complex64::new(re, im))
    }
}

impl From<Complex64> for FloatComplex {
    fn from(z: Complex64) -> Self {
        FloatComplex(z)
    }
}

impl Add for FloatComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        FloatComplex(self.0 + rhs.0)
    }
}

impl Sub for FloatComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        FloatComplex(self.0 - rhs.0)
    }
}

impl Mul for FloatComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        FloatComplex(self.0 * rhs.0)
    }
}

impl Div for FloatComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        FloatComplex(self.0 / rhs.0)
    }
}

impl Neg for FloatComplex {
    type Output = Self;
    fn neg(self) -> Self {
        FloatComplex(-self.0)
    }
}

impl fmt::Display for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im == 0.0 {
            return write!(f, "{re:e}");
        }
        let sign = if im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{re:e}{sign}{:e}i", im.abs())
    }
}

impl Scalar for FloatComplex {
    const EXACT: bool = false;

    fn zero() -> Self {
        FloatComplex(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        FloatComplex(Complex64::new(1.0, 0.0))
    }
    fn from_i64(n: i64) -> Self {
        FloatComplex(Complex64::new(n as f64, 0.0))
    }
    fn from_exact(x: &ExactComplex) -> Self {
        FloatComplex(x.to_c64())
    }
    fn to_c64(&self) -> Complex64 {
        self.0
    }
    fn to_exact(&self) -> Option<ExactComplex> {
        None
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn modulus(&self) -> f64 {
        self.0.norm()
    }
}

/// Parse one real part: `a/b`, an integer, or a decimal literal (read exactly).
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid number `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(n));
    }
    // decimal with optional exponent: exact value of the literal
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&digits).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::from_integer(num * num::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num::pow(ten, (-scale) as usize))
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = ExactComplex::gaussian(1, 2, 3, 1);
        let b = ExactComplex::gaussian(-2, 3, 1, 5);
        let q = a.clone() / b.clone();
        assert_eq!(q * b.clone(), a);
        assert_eq!((a.clone() - a.clone()), ExactComplex::zero());
        assert!(ExactComplex::zero().negligible(1.0));
        assert!(!ExactComplex::ratio(1, 1_000_000).negligible(1.0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactComplex::ratio(-1, 1).to_string(), "-1");
        assert_eq!(ExactComplex::gaussian(1, 2, -3, 4).to_string(), "1/2-3/4i");
        assert_eq!(ExactComplex::gaussian(0, 1, 1, 1).to_string(), "0+1i");
    }

    #[test]
    fn float_negligible_uses_threshold() {
        let x = FloatComplex::new(1e-13, 0.0);
        assert!(x.negligible(1e-12));
        assert!(!x.negligible(1e-14));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("1e-2").unwrap(), BigRational::new(1.into(), 100.into()));
        assert_eq!(parse_rational("12").unwrap(), BigRational::from_integer(12.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
