use std::str::FromStr;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{ExactComplex, FloatComplex, Scalar, Tol};

use super::jet::PowerSeriesJet;
use super::poly::Polynomial;
use super::rational::RationalFunction;

/// Anything whose derivatives can be evaluated at complex points.
///
/// `exact_form`/`float_form` let the norm routines subtract two rational
/// functions symbolically before sampling, so identical functions give an
/// exactly zero distance.
pub trait Analytic: Sync {
    /// `(f(z), f'(z), …, f^(order)(z))`.
    fn derivatives(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>>;

    fn exact_form(&self) -> Option<RationalFunction<ExactComplex>> {
        None
    }

    fn float_form(&self) -> Option<RationalFunction<FloatComplex>> {
        None
    }
}

impl<S: Scalar> Analytic for RationalFunction<S> {
    fn derivatives(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        let d = self.to_float().eval_jet(&FloatComplex(z), order, Tol::default())?;
        Ok(d.into_iter().map(|x| x.0).collect())
    }

    fn exact_form(&self) -> Option<RationalFunction<ExactComplex>> {
        let num = self.num().coeffs().iter().map(Scalar::to_exact).collect::<Option<Vec<_>>>()?;
        let den = self.den().coeffs().iter().map(Scalar::to_exact).collect::<Option<Vec<_>>>()?;
        Some(RationalFunction::raw(Polynomial::new(num), Polynomial::new(den)))
    }

    fn float_form(&self) -> Option<RationalFunction<FloatComplex>> {
        Some(self.to_float())
    }
}

impl<S: Scalar> Analytic for Polynomial<S> {
    fn derivatives(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        let p = self.to_float();
        Ok((0..=order).map(|l| p.derivative(l).eval(&FloatComplex(z)).0).collect())
    }

    fn exact_form(&self) -> Option<RationalFunction<ExactComplex>> {
        RationalFunction::polynomial(self.clone()).exact_form()
    }

    fn float_form(&self) -> Option<RationalFunction<FloatComplex>> {
        Some(RationalFunction::polynomial(self.to_float()))
    }
}

/// Series whose coefficients are known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `e^z`
    Exp,
    /// `1/(1-z)`
    Geometric,
    /// `log(1+z)`, principal branch
    Log1p,
}

impl Builtin {
    /// Exact Taylor coefficients through `z^order`.
    pub fn jet(self, order: usize) -> PowerSeriesJet<ExactComplex> {
        match self {
            Builtin::Exp => {
                let mut c = ExactComplex::one();
                PowerSeriesJet::from_fn(order, |v| {
                    if v > 0 {
                        c = c.clone() / ExactComplex::from_i64(v as i64);
                    }
                    c.clone()
                })
            }
            Builtin::Geometric => PowerSeriesJet::from_fn(order, |_| ExactComplex::one()),
            Builtin::Log1p => PowerSeriesJet::from_fn(order, |v| match v {
                0 => ExactComplex::zero(),
                v if v % 2 == 1 => ExactComplex::ratio(1, v as i64),
                v => ExactComplex::ratio(-1, v as i64),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Exp => "exp",
            Builtin::Geometric => "geometric",
            Builtin::Log1p => "log1p",
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix("builtin:").unwrap_or(s) {
            "exp" => Ok(Builtin::Exp),
            "geometric" => Ok(Builtin::Geometric),
            "log1p" => Ok(Builtin::Log1p),
            other => Err(Error::InvalidArgument(format!("unknown builtin `{other}`"))),
        }
    }
}

impl Analytic for Builtin {
    fn derivatives(&self, z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        match self {
            Builtin::Exp => Ok(vec![z.exp(); order + 1]),
            Builtin::Geometric => RationalFunction::<ExactComplex>::geometric().derivatives(z, order),
            Builtin::Log1p => {
                let w = Complex64::new(1.0, 0.0) + z;
                if w.norm() == 0.0 {
                    return Err(Error::PoleAtSample { point: z });
                }
                let mut out = vec![w.ln()];
                let mut fact = 1.0;
                for l in 1..=order {
                    if l > 1 {
                        fact *= (l - 1) as f64;
                    }
                    let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
                    out.push(sign * fact / w.powu(l as u32));
                }
                Ok(out)
            }
        }
    }

    fn exact_form(&self) -> Option<RationalFunction<ExactComplex>> {
        match self {
            Builtin::Geometric => Some(RationalFunction::geometric()),
            _ => None,
        }
    }

    fn float_form(&self) -> Option<RationalFunction<FloatComplex>> {
        self.exact_form().map(|r| r.to_float())
    }
}

impl RationalFunction<ExactComplex> {
    /// `1/(1-z)`
    pub fn geometric() -> Self {
        RationalFunction::raw(
            Polynomial::constant(ExactComplex::one()),
            Polynomial::new(vec![ExactComplex::one(), ExactComplex::from_i64(-1)]),
        )
    }
}
