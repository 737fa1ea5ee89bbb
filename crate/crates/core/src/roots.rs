//! Polynomial roots as eigenvalues of the companion matrix.

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::scalar::Scalar;
use crate::series::Polynomial;

/// All complex roots of `p` (with multiplicity), in float.
///
/// Companion-matrix eigenvalues are polished with a few Newton steps. The zero
/// polynomial and nonzero constants have no roots.
pub fn roots<S: Scalar>(p: &Polynomial<S>) -> Vec<Complex64> {
    let c: Vec<Complex64> = p.coeffs().iter().map(Scalar::to_c64).collect();
    let Some(n) = c.len().checked_sub(1) else {
        return Vec::new();
    };
    // factor out roots at the origin exactly
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c = &c[zeros..];
    let m = n - zeros;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if m == 0 {
        return out;
    }
    let lead = c[m];
    let companion = DMatrix::<Complex64>::from_fn(m, m, |i, j| {
        if j == m - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion.schur().eigenvalues().map(|v| v.iter().copied().collect::<Vec<_>>());
    let raw = eig.unwrap_or_else(|| durand_kerner(c));
    out.extend(raw.into_iter().map(|z| polish(c, z)));
    out
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        der = der * z + val;
        val = val * z + a;
    }
    (val, der)
}

fn polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..3 {
        let (v, d) = horner(c, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = v / d;
        if !step.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
            break;
        }
        z -= step;
    }
    z
}

fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let m = c.len() - 1;
    let lead = c[m];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..m].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..m).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..500 {
        let prev = z.clone();
        for i in 0..m {
            let (v, _) = horner(&monic, z[i]);
            let denom = (0..m).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            z[i] -= v / denom;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15 * (1.0 + a.norm())) {
            break;
        }
    }
    z
}
