//! Compact regions, grid sampling and derivative sup-norms.
//!
//! A region is a depth-1 constructive solid: discs and rectangles added and
//! subtracted in order. Norms are maxima over a finite grid (an h-net) of the
//! region's closure intersected with a disc about the origin, so every value
//! reported here is a lower bound for the true supremum and carries `h`.

use std::fmt;

use num::complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{FloatComplex, Tol};
use crate::series::{Analytic, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Disc { center: Complex64, radius: f64 },
    /// Axis-aligned, with `x0 <= x1` and `y0 <= y1`.
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
}

impl Shape {
    /// Signed distance: negative inside, positive outside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        match *self {
            Shape::Disc { center, radius } => (z - center).norm() - radius,
            Shape::Rect { x0, y0, x1, y1 } => {
                let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
                let (hx, hy) = ((x1 - x0) / 2.0, (y1 - y0) / 2.0);
                let dx = (z.re - cx).abs() - hx;
                let dy = (z.im - cy).abs() - hy;
                let outside = (dx.max(0.0).powi(2) + dy.max(0.0).powi(2)).sqrt();
                outside + dx.max(dy).min(0.0)
            }
        }
    }

    fn grown(&self, margin: f64) -> Shape {
        match *self {
            Shape::Disc { center, radius } => Shape::Disc { center, radius: (radius + margin).max(0.0) },
            Shape::Rect { x0, y0, x1, y1 } => {
                let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
                let hx = ((x1 - x0) / 2.0 + margin).max(0.0);
                let hy = ((y1 - y0) / 2.0 + margin).max(0.0);
                Shape::Rect { x0: cx - hx, y0: cy - hy, x1: cx + hx, y1: cy + hy }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompactRegion {
    parts: Vec<(Shape, Op)>,
    contains_origin: bool,
}

impl CompactRegion {
    pub fn new(parts: Vec<(Shape, Op)>) -> Result<Self> {
        if !parts.iter().any(|(_, op)| *op == Op::Add) {
            return Err(Error::InvalidArgument("region has no `add` part".into()));
        }
        for (shape, _) in &parts {
            let ok = match *shape {
                Shape::Disc { center, radius } => center.is_finite() && radius.is_finite() && radius > 0.0,
                Shape::Rect { x0, y0, x1, y1 } => [x0, y0, x1, y1].iter().all(|v| v.is_finite()) && x0 < x1 && y0 < y1,
            };
            if !ok {
                return Err(Error::InvalidArgument(format!("degenerate shape {shape:?}")));
            }
        }
        let mut region = CompactRegion { parts, contains_origin: false };
        region.contains_origin = region.signed_distance(Complex64::new(0.0, 0.0)) < 0.0;
        Ok(region)
    }

    /// The closed disc `|z - center| <= radius`.
    pub fn disc(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(vec![(Shape::Disc { center, radius }, Op::Add)])
    }

    pub fn parts(&self) -> &[(Shape, Op)] {
        &self.parts
    }

    /// 0 lies in the interior.
    pub fn contains_origin(&self) -> bool {
        self.contains_origin
    }

    /// Parts are applied in order: `add` unions, `sub` carves.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        self.parts.iter().fold(f64::INFINITY, |acc, (shape, op)| match op {
            Op::Add => acc.min(shape.signed_distance(z)),
            Op::Sub => acc.max(-shape.signed_distance(z)),
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.signed_distance(z) <= 0.0
    }

    /// Grow added parts and shrink subtracted parts by `margin`.
    pub fn inflate(&self, margin: f64) -> Result<Self> {
        let parts = self
            .parts
            .iter()
            .filter_map(|(shape, op)| match op {
                Op::Add => Some((shape.grown(margin), *op)),
                Op::Sub => {
                    let s = shape.grown(-margin);
                    let empty = match s {
                        Shape::Disc { radius, .. } => radius <= 0.0,
                        Shape::Rect { x0, y0, x1, y1 } => x0 >= x1 || y0 >= y1,
                    };
                    (!empty).then_some((s, *op))
                }
            })
            .collect();
        Self::new(parts)
    }

    /// A radius `r` with the closed disc `Δ̄(0, r)` inside the region (0 if the
    /// origin is not interior).
    pub fn origin_clearance(&self) -> f64 {
        (-self.signed_distance(Complex64::new(0.0, 0.0))).max(0.0)
    }

    /// Parse `add|sub disc <cx> <cy> <r>` / `add|sub rect <x0> <y0> <x1> <y1>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("region line {}: {msg}", lineno + 1));
            let f: Vec<&str> = line.split_whitespace().collect();
            let op = match f[0] {
                "add" => Op::Add,
                "sub" => Op::Sub,
                _ => return Err(err("expected `add` or `sub`")),
            };
            let nums: Vec<f64> = f[2..]
                .iter()
                .map(|s| s.parse::<f64>().map_err(|_| err("bad number")))
                .collect::<Result<_>>()?;
            let shape = match (f.get(1).copied(), nums.as_slice()) {
                (Some("disc"), &[cx, cy, r]) => Shape::Disc { center: Complex64::new(cx, cy), radius: r },
                (Some("rect"), &[x0, y0, x1, y1]) => {
                    Shape::Rect { x0: x0.min(x1), y0: y0.min(y1), x1: x0.max(x1), y1: y0.max(y1) }
                }
                _ => return Err(err("expected `disc cx cy r` or `rect x0 y0 x1 y1`")),
            };
            parts.push((shape, op));
        }
        Self::new(parts)
    }
}

impl fmt::Display for CompactRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (shape, op) in &self.parts {
            let op = match op {
                Op::Add => "add",
                Op::Sub => "sub",
            };
            match shape {
                Shape::Disc { center, radius } => writeln!(f, "{op} disc {} {} {}", center.re, center.im, radius)?,
                Shape::Rect { x0, y0, x1, y1 } => writeln!(f, "{op} rect {x0} {y0} {x1} {y1}")?,
            }
        }
        Ok(())
    }
}

/// Grid points of the region's closure within the disc of radius `radius`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSample {
    /// Sorted lexicographically by (re, im).
    pub points: Vec<Complex64>,
    pub h: f64,
    pub radius: f64,
}

impl GridSample {
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Sample `Ω̄ ∩ Δ̄(0, n)` on the grid `hℤ + ihℤ`.
pub fn sample_region(region: &CompactRegion, n: usize, h: f64) -> Result<GridSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("truncation radius n must be >= 1".into()));
    }
    sample_disc(region, n as f64, h)
}

/// As [`sample_region`] with a real truncation radius.
///
/// Points within `h/2` of the region (and of the disc) are kept, so the
/// boundary of the closure is covered.
pub fn sample_disc(region: &CompactRegion, radius: f64, h: f64) -> Result<GridSample> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("grid spacing must be positive, got {h}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let snap = h / 2.0;
    let m = ((radius + snap) / h).floor() as i64;
    let mut points = Vec::new();
    for i in -m..=m {
        for j in -m..=m {
            let z = Complex64::new(i as f64 * h, j as f64 * h);
            if z.norm() <= radius + snap && region.signed_distance(z) <= snap {
                points.push(z);
            }
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(GridSample { points, h, radius })
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub l: usize,
    /// Truncation radius of the sampled set.
    pub n: f64,
    pub value: f64,
    pub argmax: Complex64,
}

enum Difference<'a> {
    Zero,
    Rational(RationalFunction<FloatComplex>),
    Pair(&'a dyn Analytic, &'a dyn Analytic),
}

fn difference<'a>(f: &'a dyn Analytic, g: &'a dyn Analytic) -> Difference<'a> {
    if let (Some(a), Some(b)) = (f.exact_form(), g.exact_form()) {
        let d = a.sub_unreduced(&b);
        return if d.is_zero() { Difference::Zero } else { Difference::Rational(d.to_float()) };
    }
    if let (Some(a), Some(b)) = (f.float_form(), g.float_form()) {
        return Difference::Rational(a.sub_unreduced(&b));
    }
    Difference::Pair(f, g)
}

/// `‖f − g‖_{l}` on `sample` for every `l = 0..=l_max`.
///
/// Rational inputs are subtracted before sampling (exactly when both have
/// exact coefficients), so equal functions give exactly zero.
pub fn sup_norms(f: &dyn Analytic, g: &dyn Analytic, l_max: usize, sample: &GridSample) -> Result<Vec<NormReport>> {
    let first = *sample.points.first().ok_or(Error::EmptySample)?;
    let report = |l, value, argmax| NormReport { l, n: sample.radius, value, argmax };
    let diff = difference(f, g);
    if let Difference::Zero = diff {
        return Ok((0..=l_max).map(|l| report(l, 0.0, first)).collect());
    }

    let per_point: Vec<Vec<f64>> = sample
        .points
        .par_iter()
        .map(|&z| {
            let d: Vec<Complex64> = match &diff {
                Difference::Zero => unreachable!(),
                Difference::Rational(r) => r
                    .eval_jet(&FloatComplex(z), l_max, Tol::default())?
                    .into_iter()
                    .map(|x| x.0)
                    .collect(),
                Difference::Pair(f, g) => {
                    let a = f.derivatives(z, l_max)?;
                    let b = g.derivatives(z, l_max)?;
                    a.iter().zip(&b).map(|(x, y)| x - y).collect()
                }
            };
            let m: Vec<f64> = d.iter().map(|x| x.norm()).collect();
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::PoleAtSample { point: z });
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;

    Ok((0..=l_max)
        .map(|l| {
            // ties go to the earliest point, which is the lexicographically smallest
            let (best, value) = per_point
                .iter()
                .enumerate()
                .fold((0, -1.0), |acc, (i, m)| if m[l] > acc.1 { (i, m[l]) } else { acc });
            report(l, value, sample.points[best])
        })
        .collect())
}

/// `‖f − g‖_{l}` on `sample`.
pub fn sup_norm(f: &dyn Analytic, g: &dyn Analytic, l: usize, sample: &GridSample) -> Result<NormReport> {
    Ok(sup_norms(f, g, l, sample)?.pop().expect("l_max + 1 reports"))
}

/// The function that is identically zero.
pub struct ZeroFn;

impl Analytic for ZeroFn {
    fn derivatives(&self, _z: Complex64, order: usize) -> Result<Vec<Complex64>> {
        Ok(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    fn exact_form(&self) -> Option<RationalFunction<crate::scalar::ExactComplex>> {
        Some(RationalFunction::polynomial(crate::series::Polynomial::zero()))
    }

    fn float_form(&self) -> Option<RationalFunction<FloatComplex>> {
        Some(RationalFunction::polynomial(crate::series::Polynomial::zero()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RhoValue {
    /// Truncated sum over `l <= l_max`, `1 <= n <= n_max`.
    pub value: f64,
    /// Total weight of the omitted terms; `ρ ∈ [value, value + tail_bound]`.
    pub tail_bound: f64,
}

/// Weight of all `(l, n)` terms outside `l <= l_max`, `n <= n_max`.
pub fn rho_tail_bound(l_max: usize, n_max: usize) -> f64 {
    2.0 - (2.0 - 0.5f64.powi(l_max as i32)) * (1.0 - 0.5f64.powi(n_max as i32))
}

/// Smallest `k` with `rho_tail_bound(k, k) < eps / 2`; returned as `(L, N)`.
pub fn pick_truncation(eps: f64) -> (usize, usize) {
    let k = (1..64).find(|&k| rho_tail_bound(k, k) < eps / 2.0).unwrap_or(64);
    (k, k)
}

/// Truncated metric `Σ_{l<=L} Σ_{1<=n<=N} 2^{-(l+n)} min(‖f−g‖_{l,n}, 1)`.
pub fn rho_metric(
    f: &dyn Analytic,
    g: &dyn Analytic,
    region: &CompactRegion,
    l_max: usize,
    n_max: usize,
    h: f64,
) -> Result<RhoValue> {
    let mut value = 0.0;
    for n in 1..=n_max {
        let sample = sample_region(region, n, h)?;
        for r in sup_norms(f, g, l_max, &sample)? {
            value += 0.5f64.powi((r.l + n) as i32) * r.value.min(1.0);
        }
    }
    Ok(RhoValue { value, tail_bound: rho_tail_bound(l_max, n_max) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ExactComplex as Q, Scalar};
    use crate::series::Polynomial;

    fn origin() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn poly(c: &[i64]) -> Polynomial<Q> {
        Polynomial::new(c.iter().map(|&x| Q::from_i64(x)).collect())
    }

    #[test]
    fn disc_sample_is_snapped() {
        let unit = CompactRegion::disc(origin(), 1.0).unwrap();
        let s = sample_region(&unit, 2, 0.5).unwrap();
        assert!(s.points.iter().all(|z| z.norm() <= 1.25 + 1e-12));
        assert!(s.points.contains(&Complex64::new(1.0, 0.0)));
        assert!(!s.points.contains(&Complex64::new(1.5, 0.0)));

        let big = CompactRegion::disc(origin(), 10.0).unwrap();
        let s = sample_region(&big, 1, 0.1).unwrap();
        assert!(s.points.iter().all(|z| z.norm() <= 1.05 + 1e-12));
    }

    #[test]
    fn annulus_excludes_inner_points() {
        let region = CompactRegion::parse("add disc 0 0 3\nsub disc 0 0 1\n").unwrap();
        assert!(!region.contains_origin());
        let h = 0.25;
        let s = sample_region(&region, 2, h).unwrap();
        assert!(s.points.iter().all(|z| z.norm() >= 1.0 - h / 2.0 - 1e-12));
        assert!(s.points.contains(&Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn order_of_parts_matters() {
        let carved = CompactRegion::parse("add disc 0 0 2\nsub disc 0 0 1\n").unwrap();
        let refilled = CompactRegion::parse("add disc 0 0 2\nsub disc 0 0 1\nadd rect -0.5 -0.5 0.5 0.5\n").unwrap();
        assert!(!carved.contains(origin()));
        assert!(refilled.contains(origin()));
        assert!(refilled.contains_origin());
    }

    #[test]
    fn empty_sample_and_bad_input() {
        let far = CompactRegion::disc(Complex64::new(10.0, 0.0), 1.0).unwrap();
        assert_eq!(sample_region(&far, 1, 0.1), Err(Error::EmptySample));
        assert!(CompactRegion::parse("sub disc 0 0 1\n").is_err());
        assert!(CompactRegion::parse("add blob 0 0 1\n").is_err());
        assert!(sample_region(&far, 1, 0.0).is_err());
    }

    #[test]
    fn clearance_and_inflation() {
        let region = CompactRegion::parse("add disc 0 0 3\nsub disc 2 0 0.5\n").unwrap();
        assert!((region.origin_clearance() - 1.5).abs() < 1e-12);
        let wide = region.inflate(0.1).unwrap();
        assert!(wide.contains(Complex64::new(1.55, 0.0)));
        assert!(!region.contains(Complex64::new(1.55, 0.0)));
    }

    #[test]
    fn sup_norm_examples() {
        let unit = CompactRegion::disc(origin(), 1.0).unwrap();
        let h = 0.05;
        let s = sample_region(&unit, 1, h).unwrap();
        let z = poly(&[0, 1]);
        assert_eq!(sup_norm(&z, &z, 0, &s).unwrap().value, 0.0);
        let r = sup_norm(&z, &ZeroFn, 0, &s).unwrap();
        assert!((r.value - 1.0).abs() <= h * 2f64.sqrt());
        let r = sup_norm(&poly(&[0, 0, 1]), &ZeroFn, 1, &s).unwrap();
        assert!((r.value - 2.0).abs() <= 2.0 * h * 2f64.sqrt());
    }

    #[test]
    fn pole_on_sample_is_reported() {
        let unit = CompactRegion::disc(origin(), 1.0).unwrap();
        let s = sample_region(&unit, 1, 0.25).unwrap();
        let geo = RationalFunction::<Q>::geometric();
        assert!(matches!(sup_norm(&geo, &ZeroFn, 0, &s), Err(Error::PoleAtSample { .. })));
    }

    #[test]
    fn rho_constant_shift() {
        let unit = CompactRegion::disc(origin(), 1.0).unwrap();
        let f = RationalFunction::new(poly(&[0, 1, 3]), poly(&[2, 1])).unwrap();
        let g = f.add(&RationalFunction::polynomial(poly(&[1])));
        for n_max in [1usize, 3] {
            let rho = rho_metric(&f, &g, &unit, 2, n_max, 0.1).unwrap();
            assert_eq!(rho.value, 1.0 - 0.5f64.powi(n_max as i32));
            assert_eq!(rho.tail_bound, 2.0 - (2.0 - 0.25) * (1.0 - 0.5f64.powi(n_max as i32)));
            assert!(rho.value <= 1.0 && 1.0 <= rho.value + rho.tail_bound);
        }
        let same = rho_metric(&f, &f, &unit, 2, 2, 0.1).unwrap();
        assert_eq!(same.value, 0.0);
    }

    #[test]
    fn truncation_helper() {
        let (l, n) = pick_truncation(1e-2);
        assert!(rho_tail_bound(l, n) < 5e-3);
        assert!(rho_tail_bound(l - 1, n - 1) >= 5e-3);
        assert!(rho_tail_bound(0, 0) == 2.0);
    }
}
