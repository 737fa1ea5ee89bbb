//! Constructive witnesses for the generic Padé-approximability results.
//!
//! A witness is a function `f` close to a given polynomial or rational target
//! whose own `[p/q]` approximant is close to `f`. Every inequality is checked
//! on a finite grid and the grid spacing is recorded in the certificate.

use std::fmt::{self, Write as _};

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::norms::{sample_disc, sample_region, sup_norms, CompactRegion, GridSample, NormReport, ZeroFn};
use crate::pade::{admissible_d, default_d_candidates, pade_jacobi, PadeIndex};
use crate::roots::roots;
use crate::scalar::{ExactComplex as Q, FloatComplex, Scalar, Tol};
use crate::series::{Polynomial, PowerSeriesJet, RationalFunction};

/// Retry cap for the geometric shrinking of `c` and `d`.
pub const SHRINK_RETRIES: usize = 60;
/// Halving cap for [`stability_probe`].
pub const PROBE_HALVINGS: usize = 50;
const PROBE_SHRINK: f64 = 0.999;

/// Finite, nonempty list of candidate indices, tried in order.
#[derive(Clone, Debug, PartialEq)]
pub struct FrontierSet {
    pairs: Vec<PadeIndex>,
}

impl FrontierSet {
    pub fn new(pairs: Vec<PadeIndex>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("frontier set is empty".into()));
        }
        Ok(FrontierSet { pairs })
    }

    pub fn pairs(&self) -> &[PadeIndex] {
        &self.pairs
    }

    /// One `p q` pair per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let parsed = match f.as_slice() {
                [p, q] => p.parse().ok().zip(q.parse().ok()),
                _ => None,
            };
            let (p, q) = parsed.ok_or_else(|| Error::Parse(format!("frontier line {}: expected `p q`", lineno + 1)))?;
            pairs.push(PadeIndex::new(p, q));
        }
        Self::new(pairs)
    }
}

/// Caller-supplied accuracy parameters shared by both constructions.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessParams {
    /// Closeness budget `ε`.
    pub eps: f64,
    /// Highest derivative order `L` in the closeness check.
    pub l_max: usize,
    /// Truncation radius `N` of the closeness check.
    pub n_max: usize,
    /// Truncation radius `n` of the E-membership check.
    pub n: usize,
    /// E-membership requires norms `< 1/s` for `l <= s`.
    pub s: usize,
    pub h: f64,
    pub trials: usize,
    pub seed: u64,
    /// Recorded only; never checked.
    pub simply_connected: bool,
}

impl WitnessParams {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return bad("eps must be positive");
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return bad("h must be positive");
        }
        if self.n == 0 || self.n_max == 0 {
            return bad("n and N must be >= 1");
        }
        if self.s == 0 {
            return bad("s must be >= 1");
        }
        if self.trials == 0 {
            return bad("trials must be >= 1");
        }
        Ok(())
    }

    fn lambda(&self) -> usize {
        self.n.max(self.n_max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `f = P + d·z^p`.
    PolynomialShift,
    /// `f = S_k0((P + d·z^p) / (1 − (cz)^q))`.
    PolynomialTruncated,
    /// `f = (A + d·z^p) / (B − (cz)^q)`.
    Rational,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::PolynomialShift => "polynomial-shift",
            Construction::PolynomialTruncated => "polynomial-truncated",
            Construction::Rational => "rational",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormKind {
    /// `‖f̃ − target‖_{l,N}` against `ε/2`.
    Intermediate,
    /// `‖f − f̃‖_{l,λ}` against `δ`.
    Truncation,
    /// `‖[p/q]_f − f‖_{l,n}` against `1/s`.
    EMembership,
    /// `‖f − target‖_{l,N}` against `ε`.
    Closeness,
}

impl NormKind {
    pub fn name(self) -> &'static str {
        match self {
            NormKind::Intermediate => "intermediate",
            NormKind::Truncation => "truncation",
            NormKind::EMembership => "e_membership",
            NormKind::Closeness => "closeness",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedNorm {
    pub kind: NormKind,
    pub report: NormReport,
    pub bound: f64,
    pub pass: bool,
}

fn certify(kind: NormKind, reports: Vec<NormReport>, bound: f64) -> Vec<CertifiedNorm> {
    reports
        .into_iter()
        .map(|report| CertifiedNorm { kind, pass: report.value < bound, report, bound })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessCertificate {
    pub construction: Construction,
    pub target: RationalFunction<Q>,
    pub chosen: PadeIndex,
    pub c: Q,
    pub d: Q,
    pub k0: Option<usize>,
    /// Truncation budget from the stability probe (truncated construction only).
    pub delta: Option<f64>,
    /// Intermediate rational function, when different from `f`.
    pub f_tilde: Option<RationalFunction<Q>>,
    pub f: RationalFunction<Q>,
    /// Poles of `f`, in float.
    pub poles: Vec<Complex64>,
    pub norms: Vec<CertifiedNorm>,
    /// `[p/q]` of the rational stage reproduces it exactly.
    pub pade_idempotent: bool,
    pub e_membership: bool,
    pub closeness: bool,
    pub params: WitnessParams,
    pub retries: usize,
}

impl WitnessCertificate {
    pub fn passed(&self) -> bool {
        self.e_membership && self.closeness
    }

    /// `PASS|FAIL p q c d k0 h`.
    pub fn summary(&self) -> String {
        let k0 = self.k0.map_or_else(|| "none".to_string(), |k| k.to_string());
        format!(
            "{} {} {} {} {} {} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.chosen.p,
            self.chosen.q,
            self.c,
            self.d,
            k0,
            self.params.h
        )
    }
}

fn poly_line<S: Scalar>(p: &Polynomial<S>) -> String {
    crate::series::text::format_coeffs(p)
}

impl fmt::Display for WitnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("result", if self.passed() { "PASS" } else { "FAIL" }.into());
        kv("construction", self.construction.name().into());
        kv("target.num", poly_line(self.target.num()));
        kv("target.den", poly_line(self.target.den()));
        kv("p", self.chosen.p.to_string());
        kv("q", self.chosen.q.to_string());
        kv("c", self.c.to_string());
        kv("d", self.d.to_string());
        kv("k0", self.k0.map_or_else(|| "none".into(), |k| k.to_string()));
        kv("delta", self.delta.map_or_else(|| "none".into(), |d| format!("{d:e}")));
        if let Some(ft) = &self.f_tilde {
            kv("f_tilde.num", poly_line(ft.num()));
            kv("f_tilde.den", poly_line(ft.den()));
        }
        kv("f.num", poly_line(self.f.num()));
        kv("f.den", poly_line(self.f.den()));
        let poles: Vec<String> = self.poles.iter().map(|z| format!("{:e},{:e}", z.re, z.im)).collect();
        kv("f.poles", if poles.is_empty() { "none".into() } else { poles.join(" ") });
        kv("eps", format!("{:e}", p.eps));
        kv("L", p.l_max.to_string());
        kv("N", p.n_max.to_string());
        kv("n", p.n.to_string());
        kv("s", p.s.to_string());
        kv("grid_h", p.h.to_string());
        kv("seed", p.seed.to_string());
        kv("trials", p.trials.to_string());
        kv("simply_connected_asserted", p.simply_connected.to_string());
        kv("retries", self.retries.to_string());
        kv("pade_idempotent", self.pade_idempotent.to_string());
        kv("e_membership", self.e_membership.to_string());
        kv("closeness", self.closeness.to_string());
        for (i, n) in self.norms.iter().enumerate() {
            kv(&format!("norm.{i}.kind"), n.kind.name().into());
            kv(&format!("norm.{i}.l"), n.report.l.to_string());
            kv(&format!("norm.{i}.n"), n.report.n.to_string());
            kv(&format!("norm.{i}.value"), format!("{:e}", n.report.value));
            kv(&format!("norm.{i}.bound"), format!("{:e}", n.bound));
            kv(&format!("norm.{i}.argmax"), format!("{:e},{:e}", n.report.argmax.re, n.report.argmax.im));
            kv(&format!("norm.{i}.pass"), n.pass.to_string());
        }
        kv("summary", self.summary());
        f.write_str(&out)
    }
}

/// `max_{l<=s} ‖[p/q]_f − f‖_{l,n} < 1/s` on the h-net of `Ω̄ ∩ Δ̄(0,n)`.
pub fn certify_e_membership<S: Scalar>(
    f: &RationalFunction<S>,
    idx: PadeIndex,
    n: usize,
    s: usize,
    region: &CompactRegion,
    h: f64,
) -> Result<(bool, Vec<NormReport>)> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be >= 1".into()));
    }
    let tol = Tol::default();
    let jet = f.taylor(idx.p + idx.q, tol)?;
    let pade = pade_jacobi(&jet, idx, tol)?;
    let sample = sample_region(region, n, h)?;
    let reports = sup_norms(&pade.approximant, f, s, &sample)?;
    let ok = reports.iter().all(|r| r.value < 1.0 / s as f64);
    Ok((ok, reports))
}

fn first_index(frontier: &FrontierSet, ok: impl Fn(PadeIndex) -> bool) -> Result<PadeIndex> {
    frontier.pairs().iter().copied().find(|&i| ok(i)).ok_or(Error::NoUsableIndex)
}

fn exceeds(deg: Option<usize>, k: usize) -> bool {
    deg.is_none_or(|d| k > d)
}

/// Largest `2^-k`, `k >= 1`, strictly below `bound`.
fn power_of_two_below(bound: f64) -> Result<(u32, Q)> {
    if bound.is_nan() || bound <= 0.0 {
        return Err(Error::InvalidArgument(format!("no positive parameter below {bound:e}")));
    }
    let k = (1..1000u32)
        .find(|&k| 0.5f64.powi(k as i32) < bound)
        .ok_or_else(|| Error::InvalidArgument(format!("bound {bound:e} too small")))?;
    Ok((k, Q::pow2_neg(k)))
}

fn pow(x: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * x.clone())
}

/// `1 − c^q z^q` or, in general, `B − c^q z^q`.
fn shifted_den(b: &Polynomial<Q>, c: &Q, q: usize) -> Polynomial<Q> {
    b - &Polynomial::monomial(pow(c, q), q)
}

fn pade_reproduces(f: &RationalFunction<Q>, idx: PadeIndex) -> Result<bool> {
    let tol = Tol::default();
    let jet = f.taylor(idx.p + idx.q, tol)?;
    Ok(pade_jacobi(&jet, idx, tol)?.approximant == f.reduced())
}

struct ShrinkOutcome {
    c: Q,
    d: Q,
    f_tilde: RationalFunction<Q>,
    norms: Vec<NormReport>,
    retries: usize,
}

/// The `j`-indexed sequence: `c_j = c_0 / 2^j`, `d_j` admissible below `c_j`.
#[allow(clippy::too_many_arguments)]
fn shrink_search(
    num: &Polynomial<Q>,
    den: &Polynomial<Q>,
    target: &RationalFunction<Q>,
    idx: PadeIndex,
    c0: Q,
    budget: f64,
    params: &WitnessParams,
    net_n: &GridSample,
    mut reject: impl FnMut(&RationalFunction<Q>) -> bool,
) -> Result<ShrinkOutcome> {
    let tol = Tol::default();
    let order = idx.p + idx.q;
    let zp = Polynomial::monomial(Q::one(), idx.p);
    let half = Q::ratio(1, 2);
    let mut c = c0;
    let mut intrusions = 0;
    for j in 0..=SHRINK_RETRIES {
        let den_j = shifted_den(den, &c, idx.q);
        let base = RationalFunction::new(num.clone(), den_j.clone())?.taylor(order, tol)?;
        let direction = RationalFunction::new(zp.clone(), den_j.clone())?.taylor(order, tol)?;
        let candidates = default_d_candidates(&(c.clone() * half.clone()), idx.q);
        let d = admissible_d(&base, &direction, idx, &candidates, tol)?;
        let f_tilde = RationalFunction::new(num + &Polynomial::monomial(d.clone(), idx.p), den_j)?;
        if reject(&f_tilde) {
            intrusions += 1;
        } else {
            let norms = sup_norms(&f_tilde, target, params.l_max, net_n)?;
            if norms.iter().all(|r| r.value < budget) {
                return Ok(ShrinkOutcome { c, d, f_tilde, norms, retries: j });
            }
        }
        c = c * half.clone();
    }
    if intrusions > 0 {
        Err(Error::PoleIntrusion { retries: SHRINK_RETRIES })
    } else {
        Err(Error::SearchExhausted { retries: SHRINK_RETRIES })
    }
}

fn float_poles(f: &RationalFunction<Q>) -> Vec<Complex64> {
    let mut p = roots(f.den());
    p.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    p
}

/// Witness close to the polynomial `target` whose `[p/q]` approximant is close
/// to itself, for the first `(p, q)` in `frontier` with `p > deg target`.
pub fn witness_from_polynomial(
    target: &Polynomial<Q>,
    params: &WitnessParams,
    frontier: &FrontierSet,
    region: &CompactRegion,
) -> Result<WitnessCertificate> {
    params.validate()?;
    let idx = first_index(frontier, |i| exceeds(target.degree(), i.p))?;
    let target_rf = RationalFunction::polynomial(target.clone());
    let net_big_n = sample_region(region, params.n_max, params.h)?;
    let mut norms = Vec::new();

    let (construction, c, d, k0, delta, f_tilde, f, pade_idempotent, retries) = if idx.q == 0 {
        let zp = Polynomial::<Q>::monomial(Q::one(), idx.p);
        let m = sup_norms(&zp, &ZeroFn, params.l_max, &net_big_n)?
            .iter()
            .map(|r| r.value)
            .fold(0.0, f64::max);
        let d = if m == 0.0 { Q::one() } else { power_of_two_below(params.eps / m)?.1 };
        let f = RationalFunction::polynomial(target + &Polynomial::monomial(d.clone(), idx.p));
        let idempotent = pade_reproduces(&f, idx)?;
        (Construction::PolynomialShift, Q::zero(), d, None, None, None, f, idempotent, 0)
    } else {
        if !region.contains_origin() {
            return Err(Error::InvalidArgument("region must contain the origin".into()));
        }
        let lambda = params.lambda();
        let lam = lambda as f64;
        // (cλ)^q < 1/2 keeps |1 − (cz)^q| > 1/2 on Δ̄(0, λ)
        let (_, c0) = power_of_two_below((0.5f64).powf(1.0 / idx.q as f64) / lam)?;
        let one = Polynomial::constant(Q::one());
        let found = shrink_search(
            target,
            &one,
            &target_rf,
            idx,
            c0,
            params.eps / 2.0,
            params,
            &net_big_n,
            |_| false,
        )?;
        norms.extend(certify(NormKind::Intermediate, found.norms, params.eps / 2.0));
        let idempotent = pade_reproduces(&found.f_tilde, idx)?;

        let clearance = region.origin_clearance().min(lam);
        let net_n = sample_region(region, params.n, params.h)?;
        let probe_eps = 1.0 / (2.0 * params.s as f64);
        let jet = found.f_tilde.taylor(idx.p + idx.q, Tol::default())?;
        let probe =
            stability_probe(&jet, idx, 0.9 * clearance, probe_eps, params.s, &net_n, params.trials, params.seed)?;
        let delta = probe.delta.min(probe_eps.min(params.eps / 2.0) / 2.0);

        let net_lambda = sample_region(region, lambda, params.h)?;
        let (k0, f, trunc) = truncate(&found.f_tilde, idx, delta, params.s.max(params.l_max), &net_lambda)?;
        norms.extend(certify(NormKind::Truncation, trunc, delta));
        (
            Construction::PolynomialTruncated,
            found.c,
            found.d,
            Some(k0),
            Some(delta),
            Some(found.f_tilde),
            f,
            idempotent,
            found.retries,
        )
    };

    let (e_membership, e_norms) = certify_e_membership(&f, idx, params.n, params.s, region, params.h)?;
    norms.extend(certify(NormKind::EMembership, e_norms, 1.0 / params.s as f64));
    let close = sup_norms(&f, &target_rf, params.l_max, &net_big_n)?;
    let closeness = close.iter().all(|r| r.value < params.eps);
    norms.extend(certify(NormKind::Closeness, close, params.eps));

    Ok(WitnessCertificate {
        construction,
        target: target_rf,
        chosen: idx,
        c,
        d,
        k0,
        delta,
        f_tilde,
        poles: float_poles(&f),
        f,
        norms,
        pade_idempotent,
        e_membership,
        closeness,
        params: params.clone(),
        retries,
    })
}

/// First `k >= p+q` with `‖S_k(f̃) − f̃‖_{l,λ} < delta` for all `l <= l_max`.
fn truncate(
    f_tilde: &RationalFunction<Q>,
    idx: PadeIndex,
    delta: f64,
    l_max: usize,
    net: &GridSample,
) -> Result<(usize, RationalFunction<Q>, Vec<NormReport>)> {
    let start = idx.p + idx.q;
    let cap = 10 * start + 200;
    let mut order = (2 * start + 16).min(cap);
    let mut jet = f_tilde.taylor(order, Tol::default())?;
    let mut last_norm = f64::INFINITY;
    for k in start..=cap {
        if k > order {
            order = (2 * order).min(cap);
            jet = f_tilde.taylor(order, Tol::default())?;
        }
        let f = RationalFunction::polynomial(jet.partial_sum(k as i64)?);
        let reports = sup_norms(&f, f_tilde, l_max, net)?;
        last_norm = reports.iter().map(|r| r.value).fold(0.0, f64::max);
        if last_norm < delta {
            return Ok((k, f, reports));
        }
    }
    Err(Error::TruncationDiverged { cap, last_norm })
}

/// Witness close to the rational `target = A/B` whose `[p/q]` approximant is
/// itself, for the first `(p, q)` in `frontier` with `p > deg A`, `q > deg B`.
pub fn witness_from_rational(
    target: &RationalFunction<Q>,
    params: &WitnessParams,
    frontier: &FrontierSet,
    region: &CompactRegion,
) -> Result<WitnessCertificate> {
    params.validate()?;
    let target = target.reduced();
    let (a, b) = (target.num(), target.den());
    if b.coeff(0).is_zero() {
        return Err(Error::DenominatorVanishesAtOrigin);
    }
    let idx = first_index(frontier, |i| exceeds(a.degree(), i.p) && exceeds(b.degree(), i.q))?;

    let margin = 2.0 * params.h;
    let reach = params.lambda() as f64 + margin;
    let inflated = region.inflate(margin)?;
    let in_zone = |z: &Complex64| z.norm() <= reach + params.h / 2.0 && inflated.signed_distance(*z) <= params.h / 2.0;
    if let Some(&point) = roots(b).iter().find(|z| in_zone(z)) {
        return Err(Error::PoleAtSample { point });
    }
    let k = sample_disc(&inflated, reach, params.h)?;
    let bf = b.to_float();
    let (inf_b, argmin) = k
        .points
        .iter()
        .map(|z| (bf.eval(&FloatComplex(*z)).0.norm(), *z))
        .fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |acc, x| if x.0 < acc.0 { x } else { acc });
    if inf_b.is_nan() || inf_b <= 0.0 {
        return Err(Error::PoleAtSample { point: argmin });
    }
    let z_k = k.max_modulus().max(f64::MIN_POSITIVE);
    let (_, c0) = power_of_two_below((inf_b / z_k.powi(idx.q as i32)).powf(1.0 / idx.q as f64))?;

    let net_big_n = sample_region(region, params.n_max, params.h)?;
    let found = shrink_search(
        a,
        b,
        &target,
        idx,
        c0,
        params.eps / 2.0,
        params,
        &net_big_n,
        |f| float_poles(f).iter().any(&in_zone),
    )?;
    let pade_idempotent = pade_reproduces(&found.f_tilde, idx)?;
    let mut norms = certify(NormKind::Intermediate, found.norms, params.eps / 2.0);

    let f = found.f_tilde;
    let (e_membership, e_norms) = certify_e_membership(&f, idx, params.n, params.s, region, params.h)?;
    norms.extend(certify(NormKind::EMembership, e_norms, 1.0 / params.s as f64));
    let close = sup_norms(&f, &target, params.l_max, &net_big_n)?;
    let closeness = close.iter().all(|r| r.value < params.eps);
    norms.extend(certify(NormKind::Closeness, close, params.eps));

    Ok(WitnessCertificate {
        construction: Construction::Rational,
        target,
        chosen: idx,
        c: found.c,
        d: found.d,
        k0: None,
        delta: None,
        f_tilde: None,
        poles: float_poles(&f),
        f,
        norms,
        pade_idempotent,
        e_membership,
        closeness,
        params: params.clone(),
        retries: found.retries,
    })
}

/// `g = f + e` with `|e| < delta` on `Δ̄(0, r)`: coefficient `v` moves by less
/// than `delta / ((order + 1) r^v)`.
pub fn perturb_jet<R: Rng>(
    jet: &PowerSeriesJet<FloatComplex>,
    r: f64,
    delta: f64,
    rng: &mut R,
) -> PowerSeriesJet<FloatComplex> {
    let m = (jet.order() + 1) as f64;
    let coeffs = jet
        .coeffs()
        .iter()
        .enumerate()
        .map(|(v, a)| {
            let rho = rng.random::<f64>().sqrt();
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            let size = PROBE_SHRINK * delta / (m * r.powi(v as i32));
            FloatComplex(a.0 + Complex64::from_polar(rho * size, theta))
        })
        .collect();
    PowerSeriesJet::new(coeffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRound {
    pub delta: f64,
    pub failures: usize,
    /// Largest `max_{l<=s}` deviation over trials whose approximant exists.
    pub worst: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeOutcome {
    pub delta: f64,
    pub rounds: Vec<ProbeRound>,
}

/// Largest `δ = eps / 2^k` for which `trials` random perturbations `g` with
/// `‖g − f‖ < δ` on `Δ̄(0, r)` stay in `D_{p,q}` and move every derivative
/// `l <= s` of the approximant by less than `eps` on `sample`.
#[allow(clippy::too_many_arguments)]
pub fn stability_probe<S: Scalar>(
    jet: &PowerSeriesJet<S>,
    idx: PadeIndex,
    r: f64,
    eps: f64,
    s: usize,
    sample: &GridSample,
    trials: usize,
    seed: u64,
) -> Result<ProbeOutcome> {
    if !(r > 0.0 && r.is_finite()) || !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument("r and eps must be positive".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    let tol = Tol::default();
    jet.require_order(idx.p + idx.q)?;
    let base_jet = jet.truncate(idx.p + idx.q).to_float();
    let base = pade_jacobi(&base_jet, idx, tol)?.approximant;
    sup_norms(&base, &ZeroFn, 0, sample)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut delta = eps;
    let mut rounds = Vec::new();
    for _ in 0..=PROBE_HALVINGS {
        let perturbed: Vec<_> = (0..trials).map(|_| perturb_jet(&base_jet, r, delta, &mut rng)).collect();
        let deviations: Vec<Option<f64>> = perturbed
            .par_iter()
            .map(|g| {
                let approx = pade_jacobi(g, idx, tol).ok()?.approximant;
                let reports = sup_norms(&approx, &base, s, sample).ok()?;
                Some(reports.iter().map(|r| r.value).fold(0.0, f64::max))
            })
            .collect();
        let failures = deviations.iter().filter(|d| d.is_none_or(|v| v >= eps)).count();
        let worst = deviations.iter().flatten().copied().fold(0.0, f64::max);
        rounds.push(ProbeRound { delta, failures, worst });
        if failures == 0 {
            return Ok(ProbeOutcome { delta, rounds });
        }
        delta /= 2.0;
    }
    Err(Error::StabilityBudgetExceeded { halvings: PROBE_HALVINGS })
}
