use num::complex::Complex64;
use padelab::norms::{sample_region, sup_norms, CompactRegion};
use padelab::pade::{in_dpq, pade_linsolve};
use padelab::witness::{witness_from_polynomial, witness_from_rational, FrontierSet, WitnessCertificate, WitnessParams};
use padelab::{ExactComplex as Q, PadeIndex, Polynomial, RationalFunction, Scalar, Tol};

fn params(eps: f64, s: usize) -> WitnessParams {
    WitnessParams { eps, l_max: 1, n_max: 1, n: 1, s, h: 0.1, trials: 30, seed: 5, simply_connected: true }
}

fn frontier(pairs: &[(usize, usize)]) -> FrontierSet {
    FrontierSet::new(pairs.iter().map(|&(p, q)| PadeIndex::new(p, q)).collect()).unwrap()
}

/// Re-derive both verdicts from `cert.f` alone.
fn reverify(cert: &WitnessCertificate, region: &CompactRegion) -> (bool, bool) {
    let p = &cert.params;
    let idx = cert.chosen;
    let tol = Tol::default();
    let jet = cert.f.taylor(idx.p + idx.q, tol).unwrap();
    let e = in_dpq(&jet, idx, tol).unwrap() && {
        let approx = pade_linsolve(&jet, idx, tol).unwrap().approximant;
        let net = sample_region(region, p.n, p.h).unwrap();
        sup_norms(&approx, &cert.f, p.s, &net).unwrap().iter().all(|r| r.value < 1.0 / p.s as f64)
    };
    let net = sample_region(region, p.n_max, p.h).unwrap();
    let close = sup_norms(&cert.f, &cert.target, p.l_max, &net).unwrap().iter().all(|r| r.value < p.eps);
    (e, close)
}

#[test]
fn polynomial_certificates_reverify() {
    let disc = CompactRegion::disc(Complex64::new(0.0, 0.0), 1.0).unwrap();
    let square = CompactRegion::parse("add rect -0.8 -0.8 0.8 0.8\n").unwrap();
    let targets = [
        Polynomial::new(vec![Q::one()]),
        Polynomial::new(vec![Q::gaussian(1, 2, -1, 3), Q::ratio(3, 4)]),
        Polynomial::new(vec![Q::zero(), Q::one(), Q::ratio(-1, 2)]),
    ];
    for region in [&disc, &square] {
        for target in &targets {
            for pairs in [&[(3, 0)][..], &[(3, 1)], &[(0, 2), (4, 2)]] {
                let cert = witness_from_polynomial(target, &params(5e-2, 3), &frontier(pairs), region).unwrap();
                assert!(cert.passed(), "{}", cert.summary());
                assert_eq!(reverify(&cert, region), (cert.e_membership, cert.closeness));
                assert!(cert.chosen.p > target.degree().unwrap_or(0));
            }
        }
    }
}

#[test]
fn shift_branch_is_exact() {
    let disc = CompactRegion::disc(Complex64::new(0.0, 0.0), 1.0).unwrap();
    let target = Polynomial::new(vec![Q::one(), Q::from_i64(-2)]);
    let cert = witness_from_polynomial(&target, &params(1e-3, 2), &frontier(&[(2, 0)]), &disc).unwrap();
    assert!(cert.norms.iter().filter(|n| n.report.l <= 2).all(|n| n.pass));
    assert!(cert
        .norms
        .iter()
        .filter(|n| n.kind == padelab::witness::NormKind::EMembership)
        .all(|n| n.report.value == 0.0));
}

#[test]
fn rational_certificates_reverify() {
    let region = CompactRegion::parse("add disc 0 0 1.5\nsub rect 0.9 -0.5 1.6 0.5\n").unwrap();
    // pole at z = 1.2 sits inside the removed rectangle
    let target = RationalFunction::new(
        Polynomial::new(vec![Q::one(), Q::ratio(1, 3)]),
        Polynomial::new(vec![Q::one(), Q::ratio(-5, 6)]),
    )
    .unwrap();
    let cert = witness_from_rational(&target, &params(1e-2, 2), &frontier(&[(1, 1), (2, 2)]), &region).unwrap();
    assert_eq!(cert.chosen, PadeIndex::new(2, 2));
    assert!(cert.passed() && cert.pade_idempotent);
    assert_eq!(reverify(&cert, &region), (true, true));
}
