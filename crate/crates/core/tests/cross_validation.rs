use std::sync::Arc;

use hklab_core::estimator::{
    ehk_samples, extrapolate, mhk_gorenstein, probe_diagonal_hypersurface, relative_hk_sample, RingSpec,
};
use hklab_core::groebner::oracle::linear_algebra_length;
use hklab_core::groebner::{artinian_length, bracket_power, EngineConfig, IdealSpec};
use hklab_core::poly::{Polynomial, Ring};
use hklab_core::quotient::{quotient_ehk, quotient_mhk, veronese_semigroup_length, VeroneseParams};
use hklab_core::rational::{abs_diff, rat};
use hklab_core::HkError;
use num_bigint::BigInt;
use num_rational::BigRational;

fn var(r: &Arc<Ring>, i: usize) -> Polynomial {
    Polynomial::variable(r, i)
}

fn sum_of_squares(r: &Arc<Ring>) -> Polynomial {
    (0..r.nvars())
        .map(|i| var(r, i).pow(2).unwrap())
        .reduce(|a, b| a.add(&b).unwrap())
        .unwrap()
}

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

#[test]
fn groebner_lengths_match_linear_algebra() {
    // A1 cone xy − z², the quadric, and a codimension-two complete intersection.
    let r3 = Ring::with_names(7, &["x", "y", "z"]).unwrap();
    let cone = var(&r3, 0).mul(&var(&r3, 1)).unwrap().sub(&var(&r3, 2).pow(2).unwrap()).unwrap();
    let r4 = Ring::with_names(5, &["x", "y", "z", "w"]).unwrap();
    let ci = vec![
        var(&r4, 0).mul(&var(&r4, 1)).unwrap().sub(&var(&r4, 2).mul(&var(&r4, 3)).unwrap()).unwrap(),
        sum_of_squares(&r4),
    ];
    let cases = vec![
        (r3.clone(), vec![cone], vec![1u64, 7, 49]),
        (r3.clone(), vec![sum_of_squares(&r3)], vec![1, 7]),
        (r4.clone(), ci, vec![1, 5]),
    ];
    for (ring, rels, ladder) in cases {
        let rel = IdealSpec::new(&ring, rels).unwrap();
        for q in ladder {
            let b = bracket_power(&IdealSpec::maximal(&ring), q).unwrap();
            let gb = artinian_length(&b, &rel, &cfg()).unwrap();
            let la = linear_algebra_length(&b, &rel, 8 * q as u32).unwrap();
            assert_eq!(gb, la, "{} vars, q={q}", ring.nvars());
        }
    }
}

#[test]
fn mhk_is_independent_of_parameter_ideal() {
    let ring = Ring::with_names(7, &["x", "y", "z"]).unwrap();
    let spec = RingSpec::new(&ring, vec![sum_of_squares(&ring)]).unwrap();
    let (y, z) = (var(&ring, 1), var(&ring, 2));
    let j1 = IdealSpec::new(&ring, vec![y.clone(), z.clone()]).unwrap();
    let j2 = IdealSpec::new(&ring, vec![y.add(&z).unwrap(), y.sub(&z).unwrap()]).unwrap();
    let x_plus = var(&ring, 0).add(&y).unwrap();
    let j3 = IdealSpec::new(&ring, vec![x_plus, z]).unwrap();
    let a = mhk_gorenstein(&spec, &j1, 2, &cfg()).unwrap();
    for j in [j2, j3] {
        let b = mhk_gorenstein(&spec, &j, 2, &cfg()).unwrap();
        assert_eq!(a.samples, b.samples);
        assert!(abs_diff(&a.estimate.point, &b.estimate.point) < rat(1, 1_000_000));
    }
}

#[test]
fn quadric_agrees_with_quotient_formulas() {
    let ring = Ring::with_names(5, &["x", "y", "z"]).unwrap();
    let spec = RingSpec::new(&ring, vec![sum_of_squares(&ring)]).unwrap();
    let samples = ehk_samples(&spec, &IdealSpec::maximal(&ring), 3, &cfg()).unwrap();
    let ehk = extrapolate(&samples, 2).unwrap().point;
    let v = VeroneseParams::new(2).unwrap();
    let closed = quotient_ehk(&v.quotient_params(Some(5)).unwrap());
    assert!(abs_diff(&ehk, &closed) < rat(1, 20));
    // e_HK = 2 − m_HK for this ring.
    let j = IdealSpec::new(&ring, vec![var(&ring, 1), var(&ring, 2)]).unwrap();
    let mhk = mhk_gorenstein(&spec, &j, 3, &cfg()).unwrap().estimate.point;
    assert!(abs_diff(&mhk, &quotient_mhk(2).unwrap()) < rat(1, 20));
    assert!(abs_diff(&(ehk + mhk), &rat(2, 1)) < rat(1, 100));
    // Veronese lattice length at q = 5 is the same number as the hypersurface length.
    let lattice = veronese_semigroup_length(2, 5, 1 << 20).unwrap();
    assert_eq!(lattice, samples.samples[0].length);
}

#[test]
fn veronese_matches_hypersurface_at_every_q() {
    // b² − ac is the second Veronese of k[s,t] under a ↦ s², b ↦ st, c ↦ t².
    let ring = Ring::with_names(5, &["a", "b", "c"]).unwrap();
    let f = var(&ring, 1).pow(2).unwrap().sub(&var(&ring, 0).mul(&var(&ring, 2)).unwrap()).unwrap();
    let spec = RingSpec::new(&ring, vec![f]).unwrap();
    let samples = ehk_samples(&spec, &IdealSpec::maximal(&ring), 2, &cfg()).unwrap();
    for s in &samples.samples {
        assert_eq!(s.length, veronese_semigroup_length(2, s.q, 1 << 24).unwrap(), "q={}", s.q);
    }
}

#[test]
fn probe_at_d2_is_the_quadric() {
    let report = probe_diagonal_hypersurface(5, 2, 2, &cfg()).unwrap();
    assert_eq!(report.conjectural, rat(1, 2));
    let ring = Ring::with_names(5, &["x", "y", "z"]).unwrap();
    let spec = RingSpec::new(&ring, vec![sum_of_squares(&ring)]).unwrap();
    let j = IdealSpec::new(&ring, vec![var(&ring, 1), var(&ring, 2)]).unwrap();
    let direct = mhk_gorenstein(&spec, &j, 2, &cfg()).unwrap();
    let a: Vec<&BigRational> = report.result.samples.ratios().collect();
    let b: Vec<&BigRational> = direct.samples.ratios().collect();
    assert_eq!(a, b);
    assert!(matches!(probe_diagonal_hypersurface(3, 3, 1, &cfg()), Err(HkError::HypothesisViolation(_))));
}

#[test]
fn relative_samples_on_regular_plane() {
    let ring = Ring::with_names(5, &["x", "y"]).unwrap();
    let spec = RingSpec::polynomial_ring(&ring);
    let i = IdealSpec::new(&ring, vec![var(&ring, 0).pow(2).unwrap(), var(&ring, 1)]).unwrap();
    let res = relative_hk_sample(&spec, &i, &IdealSpec::maximal(&ring), 3, &cfg()).unwrap();
    for s in &res.samples.samples {
        assert_eq!(s.length, BigInt::from(s.q * s.q));
        assert_eq!(s.ratio, rat(1, 1));
    }
    let i2 = IdealSpec::new(&ring, vec![var(&ring, 0).pow(3).unwrap(), var(&ring, 1)]).unwrap();
    assert_eq!(
        relative_hk_sample(&spec, &i2, &IdealSpec::maximal(&ring), 2, &cfg()).unwrap_err(),
        HkError::InvalidPair(2)
    );
}

#[test]
fn colon_differences_are_nonnegative() {
    let ring = Ring::with_names(3, &["x", "y", "z"]).unwrap();
    let spec = RingSpec::new(&ring, vec![sum_of_squares(&ring)]).unwrap();
    let j = IdealSpec::new(&ring, vec![var(&ring, 1), var(&ring, 2)]).unwrap();
    let res = mhk_gorenstein(&spec, &j, 3, &cfg()).unwrap();
    assert!(res.samples.samples.iter().all(|s| s.length >= BigInt::from(0)));
    assert_eq!(res.length_j - res.length_colon, 1);
}
