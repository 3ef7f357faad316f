//! Finite-q sampling of Hilbert–Kunz quantities and their extrapolation.
//!
//! Every sample is an exact length l(A/I^[q]) (or a difference of two) over
//! A = F_p[x]/(relations), divided by q^d. Limits are never taken; the full
//! sequence is kept next to two estimators.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{HkError, Result};
use crate::groebner::{artinian_length, bracket_power, colon_maximal, EngineConfig, IdealSpec};
use crate::poly::{Polynomial, Ring};
use crate::rational::int;

/// A = F_p[vars]/(relations). The relations are trusted to be a regular
/// sequence, so dim A = #vars − #relations.
#[derive(Debug, Clone)]
pub struct RingSpec {
    ring: Arc<Ring>,
    relations: IdealSpec,
    dimension: usize,
}

impl RingSpec {
    pub fn new(ring: &Arc<Ring>, relations: Vec<Polynomial>) -> Result<Self> {
        let relations = IdealSpec::new(ring, relations)?;
        let nrel = relations.generators().len();
        if nrel > ring.nvars() {
            return Err(HkError::InvalidParameter(format!(
                "{nrel} relations in {} variables give negative dimension",
                ring.nvars()
            )));
        }
        Ok(RingSpec {
            dimension: ring.nvars() - nrel,
            ring: ring.clone(),
            relations,
        })
    }

    pub fn polynomial_ring(ring: &Arc<Ring>) -> Self {
        RingSpec {
            ring: ring.clone(),
            relations: IdealSpec::zero(ring),
            dimension: ring.nvars(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn relations(&self) -> &IdealSpec {
        &self.relations
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.generators().is_empty()
    }

    pub fn length(&self, ideal: &IdealSpec, config: &EngineConfig) -> Result<u64> {
        artinian_length(ideal, &self.relations, config)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKSample {
    pub e: u32,
    pub q: u64,
    pub length: BigInt,
    pub ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKSampleSequence {
    pub dimension: usize,
    pub samples: Vec<HKSample>,
}

impl HKSampleSequence {
    pub fn new(dimension: usize, raw: Vec<(u32, u64, BigInt)>) -> Result<Self> {
        let mut samples: Vec<HKSample> = Vec::with_capacity(raw.len());
        for (e, q, length) in raw {
            if samples.last().is_some_and(|s| s.q >= q) {
                return Err(HkError::InvalidParameter("sample q values must increase".into()));
            }
            let ratio = BigRational::new(length.clone(), BigInt::from(q).pow(dimension as u32));
            samples.push(HKSample { e, q, length, ratio });
        }
        Ok(HKSampleSequence { dimension, samples })
    }

    pub fn ratios(&self) -> impl Iterator<Item = &BigRational> {
        self.samples.iter().map(|s| &s.ratio)
    }

    pub fn last_ratio(&self) -> Option<&BigRational> {
        self.samples.last().map(|s| &s.ratio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateMethod {
    LastSample,
    TwoPointFit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HKEstimate {
    /// The two-point fit; the last-sample ratio is kept alongside.
    pub point: BigRational,
    pub method: EstimateMethod,
    pub last_sample: BigRational,
    pub two_point: BigRational,
    /// ratio[i+1] − ratio[i].
    pub deltas: Vec<BigRational>,
    pub monotone: bool,
}

/// Two-point fit of l(q) = a·q^d + b·q^{d−1} through the last two samples,
/// reporting a; plus the raw last ratio.
pub fn extrapolate(samples: &HKSampleSequence, d: usize) -> Result<HKEstimate> {
    let n = samples.samples.len();
    if n < 2 {
        return Err(HkError::InsufficientData(n));
    }
    if d == 0 {
        return Err(HkError::InvalidParameter("extrapolation needs dimension ≥ 1".into()));
    }
    let s1 = &samples.samples[n - 2];
    let s2 = &samples.samples[n - 1];
    let scaled = |s: &HKSample| BigRational::new(s.length.clone(), BigInt::from(s.q).pow(d as u32 - 1));
    let two_point = (scaled(s2) - scaled(s1)) / int(BigInt::from(s2.q) - BigInt::from(s1.q));
    let ratios: Vec<&BigRational> = samples.ratios().collect();
    let deltas: Vec<BigRational> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
    let monotone = deltas.iter().all(|x| !x.is_negative()) || deltas.iter().all(|x| !x.is_positive());
    Ok(HKEstimate {
        point: two_point.clone(),
        method: EstimateMethod::TwoPointFit,
        last_sample: s2.ratio.clone(),
        two_point,
        deltas,
        monotone,
    })
}

fn exponents(p: u32, e_max: u32) -> Result<Vec<(u32, u64)>> {
    if e_max == 0 {
        return Err(HkError::InvalidParameter("e_max must be at least 1".into()));
    }
    (1..=e_max)
        .map(|e| {
            (p as u64)
                .checked_pow(e)
                .map(|q| (e, q))
                .ok_or_else(|| HkError::InvalidParameter(format!("{p}^{e} overflows")))
        })
        .collect()
}

/// Samples of l(A/I^[q]) / q^d for q = p, ..., p^e_max.
pub fn ehk_samples(ring: &RingSpec, ideal: &IdealSpec, e_max: u32, config: &EngineConfig) -> Result<HKSampleSequence> {
    let raw = exponents(ring.characteristic(), e_max)?
        .into_par_iter()
        .map(|(e, q)| {
            let len = ring.length(&bracket_power(ideal, q)?, config)?;
            Ok((e, q, BigInt::from(len)))
        })
        .collect::<Result<Vec<_>>>()?;
    HKSampleSequence::new(ring.dimension(), raw)
}

fn difference_samples(
    ring: &RingSpec,
    small: &IdealSpec,
    big: &IdealSpec,
    e_max: u32,
    config: &EngineConfig,
) -> Result<HKSampleSequence> {
    let raw = exponents(ring.characteristic(), e_max)?
        .into_par_iter()
        .map(|(e, q)| {
            let a = ring.length(&bracket_power(small, q)?, config)?;
            let b = ring.length(&bracket_power(big, q)?, config)?;
            if b > a {
                return Err(HkError::ArithmeticBug(format!(
                    "length of the larger ideal's bracket power exceeds the smaller one at q = {q}"
                )));
            }
            Ok((e, q, BigInt::from(a - b)))
        })
        .collect::<Result<Vec<_>>>()?;
    HKSampleSequence::new(ring.dimension(), raw)
}

#[derive(Debug, Clone)]
pub struct MhkResult {
    pub colon: IdealSpec,
    pub length_j: u64,
    pub length_colon: u64,
    pub samples: HKSampleSequence,
    pub estimate: HKEstimate,
}

/// m_HK(A) as lim [l(A/J^[q]) − l(A/(J:m)^[q])]/q^d for a parameter ideal J
/// with one-dimensional socle in A/J. J:m is computed once and bracket-powered.
pub fn mhk_gorenstein(ring: &RingSpec, j: &IdealSpec, e_max: u32, config: &EngineConfig) -> Result<MhkResult> {
    let length_j = ring.length(j, config)?;
    if length_j == 0 {
        return Err(HkError::UnitIdeal);
    }
    let colon = colon_maximal(j, ring.relations(), config)?;
    let length_colon = ring.length(&colon, config)?;
    let socle = length_j - length_colon;
    if socle != 1 {
        return Err(HkError::NotGorensteinQuotient(socle));
    }
    let samples = difference_samples(ring, j, &colon, e_max, config)?;
    let estimate = extrapolate(&samples, ring.dimension())?;
    Ok(MhkResult {
        colon,
        length_j,
        length_colon,
        samples,
        estimate,
    })
}

#[derive(Debug, Clone)]
pub struct RelativeResult {
    pub samples: HKSampleSequence,
    pub estimate: HKEstimate,
}

/// Samples of [l(A/I^[q]) − l(A/I'^[q])]/q^d for I ⊆ I' with l(I'/I) = 1.
pub fn relative_hk_sample(
    ring: &RingSpec,
    ideal: &IdealSpec,
    ideal_prime: &IdealSpec,
    e_max: u32,
    config: &EngineConfig,
) -> Result<RelativeResult> {
    let big = ideal_prime.sum(ring.relations())?.groebner(config)?;
    for g in ideal.generators() {
        if !big.contains(g)? {
            return Err(HkError::HypothesisViolation(format!("generator {g} of I is not in I'")));
        }
    }
    let colength = ring.length(ideal, config)? as i64 - ring.length(ideal_prime, config)? as i64;
    if colength != 1 {
        return Err(HkError::InvalidPair(colength));
    }
    let samples = difference_samples(ring, ideal, ideal_prime, e_max, config)?;
    let estimate = extrapolate(&samples, ring.dimension())?;
    Ok(RelativeResult { samples, estimate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl CheckStatus {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    /// The bound the value was compared against, when one is defined.
    pub bound: Option<BigRational>,
    pub equality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsInput {
    pub e_mult: BigRational,
    pub ehk: BigRational,
    pub mhk: BigRational,
    pub dimension: u32,
    /// Hypersurface with e(A) = dim A; enables the hypersurface bounds.
    pub hypersurface: bool,
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// (e − e_HK)/(e − 1), defined for e ≥ 2.
pub fn multiplicity_bound(e_mult: &BigRational, ehk: &BigRational) -> Option<BigRational> {
    if *e_mult < int(2) {
        return None;
    }
    Some((e_mult - ehk) / (e_mult - int(1)))
}

/// 1 / (2^{d−1} (d−1)!).
pub fn hypersurface_mhk_bound(d: u32) -> BigRational {
    assert!(d >= 1);
    BigRational::new(BigInt::one(), BigInt::from(2).pow(d - 1) * factorial(d - 1))
}

/// (1/(2^d d!)) Σ_{i=0}^{⌊d/2⌋} (−1)^i (d+1−2i)^d C(d+1, i).
pub fn hypersurface_ehk_coefficient(d: u32) -> BigRational {
    let mut sum = BigInt::zero();
    for i in 0..=d / 2 {
        let term = BigInt::from(d + 1 - 2 * i).pow(d) * binomial(d + 1, i);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    BigRational::new(sum, BigInt::from(2).pow(d) * factorial(d))
}

/// Evaluates the m_HK / e_HK inequality suite on the given values.
pub fn bounds_report(input: &BoundsInput) -> Vec<BoundCheck> {
    let mut out = Vec::new();
    let zero = BigRational::zero();
    let one = int(1);
    out.push(BoundCheck {
        name: "mhk_in_unit_interval",
        status: CheckStatus::from_bool(input.mhk >= zero && input.mhk <= one),
        bound: Some(one.clone()),
        equality: input.mhk == one || input.mhk == zero,
    });

    let check = |name, bound: Option<BigRational>, value: &BigRational, upper: bool| match bound {
        None => BoundCheck {
            name,
            status: CheckStatus::NotApplicable,
            bound: None,
            equality: false,
        },
        Some(b) => BoundCheck {
            name,
            status: CheckStatus::from_bool(if upper { *value <= b } else { *value >= b }),
            equality: *value == b,
            bound: Some(b),
        },
    };

    out.push(check(
        "mhk_multiplicity_bound",
        multiplicity_bound(&input.e_mult, &input.ehk),
        &input.mhk,
        true,
    ));

    let d = input.dimension;
    let hyper_with_e_eq_d = input.hypersurface && d >= 1 && input.e_mult == int(d as i64);
    out.push(check(
        "mhk_hypersurface_bound",
        hyper_with_e_eq_d.then(|| hypersurface_mhk_bound(d)),
        &input.mhk,
        true,
    ));

    let lower = (input.hypersurface && d >= 1 && input.e_mult >= int(2))
        .then(|| hypersurface_ehk_coefficient(d) * &input.e_mult);
    out.push(check("ehk_hypersurface_lower_bound", lower, &input.ehk, false));
    out
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub p: u32,
    pub d: u32,
    pub ring: RingSpec,
    pub result: MhkResult,
    pub conjectural: BigRational,
}

/// k[x_0..x_d]/(x_0^d + ... + x_d^d) with J = (x_1, ..., x_d). Reports the
/// m_HK samples next to 1/(2^{d−1}(d−1)!) without judging them.
pub fn probe_diagonal_hypersurface(p: u32, d: u32, e_max: u32, config: &EngineConfig) -> Result<ProbeReport> {
    if d < 2 {
        return Err(HkError::InvalidParameter("probe needs d ≥ 2".into()));
    }
    if p <= d {
        return Err(HkError::HypothesisViolation(format!("probe needs p > d, got p = {p}, d = {d}")));
    }
    let names: Vec<String> = (0..=d).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::with_names(p as u64, &refs)?;
    let f = (0..=d as usize)
        .map(|i| Polynomial::variable(&ring, i).pow(d as u64))
        .try_fold(Polynomial::zero(&ring), |acc, t| acc.add(&t?))?;
    let spec = RingSpec::new(&ring, vec![f])?;
    let j = IdealSpec::new(&ring, (1..=d as usize).map(|i| Polynomial::variable(&ring, i)).collect())?;
    let result = mhk_gorenstein(&spec, &j, e_max, config)?;
    Ok(ProbeReport {
        p,
        d,
        ring: spec,
        result,
        conjectural: hypersurface_mhk_bound(d),
    })
}
