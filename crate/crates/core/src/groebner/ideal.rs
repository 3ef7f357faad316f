use std::sync::Arc;

use crate::error::{HkError, Result};
use crate::monomial::{MonomialOrder, OrderKind};
use crate::poly::{check_frobenius_power, same_ring, Polynomial, Ring};

use super::{buchberger, groebner_with_counter, EngineConfig, GroebnerBasis, StepCounter};

/// A finite generating set of an ideal in a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl IdealSpec {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(HkError::RingMismatch);
        }
        Ok(IdealSpec {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealSpec {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    /// The homogeneous maximal ideal (x_1, ..., x_n).
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        IdealSpec {
            ring: ring.clone(),
            generators: (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn sum(&self, other: &IdealSpec) -> Result<IdealSpec> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(HkError::RingMismatch);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(IdealSpec {
            ring: self.ring.clone(),
            generators,
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn groebner(&self, config: &EngineConfig) -> Result<GroebnerBasis> {
        buchberger(self, config)
    }

    pub fn from_basis(basis: &GroebnerBasis) -> IdealSpec {
        IdealSpec {
            ring: basis.ring().clone(),
            generators: basis.elements().to_vec(),
        }
    }
}

/// I^[q]: generated by the q-th powers of the generators of I.
pub fn bracket_power(ideal: &IdealSpec, q: u64) -> Result<IdealSpec> {
    check_frobenius_power(ideal.ring.characteristic(), q)?;
    let generators = ideal
        .generators
        .iter()
        .map(|g| g.frobenius(q))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealSpec {
        ring: ideal.ring.clone(),
        generators,
    })
}

/// dim_k of R/(I + relations), counted from standard monomials.
pub fn artinian_length(ideal: &IdealSpec, relations: &IdealSpec, config: &EngineConfig) -> Result<u64> {
    ideal.sum(relations)?.groebner(config)?.standard_monomial_count()
}

/// R[t] with t appended as the last variable and eliminated first.
fn elimination_ring(ring: &Arc<Ring>) -> Result<Arc<Ring>> {
    let n = ring.nvars();
    let mut names = ring.names().to_vec();
    names.push(fresh_name(ring));
    let mut precedence = vec![n];
    precedence.extend(0..n);
    Ring::new(
        ring.characteristic() as u64,
        names,
        MonomialOrder::new(OrderKind::Elimination { block: 1 }, precedence)?,
    )
}

fn fresh_name(ring: &Ring) -> String {
    let mut name = String::from("_t");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Elements of a Gröbner basis (under an order eliminating t) that are free of t.
fn eliminate_t(
    ring: &Arc<Ring>,
    big: &Arc<Ring>,
    gens: Vec<Polynomial>,
    counter: &mut StepCounter,
) -> Result<Vec<Polynomial>> {
    let t = ring.nvars();
    let gb = groebner_with_counter(big, &gens, counter)?;
    gb.elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[t] == 0))
        .map(|g| g.restrict(ring))
        .collect()
}

fn intersect_with_counter(a: &IdealSpec, b: &IdealSpec, counter: &mut StepCounter) -> Result<IdealSpec> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(HkError::RingMismatch);
    }
    let ring = &a.ring;
    let big = elimination_ring(ring)?;
    let t = Polynomial::variable(&big, ring.nvars());
    let one_minus_t = Polynomial::one(&big).sub(&t)?;
    let mut gens = Vec::new();
    for g in &a.generators {
        gens.push(t.mul(&g.embed(&big)?)?);
    }
    for g in &b.generators {
        gens.push(one_minus_t.mul(&g.embed(&big)?)?);
    }
    let generators = eliminate_t(ring, &big, gens, counter)?;
    Ok(IdealSpec {
        ring: ring.clone(),
        generators,
    })
}

/// I ∩ J via t·I + (1 − t)·J ∩ R.
pub fn intersect(a: &IdealSpec, b: &IdealSpec, config: &EngineConfig) -> Result<IdealSpec> {
    intersect_with_counter(a, b, &mut StepCounter::new(config.step_budget))
}

fn quotient_with_counter(ideal: &IdealSpec, f: &Polynomial, counter: &mut StepCounter) -> Result<IdealSpec> {
    let ring = &ideal.ring;
    if !same_ring(f.ring(), ring) {
        return Err(HkError::RingMismatch);
    }
    if f.is_zero() {
        return Ok(IdealSpec::new(ring, vec![Polynomial::one(ring)])?);
    }
    let principal = IdealSpec {
        ring: ring.clone(),
        generators: vec![f.clone()],
    };
    let meet = intersect_with_counter(ideal, &principal, counter)?;
    let mut generators = Vec::with_capacity(meet.generators.len());
    for g in &meet.generators {
        match g.exact_div(f)? {
            Some(h) => generators.push(h),
            None => {
                return Err(HkError::ArithmeticBug(format!(
                    "element {g} of I ∩ (f) is not divisible by f = {f}"
                )))
            }
        }
    }
    Ok(IdealSpec {
        ring: ring.clone(),
        generators,
    })
}

/// I : f = (I ∩ (f)) / f.
pub fn quotient_by(ideal: &IdealSpec, f: &Polynomial, config: &EngineConfig) -> Result<IdealSpec> {
    quotient_with_counter(ideal, f, &mut StepCounter::new(config.step_budget))
}

/// (I + relations) : m with m = (x_1, ..., x_n), as the intersection of the
/// elementwise quotients. The result is returned as a reduced Gröbner basis.
pub fn colon_maximal(ideal: &IdealSpec, relations: &IdealSpec, config: &EngineConfig) -> Result<IdealSpec> {
    let mut counter = StepCounter::new(config.step_budget);
    let full = ideal.sum(relations)?;
    let ring = full.ring.clone();
    let gb = groebner_with_counter(&ring, &full.generators, &mut counter)?;
    // Confirms the quotient is Artinian before doing any elimination.
    gb.standard_monomial_count()?;
    let base = IdealSpec::from_basis(&gb);

    let mut acc: Option<IdealSpec> = None;
    for i in 0..ring.nvars() {
        let q = quotient_with_counter(&base, &Polynomial::variable(&ring, i), &mut counter)?;
        acc = Some(match acc {
            None => q,
            Some(prev) => intersect_with_counter(&prev, &q, &mut counter)?,
        });
    }
    let result = acc.unwrap_or_else(|| IdealSpec::new(&ring, vec![Polynomial::one(&ring)]).unwrap());
    let gb = groebner_with_counter(&ring, &result.generators, &mut counter)?;
    Ok(IdealSpec::from_basis(&gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use proptest::prelude::*;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn v(r: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::variable(r, i)
    }

    fn quadric_ring(p: u64) -> (Arc<Ring>, IdealSpec) {
        let r = Ring::with_names(p, &["x", "y", "z"]).unwrap();
        let f = (0..3).map(|i| v(&r, i).pow(2).unwrap()).reduce(|a, b| a.add(&b).unwrap()).unwrap();
        let rel = IdealSpec::new(&r, vec![f]).unwrap();
        (r, rel)
    }

    fn same_ideal(a: &IdealSpec, b: &IdealSpec) -> bool {
        let ga = a.groebner(&cfg()).unwrap();
        let gb = b.groebner(&cfg()).unwrap();
        ga.elements() == gb.elements()
    }

    #[test]
    fn bracket_power_examples() {
        let r = Ring::with_names(2, &["x", "y"]).unwrap();
        let m = IdealSpec::maximal(&r);
        let m2 = bracket_power(&m, 2).unwrap();
        assert_eq!(m2.generators(), &[v(&r, 0).pow(2).unwrap(), v(&r, 1).pow(2).unwrap()]);
        assert_eq!(bracket_power(&m, 1).unwrap(), m);
        assert!(matches!(bracket_power(&m, 6), Err(HkError::InvalidFrobeniusPower { q: 6, p: 2 })));

        let r5 = Ring::with_names(5, &["x", "y"]).unwrap();
        let s = IdealSpec::new(&r5, vec![v(&r5, 0).add(&v(&r5, 1)).unwrap()]).unwrap();
        let expected = v(&r5, 0).pow(5).unwrap().add(&v(&r5, 1).pow(5).unwrap()).unwrap();
        assert_eq!(bracket_power(&s, 5).unwrap().generators(), &[expected]);
    }

    #[test]
    fn lengths() {
        let r = Ring::with_names(5, &["x", "y", "z"]).unwrap();
        let zero = IdealSpec::zero(&r);
        assert_eq!(artinian_length(&IdealSpec::maximal(&r), &zero, &cfg()).unwrap(), 1);
        let r2 = Ring::with_names(5, &["x", "y"]).unwrap();
        for q in [5u64, 25] {
            let b = bracket_power(&IdealSpec::maximal(&r2), q).unwrap();
            assert_eq!(artinian_length(&b, &IdealSpec::zero(&r2), &cfg()).unwrap(), q * q);
        }
        let not_artinian = IdealSpec::new(&r, vec![v(&r, 0), v(&r, 1)]).unwrap();
        assert!(matches!(
            artinian_length(&not_artinian, &zero, &cfg()),
            Err(HkError::NotArtinian { variable: 2 })
        ));
    }

    #[test]
    fn quadric_bracket_length_is_between_one_and_two_times_q_squared() {
        let (r, rel) = quadric_ring(5);
        let len = artinian_length(&bracket_power(&IdealSpec::maximal(&r), 5).unwrap(), &rel, &cfg()).unwrap();
        assert!(25 < len && len < 50, "{len}");
    }

    #[test]
    fn colon_examples() {
        let r = Ring::with_names(5, &["x", "y"]).unwrap();
        let zero = IdealSpec::zero(&r);
        let i = IdealSpec::new(&r, vec![v(&r, 0).pow(2).unwrap(), v(&r, 1)]).unwrap();
        let c = colon_maximal(&i, &zero, &cfg()).unwrap();
        assert!(same_ideal(&c, &IdealSpec::maximal(&r)));

        let c = colon_maximal(&IdealSpec::maximal(&r), &zero, &cfg()).unwrap();
        assert_eq!(c.generators(), &[Polynomial::one(&r)]);
    }

    #[test]
    fn colon_in_quadric() {
        let (r, rel) = quadric_ring(5);
        let j = IdealSpec::new(&r, vec![v(&r, 1), v(&r, 2)]).unwrap();
        let c = colon_maximal(&j, &rel, &cfg()).unwrap();
        assert!(same_ideal(&c, &IdealSpec::maximal(&r)));
        assert_eq!(artinian_length(&j, &rel, &cfg()).unwrap(), 2);
        assert_eq!(artinian_length(&c, &rel, &cfg()).unwrap(), 1);
    }

    #[test]
    fn colon_requires_artinian() {
        let r = Ring::with_names(5, &["x", "y"]).unwrap();
        let i = IdealSpec::new(&r, vec![v(&r, 0)]).unwrap();
        assert!(matches!(
            colon_maximal(&i, &IdealSpec::zero(&r), &cfg()),
            Err(HkError::NotArtinian { .. })
        ));
    }

    #[test]
    fn quotient_and_intersection() {
        let r = Ring::with_names(7, &["x", "y"]).unwrap();
        let (x, y) = (v(&r, 0), v(&r, 1));
        let a = IdealSpec::new(&r, vec![x.pow(2).unwrap(), x.mul(&y).unwrap()]).unwrap();
        // (x^2, xy) : x = (x, y)
        let q = quotient_by(&a, &x, &cfg()).unwrap();
        assert!(same_ideal(&q, &IdealSpec::maximal(&r)));
        // (x) ∩ (y) = (xy)
        let meet = intersect(
            &IdealSpec::new(&r, vec![x.clone()]).unwrap(),
            &IdealSpec::new(&r, vec![y.clone()]).unwrap(),
            &cfg(),
        )
        .unwrap();
        assert!(same_ideal(&meet, &IdealSpec::new(&r, vec![x.mul(&y).unwrap()]).unwrap()));
        // non-monomial divisor: (x^2 - y^2) : (x - y) = (x + y) ... within (x^2-y^2)
        let f = x.pow(2).unwrap().sub(&y.pow(2).unwrap()).unwrap();
        let q = quotient_by(&IdealSpec::new(&r, vec![f]).unwrap(), &x.sub(&y).unwrap(), &cfg()).unwrap();
        assert!(same_ideal(&q, &IdealSpec::new(&r, vec![x.add(&y).unwrap()]).unwrap()));
    }

    /// Socle dimension by brute-force linear algebra: monomials u outside
    /// the staircase with x_i·u in I for all i (valid for monomial ideals).
    fn monomial_socle_dim(gens: &[Monomial], nvars: usize, bound: u32) -> u64 {
        let mut count = 0;
        let mut e = vec![0u32; nvars];
        let in_ideal = |e: &[u32]| {
            let m = Monomial::new(e).unwrap();
            gens.iter().any(|g| g.divides(&m))
        };
        loop {
            if !in_ideal(&e) && (0..nvars).all(|i| {
                let mut f = e.clone();
                f[i] += 1;
                in_ideal(&f)
            }) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == nvars {
                    return count;
                }
                e[i] += 1;
                if e[i] < bound {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    fn monomial_ideal(r: &Arc<Ring>, pure: &[u32], extra: &[Vec<u32>]) -> IdealSpec {
        let mut gens = Vec::new();
        for (i, &a) in pure.iter().enumerate() {
            let mut e = vec![0; pure.len()];
            e[i] = a;
            gens.push(Polynomial::monomial(r, Monomial::new(&e).unwrap(), 1));
        }
        for e in extra {
            gens.push(Polynomial::monomial(r, Monomial::new(e).unwrap(), 1));
        }
        IdealSpec::new(r, gens).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn socle_length_matches_enumeration(pure in prop::collection::vec(1u32..5, 2), extra in prop::collection::vec(prop::collection::vec(0u32..4, 2), 0..3)) {
            let r = Ring::with_names(5, &["x", "y"]).unwrap();
            let zero = IdealSpec::zero(&r);
            let i = monomial_ideal(&r, &pure, &extra);
            let c = colon_maximal(&i, &zero, &cfg()).unwrap();
            let li = artinian_length(&i, &zero, &cfg()).unwrap();
            let lc = artinian_length(&c, &zero, &cfg()).unwrap();
            let gens: Vec<Monomial> = i.generators().iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
            prop_assume!(li > 0);
            prop_assert!(li > lc);
            prop_assert_eq!(li - lc, monomial_socle_dim(&gens, 2, 6));
            // containment I ⊆ I : m
            let gb = c.groebner(&cfg()).unwrap();
            for g in i.generators() {
                prop_assert!(gb.contains(g).unwrap());
            }
        }

        #[test]
        fn bracket_power_of_colon_is_contained_in_colon_of_bracket_power(
            pure in prop::collection::vec(1u32..4, 2),
            extra in prop::collection::vec(prop::collection::vec(0u32..3, 2), 0..2),
            a in prop::collection::vec(0u32..3, 2),
        ) {
            let r = Ring::with_names(2, &["x", "y"]).unwrap();
            let i = monomial_ideal(&r, &pure, &extra);
            let x = Polynomial::variable(&r, 0);
            let elem = Polynomial::monomial(&r, Monomial::new(&a).unwrap(), 1).add(&x).unwrap();
            let q = 2;
            let lhs = quotient_by(&bracket_power(&i, q).unwrap(), &elem.frobenius(q).unwrap(), &cfg()).unwrap();
            let rhs = bracket_power(&quotient_by(&i, &elem, &cfg()).unwrap(), q).unwrap();
            let gb = lhs.groebner(&cfg()).unwrap();
            for g in rhs.generators() {
                prop_assert!(gb.contains(g).unwrap());
            }
            // nested ideals have smaller length
            let bigger = i.sum(&IdealSpec::new(&r, vec![elem.clone()]).unwrap()).unwrap();
            let zero = IdealSpec::zero(&r);
            prop_assert!(artinian_length(&i, &zero, &cfg()).unwrap() >= artinian_length(&bigger, &zero, &cfg()).unwrap());
        }
    }
}
