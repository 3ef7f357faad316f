//! Buchberger's algorithm over F_p and the operations built on it.

mod ideal;
pub mod oracle;
mod staircase;

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{HkError, Result};
use crate::monomial::Monomial;
use crate::poly::{same_ring, Polynomial, Ring, Term};

pub use ideal::{
    artinian_length, bracket_power, colon_maximal, intersect, quotient_by, IdealSpec,
};
pub use staircase::{count_standard_monomials, minimal_monomials};

/// Default cap on reduction steps for a single Gröbner computation.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub step_budget: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// Counts reduction steps against a budget.
#[derive(Debug)]
pub struct StepCounter {
    used: u64,
    limit: u64,
}

impl StepCounter {
    pub fn new(limit: u64) -> Self {
        StepCounter { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    #[inline]
    fn step(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(HkError::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Reduces `f` by the monic polynomials in `basis`. With `full` set every
/// term is reduced, otherwise only the leading term.
fn reduce(f: &Polynomial, basis: &[&Polynomial], counter: &mut StepCounter, full: bool) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut terms: Vec<Term> = f.terms().to_vec();
    // terms[..done] are irreducible and final.
    let mut done = 0;
    while done < terms.len() {
        let (m, c) = &terms[done];
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)));
        match divisor {
            Some(g) => {
                counter.step()?;
                let shift = m.div(g.leading_monomial().unwrap()).unwrap();
                let coef = field.neg(*c);
                let tail = Polynomial::from_sorted(&ring, terms.split_off(done));
                let tail = tail.add_scaled(coef, &shift, g);
                terms.extend(tail.into_terms());
            }
            None => {
                if !full {
                    break;
                }
                done += 1;
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, terms))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let field = f.ring().field();
    let lcm = fm.lcm(gm);
    let a = f
        .mul_monomial(&lcm.div(fm).unwrap(), *gc)
        .expect("lcm exponents are bounded by the inputs");
    a.add_scaled(field.neg(*fc), &lcm.div(gm).unwrap(), g)
}

/// A Gröbner basis for the ideal it was computed from, under its ring's order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    /// Wraps generators that already form a Gröbner basis (e.g. monomials).
    fn from_trusted(ring: &Arc<Ring>, elements: Vec<Polynomial>, reduced: bool) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            reduced,
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(HkError::RingMismatch);
        }
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        reduce(f, &refs, &mut StepCounter::unlimited(), true)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Exhaustive Buchberger criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                match reduce(&s, &refs, &mut StepCounter::unlimited(), true) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Number of standard monomials, i.e. dim_k R/I.
    pub fn standard_monomial_count(&self) -> Result<u64> {
        count_standard_monomials(&self.leading_monomials(), self.ring.nvars())
    }
}

/// Normal form of `f` modulo the ideal with Gröbner basis `basis`.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.normal_form(f)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a> {
    ring: &'a Arc<Ring>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(false);
        let lh = self.lm(hi).clone();

        let mut candidates: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = candidates.pop() {
            let coprime = lh.is_coprime(self.lm(g1));
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        kept.retain(|(g, _)| !lh.is_coprime(self.lm(*g)));

        let pairs = std::mem::take(&mut self.pairs);
        self.pairs = pairs
            .into_iter()
            .filter(|p| {
                !(lh.divides(&p.lcm)
                    && self.lm(p.i).lcm(&lh) != p.lcm
                    && lh.lcm(self.lm(p.j)) != p.lcm)
            })
            .collect();
        self.pairs.extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: hi, lcm }));

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    /// Normal strategy: smallest lcm degree, ties by the monomial order.
    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| order.compare(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_refs(&self) -> Vec<&Polynomial> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| &self.polys[i])
            .collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(ideal: &IdealSpec, config: &EngineConfig) -> Result<GroebnerBasis> {
    let mut counter = StepCounter::new(config.step_budget);
    groebner_with_counter(ideal.ring(), ideal.generators(), &mut counter)
}

pub(crate) fn groebner_with_counter(
    ring: &Arc<Ring>,
    generators: &[Polynomial],
    counter: &mut StepCounter,
) -> Result<GroebnerBasis> {
    for g in generators {
        if !same_ring(g.ring(), ring) {
            return Err(HkError::RingMismatch);
        }
    }
    let mut gens: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(GroebnerBasis::from_trusted(ring, vec![Polynomial::one(ring)], true));
    }
    if gens.iter().all(|g| g.is_monomial()) {
        let lms: Vec<Monomial> = gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let elements = sort_basis(
            ring,
            minimal_monomials(&lms)
                .into_iter()
                .map(|m| Polynomial::monomial(ring, m, 1))
                .collect(),
        );
        return Ok(GroebnerBasis::from_trusted(ring, elements, true));
    }

    // Smaller leading terms first keeps early reductions cheap.
    let order = ring.order();
    gens.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut engine = Engine {
        ring,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let r = reduce(&g, &engine.active_refs(), counter, true)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis::from_trusted(ring, vec![Polynomial::one(ring)], true));
        }
        engine.update(r.monic());
    }

    while let Some(pair) = engine.next_pair() {
        counter.step()?;
        let s = s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j]);
        let r = reduce(&s, &engine.active_refs(), counter, true)?;
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis::from_trusted(ring, vec![Polynomial::one(ring)], true));
        }
        engine.update(r.monic());
    }

    // The active set is minimal; tail-reduce each element against the rest.
    let minimal: Vec<Polynomial> = engine.active_refs().into_iter().cloned().collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p).collect();
        let head = Polynomial::from_sorted(ring, vec![g.leading_term().unwrap().clone()]);
        let tail = Polynomial::from_sorted(ring, g.terms()[1..].to_vec());
        let tail = reduce(&tail, &others, counter, true)?;
        reduced.push(head.add(&tail)?);
    }
    Ok(GroebnerBasis::from_trusted(ring, sort_basis(ring, reduced), true))
}

fn sort_basis(ring: &Arc<Ring>, mut elements: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    elements.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => order.compare(y, x),
        _ => Ordering::Equal,
    });
    elements
}
