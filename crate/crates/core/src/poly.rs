//! Multivariate polynomials over F_p in canonical sorted form.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{HkError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// Ambient polynomial ring F_p[x_1..x_n] with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(p: u64, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        let field = PrimeField::new(p)?;
        if order.nvars() != names.len() {
            return Err(HkError::InvalidParameter(format!(
                "order has {} variables, ring has {}",
                order.nvars(),
                names.len()
            )));
        }
        Ok(Arc::new(Ring { field, names, order }))
    }

    /// Degrevlex ring with the given variable names.
    pub fn with_names(p: u64, names: &[&str]) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let order = MonomialOrder::degrevlex(names.len());
        Self::new(p, names, order)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same field and variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.characteristic() as u64, self.names.clone(), order)
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub type Term = (Monomial, u32);

/// Terms are kept strictly decreasing in the ring's order with no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::from_sorted(ring, if c == 0 { vec![] } else { vec![(Monomial::one(ring.nvars()), c)] })
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn variable(ring: &Arc<Ring>, index: usize) -> Self {
        Self::from_sorted(ring, vec![(Monomial::variable(ring.nvars(), index), 1)])
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: i64) -> Self {
        Self::from_terms(ring, vec![(m, ring.field.from_i64(c))])
    }

    /// Builds a canonical polynomial from arbitrary terms (any order,
    /// duplicates and zeros allowed).
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let field = ring.field;
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(HkError::RingMismatch)
        }
    }

    /// `self + c·m·g`, the workhorse of every reduction.
    pub(crate) fn add_scaled(&self, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        let field = self.ring.field;
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), field.mul(*gc, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(x.1, y.1);
                        let m = a.next().unwrap().0.clone();
                        b.next();
                        if s != 0 {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(1, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let minus_one = self.ring.field.neg(1);
        Ok(self.add_scaled(minus_one, &Monomial::one(self.ring.nvars()), other))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let field = self.ring.field;
        let c = c % field.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Result<Polynomial> {
        let field = self.ring.field;
        let c = c % field.characteristic();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(tm, tc)| Ok((tm.checked_mul(m)?, field.mul(*tc, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.checked_mul(m2)?, field.mul(*c1, *c2)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, mut k: u64) -> Result<Polynomial> {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// f ↦ f^q for q a power of the characteristic: coefficients are fixed
    /// by Frobenius, so only exponents scale.
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        check_frobenius_power(self.ring.characteristic(), q)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.pow(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        // m ↦ m^q preserves any monomial order, so the terms stay sorted.
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Re-expresses the polynomial in another ring with the same field whose
    /// first `self.ring.nvars()` variables are this ring's variables.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if target.characteristic() != self.ring.characteristic() || target.nvars() < self.ring.nvars() {
            return Err(HkError::RingMismatch);
        }
        let extra = target.nvars() - self.ring.nvars();
        let terms = self.terms.iter().map(|(m, c)| (m.extend(extra), *c)).collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Inverse of `embed`: drops trailing variables, which must not occur.
    pub fn restrict(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let n = target.nvars();
        if target.characteristic() != self.ring.characteristic()
            || self.terms.iter().any(|(m, _)| m.exponents()[n..].iter().any(|&e| e > 0))
        {
            return Err(HkError::RingMismatch);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.truncate(n), *c)).collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact division by `divisor`; `None` if it leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let field = self.ring.field;
        let (dm, dc) = match divisor.leading_term() {
            None => return Err(HkError::DivisionByZero { p: field.characteristic() }),
            Some(t) => t.clone(),
        };
        let dinv = field.inv(dc)?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            let Some(shift) = m.div(&dm) else {
                return Ok(None);
            };
            let coef = field.mul(c, dinv);
            rest = rest.add_scaled(field.neg(coef), &shift, divisor);
            quotient.push((shift, coef));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quotient)))
    }
}

pub(crate) fn check_frobenius_power(p: u32, q: u64) -> Result<u32> {
    let mut e = 0;
    let mut v = q;
    while v > 1 && v % p as u64 == 0 {
        v /= p as u64;
        e += 1;
    }
    if q == 0 || v != 1 {
        return Err(HkError::InvalidFrobeniusPower { q, p });
    }
    Ok(e)
}

/// Ring-checked product.
pub fn poly_multiply(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.mul(g)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
