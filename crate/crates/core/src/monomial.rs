//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{HkError, Result};

/// Largest exponent a single variable may carry. Bracket powers of degree-d
/// generators need about d·q, so this leaves room for q well beyond 2^20.
pub const MAX_EXPONENT: u64 = 1 << 24;

type Exps = SmallVec<[u32; 6]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        if let Some(&e) = exps.iter().find(|&&e| e as u64 > MAX_EXPONENT) {
            return Err(HkError::ExponentOverflow(e as u64));
        }
        Ok(Self::from_exps(exps.iter().copied().collect()))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    fn from_exps(exps: Exps) -> Self {
        let degree = exps.iter().map(|&e| e as u64).sum();
        Monomial { exps, degree }
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; exponents inside the engine stay far below u32::MAX, so only
    /// a debug check guards the addition.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| {
                debug_assert!(a.checked_add(*b).is_some());
                a + b
            })
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.nvars());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            let s = *a as u64 + *b as u64;
            if s > MAX_EXPONENT {
                return Err(HkError::ExponentOverflow(s));
            }
            exps.push(s as u32);
        }
        Ok(Self::from_exps(exps))
    }

    pub fn pow(&self, k: u64) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.nvars());
        for &a in &self.exps {
            let e = a as u64 * k;
            if e > MAX_EXPONENT {
                return Err(HkError::ExponentOverflow(e));
            }
            exps.push(e as u32);
        }
        Ok(Self::from_exps(exps))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exps(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power x_i^k with k ≥ 1, returns (i, k).
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    /// Extends the exponent vector with `extra` trailing zero exponents.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps, degree: self.degree }
    }

    /// Drops trailing variables; caller guarantees they carry exponent zero.
    pub fn truncate(&self, nvars: usize) -> Monomial {
        debug_assert!(self.exps[nvars..].iter().all(|&e| e == 0));
        Monomial {
            exps: self.exps[..nvars].iter().copied().collect(),
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Deglex,
    Degrevlex,
    /// Block order: degrevlex on the first `block` variables (by precedence),
    /// ties broken by degrevlex on the rest. Eliminates the first block.
    Elimination { block: usize },
}

/// A monomial order together with a variable precedence: `precedence[0]` is
/// the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
    identity: bool,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &v in &precedence {
            if v >= seen.len() || seen[v] {
                return Err(HkError::InvalidParameter(format!(
                    "variable precedence {precedence:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if let OrderKind::Elimination { block } = kind {
            if block > precedence.len() {
                return Err(HkError::InvalidParameter(format!(
                    "elimination block {block} larger than variable count {}",
                    precedence.len()
                )));
            }
        }
        let identity = precedence.iter().enumerate().all(|(i, &v)| i == v);
        Ok(MonomialOrder { kind, precedence, identity })
    }

    /// The order with variable 0 most significant.
    pub fn standard(kind: OrderKind, nvars: usize) -> Self {
        Self::new(kind, (0..nvars).collect()).expect("identity permutation")
    }

    pub fn degrevlex(nvars: usize) -> Self {
        Self::standard(OrderKind::Degrevlex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    #[inline]
    fn var(&self, rank: usize) -> usize {
        if self.identity {
            rank
        } else {
            self.precedence[rank]
        }
    }

    fn lex_range(&self, a: &[u32], b: &[u32], ranks: std::ops::Range<usize>) -> Ordering {
        for r in ranks {
            let v = self.var(r);
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    fn revlex_range(&self, a: &[u32], b: &[u32], ranks: std::ops::Range<usize>) -> Ordering {
        for r in ranks.rev() {
            let v = self.var(r);
            match a[v].cmp(&b[v]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    fn partial_degree(&self, a: &[u32], ranks: std::ops::Range<usize>) -> u64 {
        ranks.map(|r| a[self.var(r)] as u64).sum()
    }

    #[inline]
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        debug_assert_eq!(m1.nvars(), self.nvars());
        debug_assert_eq!(m2.nvars(), self.nvars());
        let (a, b) = (m1.exponents(), m2.exponents());
        let n = self.nvars();
        match self.kind {
            OrderKind::Lex => self.lex_range(a, b, 0..n),
            OrderKind::Deglex => m1
                .degree()
                .cmp(&m2.degree())
                .then_with(|| self.lex_range(a, b, 0..n)),
            OrderKind::Degrevlex => m1
                .degree()
                .cmp(&m2.degree())
                .then_with(|| self.revlex_range(a, b, 0..n)),
            OrderKind::Elimination { block } => self
                .partial_degree(a, 0..block)
                .cmp(&self.partial_degree(b, 0..block))
                .then_with(|| self.revlex_range(a, b, 0..block))
                .then_with(|| {
                    self.partial_degree(a, block..n)
                        .cmp(&self.partial_degree(b, block..n))
                })
                .then_with(|| self.revlex_range(a, b, block..n)),
        }
    }
}

/// Checked comparison for callers that cannot vouch for matching ambients.
pub fn monomial_compare(order: &MonomialOrder, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
    if m1.nvars() != order.nvars() || m2.nvars() != order.nvars() {
        return Err(HkError::RingMismatch);
    }
    Ok(order.compare(m1, m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn standard_examples() {
        let drl = MonomialOrder::degrevlex(2);
        let lex = MonomialOrder::standard(OrderKind::Lex, 2);
        let dl = MonomialOrder::standard(OrderKind::Deglex, 2);
        assert_eq!(drl.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(lex.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(dl.compare(&m(&[2, 1]), &m(&[2, 0])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_differs_from_deglex() {
        let drl = MonomialOrder::degrevlex(3);
        let dl = MonomialOrder::standard(OrderKind::Deglex, 3);
        let a = m(&[1, 0, 2]); // x z^2
        let b = m(&[0, 2, 1]); // y^2 z
        assert_eq!(dl.compare(&a, &b), Ordering::Greater);
        assert_eq!(drl.compare(&a, &b), Ordering::Less);
    }

    #[test]
    fn precedence_permutes_variables() {
        let lex_yx = MonomialOrder::new(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(lex_yx.compare(&m(&[2, 0]), &m(&[0, 1])), Ordering::Less);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn elimination_order_eliminates_block() {
        let ord = MonomialOrder::standard(OrderKind::Elimination { block: 1 }, 3);
        // anything with t beats any t-free monomial
        assert_eq!(ord.compare(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn ambient_mismatch() {
        let drl = MonomialOrder::degrevlex(2);
        assert_eq!(
            monomial_compare(&drl, &m(&[1, 0, 0]), &m(&[1, 0])),
            Err(HkError::RingMismatch)
        );
    }

    #[test]
    fn exponent_width() {
        assert!(Monomial::new(&[MAX_EXPONENT as u32]).is_ok());
        assert!(Monomial::new(&[MAX_EXPONENT as u32 + 1]).is_err());
        assert!(m(&[1 << 20]).pow(32).is_err());
        assert_eq!(m(&[1, 2]).pow(125).unwrap(), m(&[125, 250]));
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        (0usize..4, Just(vec![0usize, 1, 2]).prop_shuffle()).prop_map(|(k, perm)| {
            let kind = match k {
                0 => OrderKind::Lex,
                1 => OrderKind::Deglex,
                2 => OrderKind::Degrevlex,
                _ => OrderKind::Elimination { block: 1 },
            };
            MonomialOrder::new(kind, perm).unwrap()
        })
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..6, 3).prop_map(|e| Monomial::new(&e).unwrap())
    }

    proptest! {
        #[test]
        fn order_axioms(ord in order(), a in mono(), b in mono(), c in mono()) {
            let ab = ord.compare(&a, &b);
            prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // multiplicative
            prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
            // 1 is minimal
            prop_assert_ne!(ord.compare(&Monomial::one(3), &a), Ordering::Greater);
            // transitive
            if ab != Ordering::Greater && ord.compare(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.compare(&a, &c), Ordering::Greater);
            }
        }
    }
}
