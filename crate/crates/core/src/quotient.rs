//! Quotient singularities k[[x_1..x_d]]^G, with Veronese subrings of k[x,y]
//! as the family where the semigroup is explicit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{HkError, Result};
use crate::field::is_prime;
use crate::rational::{abs_diff, rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientParams {
    pub group_order: u64,
    /// Minimal number of generators of S as an A-module.
    pub mu: u64,
    /// Characteristic, when known; must be coprime to |G|.
    pub p: Option<u64>,
    /// Recorded on trust; the group itself is never constructed.
    pub no_pseudo_reflections: bool,
}

impl QuotientParams {
    pub fn new(group_order: u64, mu: u64, p: Option<u64>) -> Result<Self> {
        if group_order == 0 || mu == 0 {
            return Err(HkError::InvalidParameter("group order and mu must be positive".into()));
        }
        if let Some(p) = p {
            if !is_prime(p) {
                return Err(HkError::InvalidCharacteristic(p));
            }
            if group_order.gcd(&p) != 1 {
                return Err(HkError::HypothesisViolation(format!(
                    "characteristic {p} divides the group order {group_order}"
                )));
            }
        }
        Ok(QuotientParams {
            group_order,
            mu,
            p,
            no_pseudo_reflections: true,
        })
    }
}

pub fn quotient_ehk(params: &QuotientParams) -> BigRational {
    BigRational::new(BigInt::from(params.mu), BigInt::from(params.group_order))
}

pub fn quotient_mhk(group_order: u64) -> Result<BigRational> {
    if group_order == 0 {
        return Err(HkError::InvalidParameter("group order must be positive".into()));
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(group_order)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VeroneseParams {
    pub e: u64,
}

impl VeroneseParams {
    pub fn new(e: u64) -> Result<Self> {
        if e == 0 {
            return Err(HkError::InvalidParameter("Veronese degree must be at least 1".into()));
        }
        Ok(VeroneseParams { e })
    }

    /// The cyclic group of e-th roots of unity acting diagonally.
    pub fn group_order(&self) -> u64 {
        self.e
    }

    pub fn quotient_params(&self, p: Option<u64>) -> Result<QuotientParams> {
        QuotientParams::new(self.e, veronese_mu(self.e)?, p)
    }
}

/// Counts minimal monomial generators of ⊕_{n ≡ i mod e} S_n over the e-th
/// Veronese of S = k[x,y], summed over the residues i. A monomial of degree n
/// is redundant iff it is a multiple of a class-i monomial of degree n − ke.
pub fn veronese_mu(e: u64) -> Result<u64> {
    if e == 0 {
        return Err(HkError::InvalidParameter("Veronese degree must be at least 1".into()));
    }
    let mut total = 0u64;
    for i in 0..e {
        // Above degree i + e every monomial is x or y times a lower one of the same class times A_e.
        let mut gens: Vec<(u64, u64)> = Vec::new();
        let mut n = i;
        while n <= i + 2 * e {
            for a in 0..=n {
                let b = n - a;
                let redundant = gens.iter().any(|&(ga, gb)| ga <= a && gb <= b && (a + b - ga - gb) % e == 0);
                if !redundant {
                    gens.push((a, b));
                }
            }
            n += e;
        }
        total += gens.len() as u64;
    }
    Ok(total)
}

/// l(A / m_A^[q]) for the e-th Veronese A of k[x,y]: lattice points (a, b)
/// with e | a + b not lying in any (qi, q(e−i)) + A.
pub fn veronese_semigroup_length(e: u64, q: u64, budget: u64) -> Result<BigInt> {
    if e == 0 || q == 0 {
        return Err(HkError::InvalidParameter("e and q must be positive".into()));
    }
    let side = e.checked_mul(q).ok_or(HkError::BudgetExceeded { budget })?;
    match side.checked_mul(side) {
        Some(c) if c <= budget => {}
        _ => return Err(HkError::BudgetExceeded { budget }),
    }
    let mut count = 0u64;
    for a in 0..side {
        for b in 0..side {
            if (a + b) % e != 0 {
                continue;
            }
            let covered = (0..=e).any(|i| a >= q * i && b >= q * (e - i));
            if !covered {
                count += 1;
            }
        }
    }
    Ok(BigInt::from(count))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverCheck {
    pub g_order: u64,
    pub h_order: u64,
    /// Degree r = (G : H) of the cover.
    pub index: u64,
    pub mhk_cover: BigRational,
    pub mhk_base: BigRational,
    pub identity_holds: bool,
    /// Distance of a supplied m_HK estimate for A from 1/|G|, when given.
    pub estimate_error: Option<BigRational>,
    pub estimate_within_tolerance: Option<bool>,
}

impl CoverCheck {
    pub fn passed(&self) -> bool {
        self.identity_holds && self.estimate_within_tolerance.unwrap_or(true)
    }
}

/// Checks m_HK(B) = r · m_HK(A) for A = S^G with canonical cover B = S^H.
pub fn canonical_cover_check(g_order: u64, h_order: u64, estimate: Option<&BigRational>) -> Result<CoverCheck> {
    if g_order == 0 || h_order == 0 || g_order % h_order != 0 {
        return Err(HkError::InvalidSubgroup { g: g_order, h: h_order });
    }
    let index = g_order / h_order;
    let mhk_cover = quotient_mhk(h_order)?;
    let mhk_base = quotient_mhk(g_order)?;
    let identity_holds = mhk_cover == BigRational::from_integer(BigInt::from(index)) * &mhk_base;
    let estimate_error = estimate.map(|est| abs_diff(est, &mhk_base));
    let estimate_within_tolerance = estimate_error.as_ref().map(|err| *err < rat(1, 20));
    Ok(CoverCheck {
        g_order,
        h_order,
        index,
        mhk_cover,
        mhk_base,
        identity_holds,
        estimate_error,
        estimate_within_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(quotient_ehk(&QuotientParams::new(1, 1, Some(5)).unwrap()), rat(1, 1));
        assert_eq!(quotient_ehk(&QuotientParams::new(2, 3, Some(5)).unwrap()), rat(3, 2));
        assert_eq!(quotient_mhk(2).unwrap(), rat(1, 2));
        assert_eq!(quotient_mhk(1).unwrap(), rat(1, 1));
        assert!(quotient_mhk(0).is_err());
        assert!(matches!(QuotientParams::new(6, 1, Some(3)), Err(HkError::HypothesisViolation(_))));
        assert_eq!(QuotientParams::new(6, 1, Some(4)), Err(HkError::InvalidCharacteristic(4)));
    }

    #[test]
    fn veronese_generators() {
        assert_eq!(veronese_mu(1).unwrap(), 1);
        assert_eq!(veronese_mu(2).unwrap(), 3);
        assert_eq!(veronese_mu(3).unwrap(), 6);
        for e in 1..=8 {
            assert_eq!(veronese_mu(e).unwrap(), e * (e + 1) / 2);
        }
        let v = VeroneseParams::new(3).unwrap();
        assert_eq!(quotient_ehk(&v.quotient_params(Some(5)).unwrap()), rat(2, 1));
        assert_eq!(quotient_mhk(v.group_order()).unwrap(), rat(1, 3));
        assert!(VeroneseParams::new(0).is_err());
    }

    #[test]
    fn mhk_below_ehk() {
        for g in 1..=12u64 {
            for mu in 1..=6 {
                let params = QuotientParams::new(g, mu, Some(13)).unwrap();
                assert!(quotient_mhk(g).unwrap() <= quotient_ehk(&params));
            }
        }
    }

    #[test]
    fn regular_veronese_is_a_box() {
        for q in 1..=9 {
            assert_eq!(veronese_semigroup_length(1, q, 1 << 20).unwrap(), BigInt::from(q * q));
        }
    }

    fn ladder_errors(e: u64, ladder: &[u64]) -> Vec<BigRational> {
        let target = quotient_ehk(&VeroneseParams::new(e).unwrap().quotient_params(None).unwrap());
        ladder
            .iter()
            .map(|&q| {
                let l = veronese_semigroup_length(e, q, 1 << 30).unwrap();
                abs_diff(&BigRational::new(l, BigInt::from(q * q)), &target)
            })
            .collect()
    }

    #[test]
    fn veronese_ladders() {
        let e2 = ladder_errors(2, &[3, 9, 27, 81]);
        assert!(e2.windows(2).all(|w| w[1] < w[0]));
        assert!(*e2.last().unwrap() < rat(1, 20));
        // For e = 3 the error is 0 or 1/q^2 depending on q mod 3.
        let ladder = [2u64, 4, 8, 16];
        for (q, err) in ladder.iter().zip(ladder_errors(3, &ladder)) {
            assert!(err <= rat(1, (q * q) as i64), "q={q}");
        }
    }

    #[test]
    fn veronese_budget() {
        assert_eq!(
            veronese_semigroup_length(2, 1000, 100),
            Err(HkError::BudgetExceeded { budget: 100 })
        );
    }

    #[test]
    fn cover_examples() {
        let c = canonical_cover_check(2, 1, None).unwrap();
        assert!(c.passed());
        assert_eq!(c.mhk_cover, rat(1, 1));
        assert_eq!(c.index, 2);
        let c = canonical_cover_check(12, 3, None).unwrap();
        assert!(c.passed() && c.mhk_cover == rat(1, 3));
        let c = canonical_cover_check(6, 6, None).unwrap();
        assert!(c.passed() && c.mhk_cover == c.mhk_base);
        assert_eq!(canonical_cover_check(12, 5, None), Err(HkError::InvalidSubgroup { g: 12, h: 5 }));
        let c = canonical_cover_check(2, 1, Some(&rat(51, 100))).unwrap();
        assert_eq!(c.estimate_within_tolerance, Some(true));
        let c = canonical_cover_check(2, 1, Some(&rat(6, 10))).unwrap();
        assert!(!c.passed());
    }

    #[test]
    fn all_divisor_pairs() {
        for g in 1..=60u64 {
            for h in (1..=g).filter(|h| g % h == 0) {
                assert!(canonical_cover_check(g, h, None).unwrap().passed(), "G={g} H={h}");
            }
        }
    }
}
