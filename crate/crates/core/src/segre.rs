//! Hilbert–Kunz invariants of Segre products k[x_1..x_r] # k[y_1..y_s].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HkError, Result};
use crate::stirling::{binomial, factorial, stirling2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegreParams {
    r: u32,
    s: u32,
}

impl SegreParams {
    pub fn new(r: u32, s: u32) -> Result<Self> {
        if r < 2 || s < r {
            return Err(HkError::InvalidParameter(format!(
                "Segre product needs 2 <= r <= s, got r={r}, s={s}"
            )));
        }
        Ok(SegreParams { r, s })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Krull dimension r + s − 1.
    pub fn d(&self) -> u32 {
        self.r + self.s - 1
    }
}

/// Number of degree-n monomials in r variables.
pub fn alpha(r: u32, n: u64) -> BigInt {
    binomial(n as i64 + r as i64 - 1, r as i64 - 1)
}

/// Number of degree-n monomials in r variables with every exponent below q.
pub fn alpha_q(r: u32, n: u64, q: u64) -> BigInt {
    if r == 0 || q == 0 || n > r as u64 * (q - 1) {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for i in 0..=r as u64 {
        if i * q > n {
            break;
        }
        let term = binomial(r as i64, i as i64) * binomial((n - i * q) as i64 + r as i64 - 1, r as i64 - 1);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// α_{r,n} and α_{r,n,q} for n in 0..=r(q−1).
#[derive(Debug, Clone)]
pub struct AlphaTable {
    pub r: u32,
    pub q: u64,
    pub alpha: Vec<BigInt>,
    pub alpha_q: Vec<BigInt>,
}

impl AlphaTable {
    pub fn new(r: u32, q: u64) -> Self {
        Self::with_len(r, q, r as u64 * q.saturating_sub(1))
    }

    /// Table extended with zeros of α_q up to degree `top`.
    pub fn with_len(r: u32, q: u64, top: u64) -> Self {
        AlphaTable {
            r,
            q,
            alpha: (0..=top).map(|n| alpha(r, n)).collect(),
            alpha_q: (0..=top).map(|n| alpha_q(r, n, q)).collect(),
        }
    }
}

fn cross_sum(p: &SegreParams) -> BigInt {
    let (r, s, d) = (p.r as i64, p.s as i64, p.d());
    let mut sum = BigInt::zero();
    for k in 1..r {
        for j in 1..=(r - k) {
            let term = binomial(r, k + j) * binomial(s, j) * BigInt::from(k).pow(d);
            if (r + k) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    sum
}

fn scaled_stirling(d: u32, k: u32) -> BigRational {
    BigRational::new(factorial(k as u64) * stirling2(d as usize, k as usize), factorial(d as u64))
}

pub fn segre_ehk_closed(p: &SegreParams) -> BigRational {
    let d = p.d();
    scaled_stirling(d, p.s) - BigRational::new(cross_sum(p), factorial(d as u64))
}

pub fn segre_mhk_closed(p: &SegreParams) -> BigRational {
    let d = p.d();
    scaled_stirling(d, p.r) + BigRational::new(cross_sum(p), factorial(d as u64))
}

/// Limit of the one-sided sum Σ α_{r,n,q} α_{s,n} / q^d, i.e. r! S(d,r) / d!.
pub fn one_sided_limit(p: &SegreParams) -> BigRational {
    scaled_stirling(p.d(), p.r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQ {
    pub q: u64,
    /// l(A / m^[q]) for the Segre product.
    pub ehk_numerator: BigInt,
    /// l(A / ann F^e(z)) for z generating the socle of E_A.
    pub mhk_numerator: BigInt,
    /// Σ α_{r,n,q} α_{s,n}.
    pub one_sided_numerator: BigInt,
}

impl FiniteQ {
    pub fn ehk_ratio(&self, p: &SegreParams) -> BigRational {
        ratio(&self.ehk_numerator, self.q, p.d())
    }

    pub fn mhk_ratio(&self, p: &SegreParams) -> BigRational {
        ratio(&self.mhk_numerator, self.q, p.d())
    }

    pub fn one_sided_ratio(&self, p: &SegreParams) -> BigRational {
        ratio(&self.one_sided_numerator, self.q, p.d())
    }
}

fn ratio(num: &BigInt, q: u64, d: u32) -> BigRational {
    BigRational::new(num.clone(), BigInt::from(q).pow(d))
}

/// Finite-q numerators. A Segre monomial x^a y^b of bidegree (n, n) survives
/// modulo m^[q] iff all a_i < q or all b_j < q, so the e_HK sum runs over
/// every degree where either factor is bounded.
pub fn segre_finite_q(p: &SegreParams, q: u64) -> Result<FiniteQ> {
    if q == 0 {
        return Err(HkError::InvalidParameter("q must be at least 1".into()));
    }
    let top = p.s as u64 * (q - 1);
    let tr = AlphaTable::with_len(p.r, q, top);
    let ts = AlphaTable::with_len(p.s, q, top);
    let mut ehk = BigInt::zero();
    let mut mhk = BigInt::zero();
    let mut one_sided = BigInt::zero();
    for n in 0..=top as usize {
        let both = &tr.alpha_q[n] * &ts.alpha_q[n];
        ehk += &tr.alpha[n] * &ts.alpha_q[n] + &tr.alpha_q[n] * &ts.alpha[n] - &both;
        one_sided += &tr.alpha_q[n] * &ts.alpha[n];
        mhk += both;
    }
    Ok(FiniteQ {
        q,
        ehk_numerator: ehk,
        mhk_numerator: mhk,
        one_sided_numerator: one_sided,
    })
}

fn box_sum_histogram(k: u32, q: u64) -> Vec<u64> {
    let top = k as usize * (q as usize - 1);
    let mut hist = vec![0u64; top + 1];
    let mut digits = vec![0u64; k as usize];
    loop {
        hist[digits.iter().sum::<u64>() as usize] += 1;
        let mut i = 0;
        loop {
            if i == digits.len() {
                return hist;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Counts tuples a ∈ [0,q)^r, b ∈ [0,q)^s with Σa = Σb by enumerating each
/// side separately and matching sums. Costs q^r + q^s steps.
pub fn socle_annihilator_count(r: u32, s: u32, q: u64, budget: u64) -> Result<BigInt> {
    if r == 0 || s == 0 || q == 0 {
        return Err(HkError::InvalidParameter("r, s, q must be positive".into()));
    }
    let cost = q.checked_pow(r).zip(q.checked_pow(s)).and_then(|(a, b)| a.checked_add(b));
    match cost {
        Some(c) if c <= budget => {}
        _ => return Err(HkError::BudgetExceeded { budget }),
    }
    let ha = box_sum_histogram(r, q);
    let hb = box_sum_histogram(s, q);
    Ok(ha
        .iter()
        .zip(hb.iter())
        .map(|(&a, &b)| BigInt::from(a) * b)
        .sum())
}

/// Full q^{r+s} enumeration of the same tuple set; only for tiny cases.
pub fn socle_annihilator_count_raw(r: u32, s: u32, q: u64, budget: u64) -> Result<u64> {
    let n = r + s;
    match q.checked_pow(n) {
        Some(c) if c <= budget => {}
        _ => return Err(HkError::BudgetExceeded { budget }),
    }
    let mut digits = vec![0u64; n as usize];
    let mut count = 0u64;
    loop {
        let (a, b) = digits.split_at(r as usize);
        if a.iter().sum::<u64>() == b.iter().sum::<u64>() {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(count);
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// e_HK and m_HK of k[x_1,x_2] # k[y_1..y_s], the Rees algebra of (y_1..y_s).
pub fn rees_formulas(s: u32) -> Result<(BigRational, BigRational)> {
    if s < 2 {
        return Err(HkError::InvalidParameter(format!("s must be at least 2, got {s}")));
    }
    let fs1 = factorial(s as u64 + 1);
    let ehk = BigRational::from_integer(BigInt::from(s))
        * (BigRational::new(BigInt::one(), BigInt::from(2)) + BigRational::new(BigInt::one(), fs1.clone()));
    let mhk = BigRational::new((BigInt::one() << (s + 1)) - BigInt::from(s) - 2, fs1);
    Ok((ehk, mhk))
}

/// e_HK + m_HK for the Gorenstein case r = s.
pub fn gorenstein_sum(r: u32) -> Result<BigRational> {
    if r < 2 {
        return Err(HkError::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    let d = 2 * r - 1;
    Ok(BigRational::new(
        BigInt::from(2) * factorial(r as u64) * stirling2(d as usize, r as usize),
        factorial(d as u64),
    ))
}
