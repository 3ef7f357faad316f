//! Binomial coefficients and Stirling numbers of the second kind.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{HkError, Result};

/// Rows 0..=DEFAULT_TABLE_SIZE of S(n, k) are memoized on first use.
pub const DEFAULT_TABLE_SIZE: usize = 64;

/// C(n, k), zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| build_rows(DEFAULT_TABLE_SIZE))
}

/// Triangle S(n, k) for 0 ≤ k ≤ n ≤ n_max by S(n,k) = k S(n−1,k) + S(n−1,k−1).
pub fn build_rows(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = vec![BigInt::zero(); n + 1];
        for k in 1..=n {
            let stay = if k < n { &prev[k] * k } else { BigInt::zero() };
            row[k] = stay + &prev[k - 1];
        }
        rows.push(row);
    }
    rows
}

/// S(n, k) by the recurrence; zero for k > n and for k = 0 < n.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    if n <= DEFAULT_TABLE_SIZE {
        return table()[n][k].clone();
    }
    // Beyond the memo table only column k is needed.
    let mut col = vec![BigInt::zero(); k + 1];
    col[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            col[j] = &col[j] * j + &col[j - 1];
        }
        col[0] = BigInt::zero();
    }
    col[k].clone()
}

/// S(n, k) = (1/k!) Σ_{i=0}^{k} (−1)^{k−i} C(k, i) i^n.
pub fn stirling2_explicit(n: usize, k: usize) -> Result<BigInt> {
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let term = binomial(k as i64, i as i64) * BigInt::from(i).pow(n as u32);
        if (k - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&factorial(k as u64));
    if !r.is_zero() {
        return Err(HkError::ArithmeticBug(format!(
            "alternating sum for S({n}, {k}) is not divisible by {k}!"
        )));
    }
    Ok(q)
}

/// Checks x^n = Σ_k S(n, k) x(x−1)···(x−k+1) exactly.
pub fn falling_factorial_identity_check(n: usize, x: u64) -> bool {
    let lhs = BigInt::from(x).pow(n as u32);
    let mut rhs = BigInt::zero();
    let mut falling = BigInt::one();
    for k in 0..=n {
        rhs += stirling2(n, k) * &falling;
        falling *= BigInt::from(x as i64 - k as i64);
    }
    lhs == rhs
}
