//! Counting monomials outside a monomial ideal.

use smallvec::SmallVec;

use crate::error::{HkError, Result};
use crate::monomial::Monomial;

/// Removes generators divisible by another generator (and duplicates).
pub fn minimal_monomials(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(m)) {
            out.push(m.clone());
        }
    }
    out
}

type Exps = SmallVec<[u32; 6]>;

/// Number of monomials in `nvars` variables divisible by none of `gens`.
/// Fails with `NotArtinian` when that set is infinite.
pub fn count_standard_monomials(gens: &[Monomial], nvars: usize) -> Result<u64> {
    let exps: Vec<Exps> = minimal_monomials(gens)
        .iter()
        .map(|m| m.exponents().iter().copied().collect())
        .collect();
    if exps.iter().any(|e| e.iter().all(|&v| v == 0)) {
        return Ok(0);
    }
    for v in 0..nvars {
        let has_pure_power = exps
            .iter()
            .any(|e| e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0));
        if !has_pure_power {
            return Err(HkError::NotArtinian { variable: v });
        }
    }
    Ok(count_rec(&exps, 0, nvars))
}

/// Counts standard monomials in variables `var..nvars`; `gens` are already
/// projected to be zero on the variables before `var`.
fn count_rec(gens: &[Exps], var: usize, nvars: usize) -> u64 {
    if gens.iter().any(|e| e[var..].iter().all(|&v| v == 0)) {
        return 0;
    }
    if var == nvars {
        return 1;
    }
    let bound = gens
        .iter()
        .filter(|e| e[var + 1..].iter().all(|&v| v == 0))
        .map(|e| e[var])
        .min()
        .expect("Artinian ideals have a pure power in every variable");
    let mut breaks: Vec<u32> = gens.iter().map(|e| e[var]).filter(|&a| a < bound).collect();
    breaks.push(0);
    breaks.sort_unstable();
    breaks.dedup();
    breaks.push(bound);

    let mut total = 0;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // Generators active once x_var has exponent lo, with x_var projected out.
        let slice: Vec<Exps> = gens
            .iter()
            .filter(|e| e[var] <= lo)
            .map(|e| {
                let mut e = e.clone();
                e[var] = 0;
                e
            })
            .collect();
        let slice = minimal_exps(slice);
        total += (hi - lo) as u64 * count_rec(&slice, var + 1, nvars);
    }
    total
}

fn minimal_exps(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by_key(|e| e.iter().map(|&v| v as u64).sum::<u64>());
    let mut out: Vec<Exps> = Vec::new();
    for e in gens {
        if !out.iter().any(|g| g.iter().zip(e.iter()).all(|(a, b)| a <= b)) {
            out.push(e);
        }
    }
    out
}
