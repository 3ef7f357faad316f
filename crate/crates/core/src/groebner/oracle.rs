//! Gröbner-free length computation for homogeneous ideals.
//!
//! For each degree D the span of {m·g : deg m + deg g = D} is row-reduced
//! over F_p; dim (R/I)_D is the number of monomials minus the rank. Summation
//! stops at the first degree where I_D = R_D, after which every graded piece
//! of the quotient vanishes.

use std::collections::HashMap;

use crate::error::{HkError, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

use super::IdealSpec;

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

struct Echelon {
    field: PrimeField,
    ncols: usize,
    /// pivots[c] is a sparse row whose first nonzero entry (value 1) is at c.
    pivots: Vec<Option<Vec<(usize, u32)>>>,
    rank: usize,
}

impl Echelon {
    fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivots: vec![None; ncols],
            rank: 0,
        }
    }

    fn insert(&mut self, mut row: Vec<u32>) {
        let f = self.field;
        for c in 0..self.ncols {
            let a = row[c];
            if a == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(piv) => {
                    let k = f.neg(a);
                    for &(j, v) in piv {
                        row[j] = f.add(row[j], f.mul(k, v));
                    }
                }
                None => {
                    let inv = f.inv(a).expect("nonzero");
                    let sparse = (c..self.ncols)
                        .filter(|&j| row[j] != 0)
                        .map(|j| (j, f.mul(row[j], inv)))
                        .collect();
                    self.pivots[c] = Some(sparse);
                    self.rank += 1;
                    return;
                }
            }
        }
    }

    fn is_full(&self) -> bool {
        self.rank == self.ncols
    }
}

/// dim_k R/(I + relations) for homogeneous input, by per-degree linear algebra.
/// Fails with `NotArtinian` if the quotient is still nonzero past `max_degree`.
pub fn linear_algebra_length(ideal: &IdealSpec, relations: &IdealSpec, max_degree: u32) -> Result<u64> {
    let all = ideal.sum(relations)?;
    if !all.is_homogeneous() {
        return Err(HkError::NotHomogeneous);
    }
    let ring = all.ring().clone();
    let n = ring.nvars();
    let gens: Vec<&Polynomial> = all.generators().iter().collect();
    let mut total = 0u64;
    for d in 0..=max_degree {
        let monos = monomials_of_degree(n, d);
        let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut ech = Echelon::new(ring.field(), monos.len());
        // Multi-term generators first; monomial rows then reduce against sparse pivots.
        let mut ordered = gens.clone();
        ordered.sort_by_key(|g| std::cmp::Reverse(g.len()));
        for g in ordered {
            let gd = g.total_degree().unwrap_or(0) as u32;
            if gd > d {
                continue;
            }
            for shift in monomials_of_degree(n, d - gd) {
                let shift = Monomial::new(&shift)?;
                let mut row = vec![0u32; monos.len()];
                for (m, c) in g.terms() {
                    let prod = m.mul(&shift);
                    row[index[prod.exponents()]] = *c;
                }
                ech.insert(row);
                if ech.is_full() {
                    break;
                }
            }
            if ech.is_full() {
                break;
            }
        }
        total += (monos.len() - ech.rank) as u64;
        if ech.is_full() {
            return Ok(total);
        }
    }
    Err(HkError::NotArtinian { variable: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{artinian_length, bracket_power, EngineConfig};
    use crate::poly::Ring;

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 7), vec![vec![7]]);
        assert_eq!(monomials_of_degree(2, 0), vec![vec![0, 0]]);
    }

    #[test]
    fn box_lengths() {
        let r = Ring::with_names(3, &["x", "y"]).unwrap();
        let b = bracket_power(&IdealSpec::maximal(&r), 9).unwrap();
        assert_eq!(linear_algebra_length(&b, &IdealSpec::zero(&r), 100).unwrap(), 81);
    }

    #[test]
    fn agrees_with_groebner_on_quadric() {
        let r = Ring::with_names(5, &["x", "y", "z"]).unwrap();
        let f = (0..3)
            .map(|i| Polynomial::variable(&r, i).pow(2).unwrap())
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        let rel = IdealSpec::new(&r, vec![f]).unwrap();
        let b = bracket_power(&IdealSpec::maximal(&r), 5).unwrap();
        let la = linear_algebra_length(&b, &rel, 100).unwrap();
        let gb = artinian_length(&b, &rel, &EngineConfig::default()).unwrap();
        assert_eq!(la, gb);
    }

    #[test]
    fn rejects_inhomogeneous_and_non_artinian() {
        let r = Ring::with_names(5, &["x", "y"]).unwrap();
        let x = Polynomial::variable(&r, 0);
        let inh = IdealSpec::new(&r, vec![x.add(&Polynomial::one(&r)).unwrap()]).unwrap();
        assert_eq!(linear_algebra_length(&inh, &IdealSpec::zero(&r), 10), Err(HkError::NotHomogeneous));
        let line = IdealSpec::new(&r, vec![x]).unwrap();
        assert!(matches!(
            linear_algebra_length(&line, &IdealSpec::zero(&r), 10),
            Err(HkError::NotArtinian { .. })
        ));
    }
}
