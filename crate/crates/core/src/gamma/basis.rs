use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::scalar::binomial;
use crate::error::{Error, Result};

/// Exponent tuple `α ∈ ℕ^n` labelling the divided monomial
/// `γ^{α_1}(e_1) × … × γ^{α_n}(e_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(0,…,0,d,0,…)` with `d` in slot `i`.
    pub fn single(n: usize, i: usize, d: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = d;
        MultiIndex(v)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `Π α_i!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        for &a in &self.0 {
            for k in 2..=a {
                acc *= k;
            }
        }
        acc
    }

    /// Multiset of slot indices, each `i` repeated `α_i` times.
    pub fn to_word(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i, a as usize)).collect()
    }

    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut v = vec![0; n];
        for &i in word {
            v[i] += 1;
        }
        MultiIndex(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(MultiIndex(vec![]));
        }
        s.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Malformed(format!("bad multi-index {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(MultiIndex)
    }
}

/// All `α ∈ ℕ^n` with `|α| = d`, in ascending lexicographic order.
pub fn gamma_basis(n: usize, d: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    enumerate(n, d as u32, &mut prefix, &mut out);
    out
}

fn enumerate(n: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() == n {
        if remaining == 0 {
            out.push(MultiIndex(prefix.clone()));
        }
        return;
    }
    if prefix.len() + 1 == n {
        prefix.push(remaining);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for a in 0..=remaining {
        prefix.push(a);
        enumerate(n, remaining - a, prefix, out);
        prefix.pop();
    }
}

/// `dim Γ^d` of a free module of rank `n`: `binom(n+d-1, d)`.
pub fn gamma_dim(n: usize, d: usize) -> usize {
    if n == 0 {
        return usize::from(d == 0);
    }
    binomial((n + d - 1) as u64, d as u64).try_into().expect("dimension fits in usize")
}

/// Position of `α` in [`gamma_basis`].
pub fn basis_position(basis: &[MultiIndex], alpha: &MultiIndex) -> Option<usize> {
    basis.binary_search(alpha).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_enumeration() {
        let b = gamma_basis(2, 2);
        assert_eq!(b, vec![MultiIndex(vec![0, 2]), MultiIndex(vec![1, 1]), MultiIndex(vec![2, 0])]);
        assert_eq!(gamma_basis(0, 0), vec![MultiIndex(vec![])]);
        assert!(gamma_basis(0, 1).is_empty());
        assert_eq!(gamma_basis(3, 0), vec![MultiIndex(vec![0, 0, 0])]);
    }

    #[test]
    fn dimension_formula_matches_enumeration() {
        for n in 0..5 {
            for d in 0..6 {
                let b = gamma_basis(n, d);
                assert_eq!(b.len(), gamma_dim(n, d), "n={n} d={d}");
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let a: MultiIndex = "2, 0,1".parse().unwrap();
        assert_eq!(a.to_string(), "2,0,1");
        assert_eq!(a.to_word(), vec![0, 0, 2]);
        assert_eq!(MultiIndex::from_word(3, &[2, 0, 0]), a);
    }
}
