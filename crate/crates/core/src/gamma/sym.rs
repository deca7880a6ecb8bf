//! Symmetric tensors `TS^d(M) ⊂ M^{⊗d}`, used as an independent oracle for
//! the divided-power products.

use std::collections::BTreeMap;

use super::basis::MultiIndex;
use super::element::GammaElement;
use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// A tensor in `M^{⊗d}`, sparse over words `(i_1,…,i_d)` of basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    pub ring: Ring,
    pub rank: usize,
    pub degree: usize,
    pub coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl SymTensor {
    pub fn zero(ring: Ring, rank: usize, degree: usize) -> Self {
        SymTensor { ring, rank, degree, coeffs: BTreeMap::new() }
    }

    fn add_term(&mut self, w: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.coeffs.remove(&w).unwrap_or_else(|| self.ring.zero());
        let s = &cur + &c;
        if !s.is_zero() {
            self.coeffs.insert(w, s);
        }
    }

    pub fn coeff(&self, w: &[usize]) -> Scalar {
        self.coeffs.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Invariance under all slot permutations.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(w, c)| distinct_permutations(w).iter().all(|p| &self.coeff(p) == c))
    }
}

/// All distinct rearrangements of `w`, in lexicographic order.
pub fn distinct_permutations(w: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = w.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `γ^α ↦` sum of all distinct permutations of `e_1^{⊗α_1} ⊗ … ⊗ e_n^{⊗α_n}`.
pub fn to_sym_tensor(u: &GammaElement) -> SymTensor {
    let mut t = SymTensor::zero(u.ring(), u.rank(), u.degree());
    for (a, c) in u.terms() {
        for w in distinct_permutations(&a.to_word()) {
            t.add_term(w, c.clone());
        }
    }
    t
}

/// Inverse of [`to_sym_tensor`]: reads the coefficient of each sorted word.
pub fn from_sym_tensor(t: &SymTensor) -> Result<GammaElement> {
    if !t.is_symmetric() {
        return Err(Error::Malformed("tensor is not symmetric".into()));
    }
    let terms = t
        .coeffs
        .iter()
        .filter(|(w, _)| w.windows(2).all(|p| p[0] <= p[1]))
        .map(|(w, c)| (MultiIndex::from_word(t.rank, w), c.clone()));
    GammaElement::from_terms(t.ring, t.rank, t.degree, terms)
}

/// Shuffle product `TS^d × TS^e → TS^{d+e}`: each pair of words is
/// interleaved in every `binom(d+e, d)` way.
pub fn shuffle_product(a: &SymTensor, b: &SymTensor) -> Result<SymTensor> {
    if a.ring != b.ring || a.rank != b.rank {
        return Err(Error::DimensionMismatch("shuffle of tensors over different modules".into()));
    }
    let (d, e) = (a.degree, b.degree);
    let mut out = SymTensor::zero(a.ring, a.rank, d + e);
    let positions = subsets(d + e, d);
    for (w1, x) in &a.coeffs {
        for (w2, y) in &b.coeffs {
            let xy = x * y;
            for s in &positions {
                let mut w = Vec::with_capacity(d + e);
                let (mut i, mut j) = (0, 0);
                for k in 0..d + e {
                    if s.contains(&k) {
                        w.push(w1[i]);
                        i += 1;
                    } else {
                        w.push(w2[j]);
                        j += 1;
                    }
                }
                out.add_term(w, xy.clone());
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Slotwise product in `B^{⊗d}`: `(x_1⊗…⊗x_d)(y_1⊗…⊗y_d) = x_1y_1⊗…⊗x_dy_d`.
pub fn slotwise_product(alg: &FiniteAlgebra, a: &SymTensor, b: &SymTensor) -> Result<SymTensor> {
    if a.degree != b.degree || a.rank != alg.rank() || b.rank != alg.rank() || a.ring != alg.ring() {
        return Err(Error::DimensionMismatch("slotwise product needs equal degrees over the algebra".into()));
    }
    let d = a.degree;
    let n = alg.rank();
    // c_ij as sparse lists
    let table: Vec<Vec<Vec<(usize, Scalar)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    alg.mul_vec(&alg.basis_vector(i), &alg.basis_vector(j))
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut out = SymTensor::zero(a.ring, n, d);
    for (w1, x) in &a.coeffs {
        for (w2, y) in &b.coeffs {
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), x * y)];
            for k in 0..d {
                let slot = &table[w1[k]][w2[k]];
                let mut next = Vec::with_capacity(partial.len() * slot.len());
                for (w, c) in &partial {
                    for (idx, s) in slot {
                        let mut w = w.clone();
                        w.push(*idx);
                        next.push((w, c * s));
                    }
                }
                partial = next;
            }
            for (w, c) in partial {
                out.add_term(w, c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn orbit_sums() {
        let q = Ring::Rationals;
        let t = to_sym_tensor(&GammaElement::monomial(q, mi(&[2, 0]), q.one()));
        assert_eq!(t.coeffs.len(), 1);
        assert_eq!(t.coeff(&[0, 0]), q.one());
        let t = to_sym_tensor(&GammaElement::monomial(q, mi(&[1, 1]), q.one()));
        assert_eq!(t.coeffs.len(), 2);
        assert_eq!(t.coeff(&[0, 1]), q.one());
        assert_eq!(t.coeff(&[1, 0]), q.one());
        assert_eq!(distinct_permutations(&[1, 0, 0]).len(), 3);
    }

    #[test]
    fn shuffle_examples() {
        let q = Ring::Rationals;
        let e1 = to_sym_tensor(&GammaElement::monomial(q, mi(&[1, 0]), q.one()));
        let s = shuffle_product(&e1, &e1).unwrap();
        assert_eq!(s.coeff(&[0, 0]), q.from_i64(2));
        let unit = to_sym_tensor(&GammaElement::unit(q, 2));
        assert_eq!(shuffle_product(&unit, &e1).unwrap(), e1);
    }

    #[test]
    fn slotwise_example() {
        let q = Ring::Rationals;
        let b = FiniteAlgebra::base(q);
        let alg = FiniteAlgebra::product(&[&b, &b, &b, &b]).unwrap();
        // x=u=e0, y=v=e1 in Q^4: only xu⊗yv and yv⊗xu survive
        let mut t = SymTensor::zero(q, 4, 2);
        t.add_term(vec![0, 1], q.one());
        t.add_term(vec![1, 0], q.one());
        let p = slotwise_product(&alg, &t, &t).unwrap();
        assert_eq!(p.coeff(&[0, 1]), q.one());
        assert_eq!(p.coeff(&[1, 0]), q.one());
        assert_eq!(p.coeffs.len(), 2);
    }
}
