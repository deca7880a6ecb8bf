use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::scalar::Scalar;

/// Elements of a commutative ring that is an algebra over the base ring.
///
/// Implemented by [`Scalar`], by polynomials in auxiliary variables and by
/// dual numbers, so that norms and trace towers can be computed after any of
/// those base changes with the same code.
pub trait RingElem: Clone + Eq + Ord + Hash + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiply by a base-ring scalar.
    fn scale(&self, s: &Scalar) -> Self;

    fn pow_u32(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl RingElem for Scalar {
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

/// Determinant over an arbitrary commutative ring by Laplace expansion along
/// rows, memoised on the set of remaining columns. Division free, so it works
/// for polynomial and dual-number entries. `one` supplies the unit for the
/// empty matrix.
pub fn determinant<T: RingElem>(m: &[Vec<T>], one: &T) -> T {
    let n = m.len();
    assert!(n < 64, "determinant: matrix too large");
    for row in m {
        assert_eq!(row.len(), n, "determinant: matrix not square");
    }
    let mut memo: HashMap<u64, T> = HashMap::new();
    minor(m, 0, (1u64 << n) - 1, one, &mut memo)
}

fn minor<T: RingElem>(m: &[Vec<T>], row: usize, cols: u64, one: &T, memo: &mut HashMap<u64, T>) -> T {
    if row == m.len() {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = one.zero_like();
    let mut sign_positive = true;
    for c in 0..m.len() {
        // sign alternates over the remaining columns only
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = minor(m, row + 1, cols & !(1 << c), one, memo);
            let term = entry.mul_ref(&sub);
            acc = if sign_positive { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;

    #[test]
    fn laplace_determinant() {
        let q = Ring::Rationals;
        let m: Vec<Vec<Scalar>> = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(determinant(&m, &q.one()), q.zero());
        let id: Vec<Vec<Scalar>> = (0..4)
            .map(|i| (0..4).map(|j| q.from_i64((i == j) as i64)).collect())
            .collect();
        assert_eq!(determinant(&id, &q.one()), q.one());
        assert_eq!(determinant::<Scalar>(&[], &q.one()), q.one());
    }
}
