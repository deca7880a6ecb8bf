//! Exact linear algebra over a field.

use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
    vec![vec![ring.zero(); cols]; rows]
}

pub fn identity(ring: Ring, n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[Scalar], ring: Ring) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            let mut acc = ring.zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, ring: Ring) -> Matrix {
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = ring.zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Scalar>]) -> Matrix {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Reduce `rows` in place to reduced row echelon form; returns pivot columns.
/// Zero rows are dropped.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(m: &Matrix, ncols: usize) -> usize {
    let mut rows = m.clone();
    rref(&mut rows, ncols).len()
}

/// Solution set of `mat · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution, with every free variable set to zero.
    pub particular: Vec<Scalar>,
    /// Kernel basis in reduced echelon form: one vector per free column,
    /// carrying a 1 in that column.
    pub kernel: Vec<Vec<Scalar>>,
}

/// Exact solve; inconsistent systems are reported, never approximated.
pub fn solve_linear(ring: Ring, mat: &Matrix, ncols: usize, rhs: &[Scalar]) -> Result<LinearSolution> {
    if mat.len() != rhs.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} equations but {} right-hand sides",
            mat.len(),
            rhs.len()
        )));
    }
    if mat.iter().any(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch("ragged matrix".into()));
    }
    let mut aug: Matrix = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Err(Error::Inconsistent);
    }
    let mut particular = vec![ring.zero(); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        particular[pc] = row[ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); ncols];
            v[f] = ring.one();
            for (row, &pc) in aug.iter().zip(&pivots) {
                v[pc] = -&row[f];
            }
            v
        })
        .collect();
    Ok(LinearSolution { particular, kernel })
}

pub fn kernel(ring: Ring, mat: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let rhs = vec![ring.zero(); mat.len()];
    solve_linear(ring, mat, ncols, &rhs).expect("homogeneous systems are consistent").kernel
}

pub fn inverse(ring: Ring, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { ring.one() } else { ring.zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return if n == 0 { Some(vec![]) } else { None };
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination over a field.
pub fn det(ring: Ring, m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = ring.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return ring.zero();
        };
        if p != c {
            a.swap(p, c);
            acc = -&acc;
        }
        acc = &acc * &a[c][c];
        let inv = a[c][c].inv().unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    acc
}

/// `det(tI - M)` by the division-free Berkowitz algorithm, coefficients
/// ascending (monic of degree n).
pub fn classical_charpoly(ring: Ring, m: &Matrix) -> Vec<Scalar> {
    let n = m.len();
    // Berkowitz: iteratively build the charpoly of the leading r×r block.
    let mut poly = vec![ring.one()]; // descending coefficients of det(tI - A_0) = 1
    for r in 0..n {
        // A_{r+1} = [[A_r, C],[R, a]] with C column (rows 0..r, col r), R row (row r, cols 0..r)
        let a = &m[r][r];
        let col: Vec<Scalar> = (0..r).map(|i| m[i][r].clone()).collect();
        let row: Vec<Scalar> = (0..r).map(|j| m[r][j].clone()).collect();
        // Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        let mut t = vec![ring.one(), -a];
        let mut v = col.clone();
        for _ in 0..r {
            let rc = dot(&row, &v, ring);
            t.push(-&rc);
            v = (0..r).map(|i| dot(&m[i][..r], &v, ring)).collect();
        }
        // new = Toeplitz(t) (size (r+2)×(r+1)) · poly
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    *slot = &*slot + &(&t[i - j] * p);
                }
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

fn dot(a: &[Scalar], b: &[Scalar], ring: Ring) -> Scalar {
    let mut acc = ring.zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// A subspace of `ring^dim`, stored by its canonical reduced echelon basis,
/// so equality of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ring: Ring,
    dim: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ring: Ring, dim: usize) -> Self {
        Subspace { ring, dim, rows: vec![], pivots: vec![] }
    }

    pub fn span(ring: Ring, dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        let mut rows: Matrix = vectors.iter().filter(|v| v.iter().any(|c| !c.is_zero())).cloned().collect();
        for v in &rows {
            assert_eq!(v.len(), dim, "vector length");
        }
        let pivots = rref(&mut rows, dim);
        Subspace { ring, dim, rows, pivots }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Remainder of `v` after clearing all pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn extend(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(vectors.iter().cloned());
        Subspace::span(self.ring, self.dim, &all)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ring: Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect()
    }

    #[test]
    fn identity_solve() {
        let q = Ring::Rationals;
        let v: Vec<Scalar> = [3, -1, 2].iter().map(|&x| q.from_i64(x)).collect();
        let sol = solve_linear(q, &identity(q, 3), 3, &v).unwrap();
        assert_eq!(sol.particular, v);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let q = Ring::Rationals;
        let sol = solve_linear(q, &zeros(q, 2, 2), 2, &[q.zero(), q.zero()]).unwrap();
        assert_eq!(sol.kernel.len(), 2);
    }

    #[test]
    fn kernel_over_f2() {
        let f2 = Ring::PrimeField(2);
        let k = kernel(f2, &m(f2, &[&[1, 1], &[1, 1]]), 2);
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn inconsistent_flagged() {
        let q = Ring::Rationals;
        let r = solve_linear(q, &m(q, &[&[1, 1], &[1, 1]]), 2, &[q.zero(), q.one()]);
        assert_eq!(r, Err(Error::Inconsistent));
    }

    #[test]
    fn charpoly_examples() {
        let q = Ring::Rationals;
        assert_eq!(classical_charpoly(q, &zeros(q, 2, 2)), vec![q.zero(), q.zero(), q.one()]);
        // diag(2, 5): t^2 - 7t + 10
        let d = m(q, &[&[2, 0], &[0, 5]]);
        assert_eq!(classical_charpoly(q, &d), vec![q.from_i64(10), q.from_i64(-7), q.one()]);
        // multiplication by x on Q[x]/(x^2 - 2): columns x·1 = x, x·x = 2
        let mx = m(q, &[&[0, 2], &[1, 0]]);
        assert_eq!(classical_charpoly(q, &mx), vec![q.from_i64(-2), q.zero(), q.one()]);
    }

    #[test]
    fn det_and_inverse_agree() {
        let q = Ring::Rationals;
        let a = m(q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(q, &a).unwrap();
        assert_eq!(mat_mul(&a, &inv, q), identity(q, 3));
        assert_eq!(det(q, &a), q.from_i64(18));
        assert!(inverse(q, &m(q, &[&[1, 2], &[2, 4]])).is_none());
    }
}
