//! Commutative algebras free of finite rank over the base ring, given by
//! structure constants, together with their morphisms, ideals and quotients.

use std::sync::Arc;

use super::linalg::{self, Matrix, Subspace};
use super::ring_elem::RingElem;
use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// A commutative, associative, unital algebra of rank `n` with basis
/// `b_0..b_{n-1}` and products `b_i b_j = Σ_k c_{ij}^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: Ring,
    basis: Vec<String>,
    one: Vec<Scalar>,
    mul: Vec<Vec<Vec<Scalar>>>,
    sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl FiniteAlgebra {
    /// Validating constructor: checks shapes, commutativity, associativity on
    /// every basis triple and that `one` is a unit.
    pub fn new(ring: Ring, basis: Vec<String>, one: Vec<Scalar>, mul: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = basis.len();
        if one.len() != n || mul.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure constants do not match rank {n}")));
        }
        for s in one.iter().chain(mul.iter().flatten().flatten()) {
            if s.ring() != ring {
                return Err(Error::RingMismatch(format!("scalar {s} is not in {ring}")));
            }
        }
        let alg = FiniteAlgebra::from_parts(ring, basis, one, mul);
        alg.validate()?;
        Ok(alg)
    }

    fn from_parts(ring: Ring, basis: Vec<String>, one: Vec<Scalar>, mul: Vec<Vec<Vec<Scalar>>>) -> Self {
        let sparse = mul
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect())
                    .collect()
            })
            .collect();
        FiniteAlgebra { ring, basis, one, mul, sparse }
    }

    fn validate(&self) -> Result<()> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..i {
                if self.mul[i][j] != self.mul[j][i] {
                    return Err(Error::NotAnAlgebra(format!(
                        "{}·{} != {}·{}",
                        self.basis[i], self.basis[j], self.basis[j], self.basis[i]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_vec(&self.basis_vector(i), &self.basis_vector(j));
                for k in 0..n {
                    let left = self.mul_vec(&ij, &self.basis_vector(k));
                    let jk = self.mul_vec(&self.basis_vector(j), &self.basis_vector(k));
                    let right = self.mul_vec(&self.basis_vector(i), &jk);
                    if left != right {
                        return Err(Error::NotAnAlgebra(format!(
                            "({}·{})·{} != {}·({}·{})",
                            self.basis[i], self.basis[j], self.basis[k], self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul_vec(&self.one, &e) != e {
                return Err(Error::NotAnAlgebra(format!("one·{} != {}", self.basis[i], self.basis[i])));
            }
        }
        Ok(())
    }

    /// The base ring as a rank-one algebra.
    pub fn base(ring: Ring) -> Self {
        FiniteAlgebra::from_parts(ring, vec!["1".into()], vec![ring.one()], vec![vec![vec![ring.one()]]])
    }

    /// The zero ring (rank 0). Represented, but flagged by [`is_zero_ring`](Self::is_zero_ring).
    pub fn zero_ring(ring: Ring) -> Self {
        FiniteAlgebra::from_parts(ring, vec![], vec![], vec![])
    }

    /// `k[var]/(f)` for monic `f` given by ascending coefficients
    /// `c_0..c_{m-1}, 1`; basis `1, var, var^2, …`.
    pub fn univariate_quotient(ring: Ring, var: &str, monic: &[Scalar]) -> Result<Self> {
        let m = monic.len().checked_sub(1).ok_or_else(|| Error::Malformed("empty modulus polynomial".into()))?;
        if !monic[m].is_one() {
            return Err(Error::Malformed("modulus polynomial must be monic".into()));
        }
        if m == 0 {
            return Ok(FiniteAlgebra::zero_ring(ring));
        }
        // reduction of x^e for e < 2m - 1
        let mut powers: Vec<Vec<Scalar>> = Vec::new();
        for e in 0..(2 * m - 1) {
            let v = if e < m {
                (0..m).map(|i| if i == e { ring.one() } else { ring.zero() }).collect()
            } else {
                // x · x^{e-1}
                let prev: &Vec<Scalar> = &powers[e - 1];
                let mut shifted = vec![ring.zero(); m];
                shifted[1..].clone_from_slice(&prev[..m - 1]);
                let top = prev[m - 1].clone();
                for (i, s) in shifted.iter_mut().enumerate() {
                    *s = &*s - &(&top * &monic[i]);
                }
                shifted
            };
            powers.push(v);
        }
        let mul = (0..m).map(|i| (0..m).map(|j| powers[i + j].clone()).collect()).collect();
        let basis = (0..m).map(|i| monomial_name(&[(var, i as u32)])).collect();
        let mut one = vec![ring.zero(); m];
        one[0] = ring.one();
        Ok(FiniteAlgebra::from_parts(ring, basis, one, mul))
    }

    /// `k[vars]/(vars)^{max_degree+1}`; basis the monomials of degree
    /// `≤ max_degree`, by ascending degree then descending lex.
    pub fn truncated_polynomial(ring: Ring, vars: &[&str], max_degree: u32) -> Self {
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for deg in 0..=max_degree {
            let mut layer = Vec::new();
            compositions(vars.len(), deg, &mut vec![], &mut layer);
            layer.sort_by(|a, b| b.cmp(a));
            monos.extend(layer);
        }
        let n = monos.len();
        let index = |e: &[u32]| monos.iter().position(|m| m.as_slice() == e);
        let mul = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e: Vec<u32> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
                        let mut v = vec![ring.zero(); n];
                        if let Some(k) = index(&e) {
                            v[k] = ring.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let basis = monos
            .iter()
            .map(|e| monomial_name(&vars.iter().zip(e).map(|(v, &k)| (*v, k)).collect::<Vec<_>>()))
            .collect();
        let mut one = vec![ring.zero(); n];
        one[0] = ring.one();
        FiniteAlgebra::from_parts(ring, basis, one, mul)
    }

    /// Direct product `A_1 × … × A_m`; basis names are suffixed `#i`.
    pub fn product(factors: &[&FiniteAlgebra]) -> Result<Self> {
        let ring = factors.first().map(|a| a.ring).ok_or_else(|| Error::Malformed("empty product".into()))?;
        if factors.iter().any(|a| a.ring != ring) {
            return Err(Error::RingMismatch("product of algebras over different rings".into()));
        }
        let n: usize = factors.iter().map(|a| a.rank()).sum();
        let mut basis = Vec::with_capacity(n);
        let mut one = Vec::with_capacity(n);
        let mut mul = vec![vec![vec![ring.zero(); n]; n]; n];
        let mut offset = 0;
        for (f, a) in factors.iter().enumerate() {
            let r = a.rank();
            basis.extend(a.basis.iter().map(|b| format!("{b}#{f}")));
            one.extend(a.one.iter().cloned());
            for i in 0..r {
                for j in 0..r {
                    for k in 0..r {
                        mul[offset + i][offset + j][offset + k] = a.mul[i][j][k].clone();
                    }
                }
            }
            offset += r;
        }
        Ok(FiniteAlgebra::from_parts(ring, basis, one, mul))
    }

    /// Tensor product over the base ring; basis `a*b` in row-major order.
    pub fn tensor(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Self> {
        if a.ring != b.ring {
            return Err(Error::RingMismatch("tensor product over different rings".into()));
        }
        let ring = a.ring;
        let (na, nb) = (a.rank(), b.rank());
        let n = na * nb;
        let basis = (0..na)
            .flat_map(|i| {
                (0..nb).map(move |j| match (a.basis[i].as_str(), b.basis[j].as_str()) {
                    ("1", y) => y.to_string(),
                    (x, "1") => x.to_string(),
                    (x, y) => format!("{x}*{y}"),
                })
            })
            .collect();
        let one = (0..na).flat_map(|i| (0..nb).map(move |j| &a.one[i] * &b.one[j])).collect();
        let mut mul = vec![vec![vec![ring.zero(); n]; n]; n];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        let slot = &mut mul[i1 * nb + j1][i2 * nb + j2];
                        for (k1, c1) in &a.sparse[i1][i2] {
                            for (k2, c2) in &b.sparse[j1][j2] {
                                slot[k1 * nb + k2] = c1 * c2;
                            }
                        }
                    }
                }
            }
        }
        Ok(FiniteAlgebra::from_parts(ring, basis, one, mul))
    }

    /// The same algebra in a new basis whose `j`-th element has old
    /// coordinates `change[·][j]` (columns). `change` must be invertible.
    pub fn change_basis(&self, change: &Matrix) -> Result<Self> {
        let inv = linalg::inverse(self.ring, change)
            .ok_or_else(|| Error::NotAnAlgebra("basis change is not invertible".into()))?;
        let n = self.rank();
        let cols = linalg::transpose(change);
        let mut mul = vec![vec![vec![self.ring.zero(); n]; n]; n];
        for i in 0..n {
            for j in i..n {
                let p = self.mul_vec(&cols[i], &cols[j]);
                let coords = linalg::mat_vec(&inv, &p, self.ring);
                mul[i][j] = coords.clone();
                mul[j][i] = coords;
            }
        }
        let one = linalg::mat_vec(&inv, &self.one, self.ring);
        let basis = (0..n).map(|i| format!("f{i}")).collect();
        Ok(FiniteAlgebra::from_parts(self.ring, basis, one, mul))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Scalar>>] {
        &self.mul
    }

    pub fn is_zero_ring(&self) -> bool {
        self.rank() == 0
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.ring.zero(); self.rank()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.ring.one();
        v
    }

    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.one.iter().map(|x| x * c).collect()
    }

    pub fn mul_vec(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.mul_generic(u, v, &self.ring.zero())
    }

    /// Product of elements of `B ⊗ T` for any commutative base extension `T`
    /// (coordinates in `T`). `zero` supplies the zero of `T`.
    pub fn mul_generic<T: RingElem>(&self, u: &[T], v: &[T], zero: &T) -> Vec<T> {
        let n = self.rank();
        let mut out = vec![zero.clone(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || self.sparse[i][j].is_empty() {
                    continue;
                }
                let uv = u[i].mul_ref(&v[j]);
                for (k, c) in &self.sparse[i][j] {
                    out[*k] = out[*k].add_ref(&uv.scale(c));
                }
            }
        }
        out
    }

    pub fn pow_vec(&self, b: &[Scalar], k: u32) -> Vec<Scalar> {
        let mut acc = self.one.clone();
        for _ in 0..k {
            acc = self.mul_vec(&acc, b);
        }
        acc
    }

    /// Matrix of multiplication by `b`: column `j` is `b · b_j`.
    pub fn mult_matrix(&self, b: &[Scalar]) -> Matrix {
        self.mult_matrix_generic(b, &self.ring.zero())
    }

    pub fn mult_matrix_generic<T: RingElem>(&self, b: &[T], zero: &T) -> Vec<Vec<T>> {
        let n = self.rank();
        let mut m = vec![vec![zero.clone(); n]; n];
        for j in 0..n {
            let e: Vec<T> = (0..n).map(|i| if i == j { zero.one_like() } else { zero.clone() }).collect();
            let col = self.mul_generic(b, &e, zero);
            for i in 0..n {
                m[i][j] = col[i].clone();
            }
        }
        m
    }

    pub fn inverse_of(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = self.mult_matrix(b);
        let sol = linalg::solve_linear(self.ring, &m, self.rank(), &self.one).ok()?;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    /// Embed base-ring coordinates into `B ⊗ T` via `zero`'s ring.
    pub fn lift<T: RingElem>(v: &[Scalar], zero: &T) -> Vec<T> {
        let one = zero.one_like();
        v.iter().map(|c| one.scale(c)).collect()
    }

    /// The smallest subspace containing `gens` closed under multiplication by
    /// every basis element: the ideal generated by `gens`.
    pub fn ideal_closure(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let n = self.rank();
        let mut current = Subspace::span(self.ring, n, gens);
        loop {
            let mut products = Vec::new();
            for v in current.basis() {
                for i in 0..n {
                    products.push(self.mul_vec(v, &self.basis_vector(i)));
                }
            }
            let next = current.extend(&products);
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    pub fn is_ideal(&self, space: &Subspace) -> bool {
        space.basis().iter().all(|v| (0..self.rank()).all(|i| space.contains(&self.mul_vec(v, &self.basis_vector(i)))))
    }

    /// `B/I` with the induced structure constants. The quotient basis is the
    /// set of original basis vectors in non-pivot position of `I`'s echelon
    /// basis. Fails if `I` is not an ideal, and flags the unit ideal.
    pub fn quotient(self: &Arc<Self>, ideal: &Subspace) -> Result<(Arc<FiniteAlgebra>, AlgebraMorphism)> {
        if ideal.ambient_dim() != self.rank() {
            return Err(Error::DimensionMismatch("ideal lives in a different space".into()));
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal("subspace is not closed under multiplication".into()));
        }
        if ideal.is_full() {
            return Err(Error::DegenerateAlgebra("quotient by the unit ideal is the zero ring".into()));
        }
        let keep: Vec<usize> = (0..self.rank()).filter(|c| !ideal.pivots().contains(c)).collect();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let m = keep.len();
        let mul = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| project(&self.mul_vec(&self.basis_vector(keep[i]), &self.basis_vector(keep[j]))))
                    .collect()
            })
            .collect();
        let one = project(&self.one);
        let basis = keep.iter().map(|&c| self.basis[c].clone()).collect();
        let quotient = Arc::new(FiniteAlgebra::from_parts(self.ring, basis, one, mul));
        let cols: Vec<Vec<Scalar>> = (0..self.rank()).map(|c| project(&self.basis_vector(c))).collect();
        let matrix = linalg::transpose(&cols);
        let matrix = if m == 0 { vec![] } else { matrix };
        let proj = AlgebraMorphism::new(self.clone(), quotient.clone(), matrix)?;
        Ok((quotient, proj))
    }

    /// The subalgebra generated by `gens` (always containing the unit),
    /// returned with its inclusion morphism.
    pub fn generated_subalgebra(self: &Arc<Self>, gens: &[Vec<Scalar>]) -> Result<(Arc<FiniteAlgebra>, AlgebraMorphism)> {
        let n = self.rank();
        let mut space = Subspace::span(self.ring, n, std::slice::from_ref(&self.one));
        loop {
            let mut products = Vec::new();
            for v in space.basis() {
                for g in gens {
                    products.push(self.mul_vec(v, g));
                }
            }
            let next = space.extend(&products);
            if next.dim() == space.dim() {
                break;
            }
            space = next;
        }
        let basis_vecs = space.basis().clone();
        let m = basis_vecs.len();
        let coords = |v: &[Scalar]| space.coordinates(v).expect("closed under products");
        let mul = (0..m)
            .map(|i| (0..m).map(|j| coords(&self.mul_vec(&basis_vecs[i], &basis_vecs[j]))).collect())
            .collect();
        let one = coords(&self.one);
        let basis = (0..m).map(|i| format!("s{i}")).collect();
        let sub = Arc::new(FiniteAlgebra::from_parts(self.ring, basis, one, mul));
        let matrix = linalg::transpose(&basis_vecs);
        let matrix = if n == 0 { vec![] } else { matrix };
        let incl = AlgebraMorphism::new(sub.clone(), self.clone(), matrix)?;
        Ok((sub, incl))
    }

    /// Smallest monic polynomial (ascending coefficients) killing `b`.
    pub fn minimal_polynomial(&self, b: &[Scalar]) -> Vec<Scalar> {
        let n = self.rank();
        if n == 0 {
            return vec![self.ring.one()];
        }
        let mut powers = vec![self.one.clone()];
        loop {
            let k = powers.len();
            let next = self.mul_vec(&powers[k - 1], b);
            // solve Σ c_i b^i = b^k
            let mat = linalg::transpose(&powers);
            let mat = if n == 0 { vec![] } else { mat };
            // earlier powers are independent, so the solution is unique
            if let Ok(sol) = linalg::solve_linear(self.ring, &mat, k, &next) {
                let mut p: Vec<Scalar> = sol.particular.iter().map(|c| -c).collect();
                p.push(self.ring.one());
                return p;
            }
            powers.push(next);
        }
    }

    /// Equal unit and structure constants (labels ignored).
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.ring == other.ring && self.one == other.one && self.mul == other.mul
    }
}

fn compositions(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(n, total - k, prefix, out);
        prefix.pop();
    }
}

/// `x^2*y`-style name; `1` for the empty monomial.
pub fn monomial_name(factors: &[(&str, u32)]) -> String {
    let parts: Vec<String> = factors
        .iter()
        .filter(|(_, k)| *k > 0)
        .map(|(v, k)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A unital algebra homomorphism given by its matrix (target rank × source rank).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    matrix: Matrix,
}

impl AlgebraMorphism {
    /// Validating constructor: unit to unit, multiplicative on all basis pairs.
    pub fn new(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, matrix: Matrix) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("morphism between algebras over different rings".into()));
        }
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix must be {}×{}",
                target.rank(),
                source.rank()
            )));
        }
        let f = AlgebraMorphism { source, target, matrix };
        if f.apply(f.source.one()) != f.target.one() {
            return Err(Error::NotAMorphism("unit is not sent to unit".into()));
        }
        let n = f.source.rank();
        for i in 0..n {
            for j in i..n {
                let (ei, ej) = (f.source.basis_vector(i), f.source.basis_vector(j));
                let lhs = f.apply(&f.source.mul_vec(&ei, &ej));
                let rhs = f.target.mul_vec(&f.apply(&ei), &f.apply(&ej));
                if lhs != rhs {
                    return Err(Error::NotAMorphism(format!(
                        "f({}·{}) != f({})·f({})",
                        f.source.basis_names()[i],
                        f.source.basis_names()[j],
                        f.source.basis_names()[i],
                        f.source.basis_names()[j]
                    )));
                }
            }
        }
        Ok(f)
    }

    /// Morphism from images of the source basis elements (as target vectors).
    pub fn from_images(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, images: &[Vec<Scalar>]) -> Result<Self> {
        let matrix = if target.rank() == 0 { vec![] } else { linalg::transpose(images) };
        AlgebraMorphism::new(source, target, matrix)
    }

    pub fn identity(alg: Arc<FiniteAlgebra>) -> Self {
        let matrix = linalg::identity(alg.ring(), alg.rank());
        AlgebraMorphism { source: alg.clone(), target: alg, matrix }
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        linalg::mat_vec(&self.matrix, v, self.source.ring())
    }

    pub fn apply_generic<T: RingElem>(&self, v: &[T], zero: &T) -> Vec<T> {
        self.matrix
            .iter()
            .map(|row| {
                let mut acc = zero.clone();
                for (c, x) in row.iter().zip(v) {
                    if !c.is_zero() && !x.is_zero() {
                        acc = acc.add_ref(&x.scale(c));
                    }
                }
                acc
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !inner.target.same_structure(&self.source) {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        let ring = self.source.ring();
        let matrix = if self.target.rank() == 0 {
            vec![]
        } else if inner.source.rank() == 0 {
            vec![vec![]; self.target.rank()]
        } else {
            linalg::mat_mul(&self.matrix, &inner.matrix, ring)
        };
        Ok(AlgebraMorphism { source: inner.source.clone(), target: self.target.clone(), matrix })
    }

    /// Image of the source, as a subspace of the target.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..self.source.rank()).map(|j| self.apply(&self.source.basis_vector(j))).collect();
        Subspace::span(self.source.ring(), self.target.rank(), &cols)
    }

    /// Kernel of the underlying linear map (an ideal of the source).
    pub fn kernel(&self) -> Subspace {
        let k = linalg::kernel(self.source.ring(), &self.matrix, self.source.rank());
        let k = if self.target.rank() == 0 {
            (0..self.source.rank()).map(|j| self.source.basis_vector(j)).collect()
        } else {
            k
        };
        Subspace::span(self.source.ring(), self.source.rank(), &k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    fn qx(monic: &[i64]) -> Arc<FiniteAlgebra> {
        let c: Vec<Scalar> = monic.iter().map(|&x| q(x)).collect();
        Arc::new(FiniteAlgebra::univariate_quotient(Ring::Rationals, "x", &c).unwrap())
    }

    #[test]
    fn rejects_non_associative_tables() {
        let r = Ring::Rationals;
        // b1·b1 = b0 + b1 but with an inconsistent one
        let mul = vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(1)], vec![q(1), q(1)]]];
        assert!(FiniteAlgebra::new(r, vec!["1".into(), "y".into()], vec![q(1), q(0)], mul.clone()).is_ok());
        assert!(FiniteAlgebra::new(r, vec!["1".into(), "y".into()], vec![q(0), q(1)], mul).is_err());
        let noncomm = vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(0)], vec![q(0), q(0)]]];
        assert!(matches!(
            FiniteAlgebra::new(r, vec!["1".into(), "y".into()], vec![q(1), q(0)], noncomm),
            Err(Error::NotAnAlgebra(_))
        ));
    }

    #[test]
    fn ideal_closure_of_x_in_truncated_cubic() {
        let b = qx(&[0, 0, 0, 1]);
        let i = b.ideal_closure(&[b.basis_vector(1)]);
        assert_eq!(i, Subspace::span(Ring::Rationals, 3, &[b.basis_vector(1), b.basis_vector(2)]));
        assert_eq!(b.ideal_closure(&[b.zero_vector()]).dim(), 0);
        assert!(b.ideal_closure(&[b.one().to_vec()]).is_full());
    }

    #[test]
    fn quotient_by_x_squared() {
        let b = qx(&[0, 0, 0, 1]);
        let i = b.ideal_closure(&[b.basis_vector(2)]);
        let (quot, proj) = b.quotient(&i).unwrap();
        assert_eq!(quot.rank(), 2);
        assert!(quot.same_structure(&qx(&[0, 0, 1])));
        assert_eq!(proj.apply(&b.basis_vector(2)), vec![q(0), q(0)]);

        let (same, id) = b.quotient(&Subspace::zero(Ring::Rationals, 3)).unwrap();
        assert!(same.same_structure(&b));
        assert_eq!(id.matrix(), &linalg::identity(Ring::Rationals, 3));

        let unit = b.ideal_closure(&[b.one().to_vec()]);
        assert!(matches!(b.quotient(&unit), Err(Error::DegenerateAlgebra(_))));
        let not_ideal = Subspace::span(Ring::Rationals, 3, &[b.basis_vector(1)]);
        assert!(matches!(b.quotient(&not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn tensor_and_product_are_algebras() {
        let a = qx(&[0, 0, 1]);
        let b = qx(&[-2, 0, 1]);
        let t = FiniteAlgebra::tensor(&a, &b).unwrap();
        let p = FiniteAlgebra::product(&[&a, &b]).unwrap();
        for alg in [t, p] {
            FiniteAlgebra::new(alg.ring(), alg.basis_names().to_vec(), alg.one().to_vec(), alg.mul.clone()).unwrap();
        }
        let tp = FiniteAlgebra::truncated_polynomial(Ring::Rationals, &["x", "y"], 2);
        assert_eq!(tp.basis_names(), &["1", "x", "y", "x^2", "x*y", "y^2"]);
    }

    #[test]
    fn minimal_polynomial_of_generator() {
        let b = qx(&[0, 0, -1, 1]);
        assert_eq!(b.minimal_polynomial(&b.basis_vector(1)), vec![q(0), q(0), q(-1), q(1)]);
        assert_eq!(b.minimal_polynomial(b.one()), vec![q(-1), q(1)]);
    }

    #[test]
    fn subalgebra_generated_by_idempotent() {
        // Q[x]/(x^2 - x) is generated by x; the unit alone gives Q
        let b = qx(&[0, -1, 1]);
        let (s, incl) = b.generated_subalgebra(&[]).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(incl.apply(s.one()), b.one().to_vec());
        let (s2, _) = b.generated_subalgebra(&[b.basis_vector(1)]).unwrap();
        assert_eq!(s2.rank(), 2);
    }
}
