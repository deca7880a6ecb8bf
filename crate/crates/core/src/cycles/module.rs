//! Invertible modules over a finite algebra, the determinant norm
//! `N(M) = Hom(Λ^d B, Λ^d M)`, and the norm functor of a law.

use std::sync::Arc;

use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::linalg::{self, Matrix, Subspace};
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::laws::{law_from_evaluator, Carrier, PolyLaw};

use super::pair::CyclePair;

/// A finitely generated `B`-module, free over the base, given by the action
/// matrices of the basis of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModule {
    alg: Arc<FiniteAlgebra>,
    rank: usize,
    action: Vec<Matrix>,
}

impl BModule {
    pub fn new(alg: Arc<FiniteAlgebra>, rank: usize, action: Vec<Matrix>) -> Result<Self> {
        let ring = alg.ring();
        if action.len() != alg.rank() || action.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return Err(Error::InvalidModule("action matrices have the wrong shape".into()));
        }
        let module = BModule { alg, rank, action };
        let one = module.act(module.alg.one());
        if one != linalg::identity(ring, rank) {
            return Err(Error::InvalidModule("the unit does not act as the identity".into()));
        }
        for i in 0..module.alg.rank() {
            for j in 0..module.alg.rank() {
                let lhs = linalg::mat_mul(&module.action[i], &module.action[j], ring);
                let prod = module.alg.mul_vec(&module.alg.basis_vector(i), &module.alg.basis_vector(j));
                if lhs != module.act(&prod) {
                    return Err(Error::InvalidModule(format!("action is not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(module)
    }

    /// `B` acting on itself.
    pub fn regular(alg: Arc<FiniteAlgebra>) -> Self {
        let action = (0..alg.rank()).map(|i| alg.mult_matrix(&alg.basis_vector(i))).collect();
        BModule { rank: alg.rank(), alg, action }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn act(&self, b: &[Scalar]) -> Matrix {
        let ring = self.alg.ring();
        let mut out = linalg::zeros(ring, self.rank, self.rank);
        for (c, m) in b.iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(m) {
                for (o, x) in orow.iter_mut().zip(mrow) {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    /// `Φ_m: B → M, b ↦ b·m` as a matrix.
    pub fn orbit_map(&self, m: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            self.action.iter().map(|a| linalg::mat_vec(a, m, self.alg.ring())).collect();
        if cols.is_empty() {
            return vec![vec![]; self.rank];
        }
        linalg::transpose(&cols)
    }

    /// An `m` with `Φ_m` bijective, searched among basis vectors and small
    /// integer combinations. `None` if the module is not visibly invertible.
    pub fn generator(&self) -> Option<Vec<Scalar>> {
        let ring = self.alg.ring();
        if self.rank != self.alg.rank() {
            return None;
        }
        let mut candidates: Vec<Vec<Scalar>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        for s in 1..=4i64 {
            candidates.push((0..self.rank).map(|j| ring.from_i64(1 + s * j as i64)).collect());
            candidates.push((0..self.rank).map(|j| ring.from_i64(s.pow(j as u32))).collect());
        }
        candidates.into_iter().find(|m| !linalg::det(ring, &self.orbit_map(m)).is_zero())
    }

    pub fn is_invertible(&self) -> bool {
        self.generator().is_some()
    }

    /// `ψ: self → other` commutes with the action.
    pub fn is_linear_map(&self, other: &BModule, psi: &Matrix) -> bool {
        let ring = self.alg.ring();
        psi.len() == other.rank
            && psi.iter().all(|r| r.len() == self.rank)
            && self.action.iter().zip(&other.action).all(|(a, b)| {
                linalg::mat_mul(psi, a, ring) == linalg::mat_mul(b, psi, ring)
            })
    }

    /// `M ⊗_B M'` with the projection matrix from `M ⊗_k M'` (row-major
    /// pairs) and the indices of the tensor basis vectors it keeps.
    pub fn tensor(&self, other: &BModule) -> Result<(BModule, Matrix, Vec<usize>)> {
        if !self.alg.same_structure(&other.alg) {
            return Err(Error::InvalidModule("modules over different algebras".into()));
        }
        let ring = self.alg.ring();
        let (r1, r2) = (self.rank, other.rank);
        let n = r1 * r2;
        let pure = |u: &[Scalar], v: &[Scalar]| -> Vec<Scalar> { u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect() };
        let unit = |r: usize, i: usize| -> Vec<Scalar> { (0..r).map(|j| if i == j { ring.one() } else { ring.zero() }).collect() };
        let mut rels = Vec::new();
        for (a, b) in self.action.iter().zip(&other.action) {
            for i in 0..r1 {
                for j in 0..r2 {
                    let bm = linalg::mat_vec(a, &unit(r1, i), ring);
                    let bn = linalg::mat_vec(b, &unit(r2, j), ring);
                    let x = pure(&bm, &unit(r2, j));
                    let y = pure(&unit(r1, i), &bn);
                    rels.push(x.iter().zip(&y).map(|(p, q)| p - q).collect());
                }
            }
        }
        let space = Subspace::span(ring, n, &rels);
        let keep: Vec<usize> = (0..n).filter(|c| !space.pivots().contains(c)).collect();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = space.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let proj_cols: Vec<Vec<Scalar>> = (0..n).map(|c| project(&unit(n, c))).collect();
        let projection = if keep.is_empty() { vec![] } else { linalg::transpose(&proj_cols) };
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = keep
                    .iter()
                    .map(|&c| {
                        let (i, j) = (c / r2, c % r2);
                        project(&pure(&linalg::mat_vec(a, &unit(r1, i), ring), &unit(r2, j)))
                    })
                    .collect();
                if cols.is_empty() { vec![] } else { linalg::transpose(&cols) }
            })
            .collect();
        Ok((BModule::new(self.alg.clone(), keep.len(), action)?, projection, keep))
    }
}

/// `N(ψ)` for a `B`-linear `ψ: M → M'` between invertible modules, in the
/// trivialisations `N(M) ≅ A` sending `e_1∧…∧e_d ↦ m_1∧…∧m_d` (the chosen
/// base-ring bases): the determinant of `ψ`.
pub fn norm_module(m: &BModule, m2: &BModule, psi: &Matrix) -> Result<Scalar> {
    for (which, x) in [("source", m), ("target", m2)] {
        if !x.alg.same_structure(&m.alg) {
            return Err(Error::InvalidModule("modules over different algebras".into()));
        }
        if x.rank != x.alg.rank() || !x.is_invertible() {
            return Err(Error::InvalidModule(format!("{which} module is not invertible")));
        }
    }
    if !m.is_linear_map(m2, psi) {
        return Err(Error::InvalidModule("map is not B-linear".into()));
    }
    Ok(linalg::det(m.alg.ring(), psi))
}

/// `N(ψ ⊗ ψ') = N(ψ) N(ψ')` for endomorphisms of invertible modules.
pub fn tensor_compatibility(m: &BModule, m2: &BModule, psi: &Matrix, psi2: &Matrix) -> Result<bool> {
    let ring = m.alg.ring();
    let lhs_factor = norm_module(m, m, psi)? * norm_module(m2, m2, psi2)?;
    let (t, proj, keep) = m.tensor(m2)?;
    let r2 = m2.rank;
    let kron: Matrix = (0..m.rank * r2)
        .map(|row| (0..m.rank * r2).map(|col| &psi[row / r2][col / r2] * &psi2[row % r2][col % r2]).collect())
        .collect();
    let image = linalg::mat_mul(&proj, &kron, ring);
    let induced: Matrix = (0..t.rank).map(|r| keep.iter().map(|&c| image[r][c].clone()).collect()).collect();
    Ok(norm_module(&t, &t, &induced)? == lhs_factor)
}

/// The norm functor attached to a law `n` of degree `d` on `C`: an invertible
/// module `M` with generator `m` goes to the line spanned by `γ^d(m)`, and a
/// map with `ψ(m) = c·m'` goes to `n(c)`.
pub struct NormFunctor<'a> {
    law: &'a PolyLaw,
}

impl<'a> NormFunctor<'a> {
    pub fn new(law: &'a PolyLaw) -> Result<Self> {
        law.algebra()?;
        Ok(NormFunctor { law })
    }

    /// `N(ψ)` relative to the generators `m` of the source and `m2` of the
    /// target.
    pub fn apply(&self, src: &BModule, m: &[Scalar], dst: &BModule, m2: &[Scalar], psi: &Matrix) -> Result<Scalar> {
        let ring = src.alg.ring();
        if !src.is_linear_map(dst, psi) {
            return Err(Error::InvalidModule("map is not B-linear".into()));
        }
        let image = linalg::mat_vec(psi, m, ring);
        let c = linalg::solve_linear(ring, &dst.orbit_map(m2), src.alg.rank(), &image)
            .map_err(|_| Error::InvalidModule("target generator does not generate".into()))?
            .particular;
        Ok(self.law.value(&c))
    }

    /// On the trivial module with generator `1`, an endomorphism over `T` is
    /// multiplication by `ψ(1)`.
    pub fn apply_trivial_generic<T: RingElem>(&self, psi_of_one: &[T], zero: &T) -> T {
        self.law.evaluate_generic(psi_of_one, zero)
    }
}

/// Outcome of building the norm functor from a pair's law and reading the
/// law back off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// The law extracted from endomorphisms of the trivial module equals the
    /// original, coefficientwise.
    pub law_recovered: bool,
    /// Base scalars `f` act by `f^d`.
    pub scalars_ok: bool,
    /// Functor values do not depend on the chosen generators.
    pub generator_independent: bool,
    /// For determinant laws: agreement with `Hom(Λ^d B, Λ^d M)`.
    pub matches_exterior_power: Option<bool>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.law_recovered && self.scalars_ok && self.generator_independent && self.matches_exterior_power != Some(false)
    }
}

pub fn functor_law_roundtrip(pair: &CyclePair) -> Result<RoundTrip> {
    let law = pair.law();
    let c = pair.carrier().clone();
    let ring = c.ring();
    let d = law.degree();
    let functor = NormFunctor::new(law)?;
    if c.is_zero_ring() {
        return Ok(RoundTrip { law_recovered: true, scalars_ok: true, generator_independent: true, matches_exterior_power: None });
    }
    let extracted = law_from_evaluator(Carrier::Algebra(c.clone()), d, |t| {
        let zero = MultiPoly::zero(ring, t.len());
        // the endomorphism b ↦ t·b of the trivial module sends 1 to t
        let mult = c.mult_matrix_generic(t, &zero);
        let one = FiniteAlgebra::lift(c.one(), &zero);
        let image: Vec<MultiPoly> = mult
            .iter()
            .map(|row| row.iter().zip(&one).fold(zero.clone(), |acc, (x, y)| acc.add_ref(&x.mul_ref(y))))
            .collect();
        functor.apply_trivial_generic(&image, &zero)
    })?;
    let law_recovered = &extracted == law;

    let triv = BModule::regular(c.clone());
    let mut scalars_ok = true;
    for f in [2i64, -3, 5] {
        let f = ring.from_i64(f);
        let psi = triv.act(&c.scalar(&f));
        scalars_ok &= functor.apply(&triv, c.one(), &triv, c.one(), &psi)? == f.pow(d as u32);
    }

    // units u = 1 + e_i (when invertible) as alternative generators
    let units: Vec<Vec<Scalar>> = (0..c.rank())
        .map(|i| {
            let mut u = c.one().to_vec();
            u[i] = &u[i] + &ring.one();
            u
        })
        .filter(|u| c.inverse_of(u).is_some())
        .take(3)
        .collect();
    let elements: Vec<Vec<Scalar>> = (0..c.rank())
        .map(|i| c.basis_vector(i))
        .chain(std::iter::once((0..c.rank()).map(|j| ring.from_i64(j as i64 + 2)).collect()))
        .collect();
    let mut generator_independent = true;
    for u in &units {
        for b in &elements {
            // ψ = multiplication by b; with generators u and 1: ψ(u) = (b u)·1,
            // so N(ψ) = n(b) n(u) relative to (u, 1)
            let psi = triv.act(b);
            let val = functor.apply(&triv, u, &triv, c.one(), &psi)?;
            generator_independent &= val == &law.value(b) * &law.value(u);
        }
    }

    let matches_exterior_power = if law == &crate::laws::determinant_law(&c)? {
        let mut ok = true;
        for b in &elements {
            let psi = triv.act(b);
            let lambda = norm_module(&triv, &triv, &psi)?;
            for u in &units {
                // γ^d(m) ↦ det Φ_m · (e_1∧…∧e_d) identifies the two lines
                let gamma = functor.apply(&triv, u, &triv, c.one(), &psi)?;
                let phi_u = linalg::det(ring, &triv.orbit_map(u));
                let phi_1 = linalg::det(ring, &triv.orbit_map(c.one()));
                ok &= &lambda * &phi_u == &gamma * &phi_1;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(RoundTrip { law_recovered, scalars_ok, generator_independent, matches_exterior_power })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    fn dual_numbers() -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::univariate_quotient(Ring::Rationals, "x", &[q(0), q(0), q(1)]).unwrap())
    }

    #[test]
    fn multiplication_by_b_has_norm_det() {
        let b = dual_numbers();
        let m = BModule::regular(b.clone());
        let psi = m.act(&[q(3), q(1)]);
        assert_eq!(norm_module(&m, &m, &psi).unwrap(), q(9));
        assert_eq!(norm_module(&m, &m, &linalg::identity(Ring::Rationals, 2)).unwrap(), q(1));
        let not_linear = vec![vec![q(1), q(0)], vec![q(0), q(2)]];
        assert!(matches!(norm_module(&m, &m, &not_linear), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn invalid_modules_are_rejected() {
        let b = dual_numbers();
        let bad = vec![linalg::identity(Ring::Rationals, 2), linalg::identity(Ring::Rationals, 2)];
        assert!(matches!(BModule::new(b, 2, bad), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn tensor_of_regular_modules() {
        let b = dual_numbers();
        let m = BModule::regular(b.clone());
        let (t, _, _) = m.tensor(&m).unwrap();
        assert_eq!(t.rank(), 2);
        let psi = m.act(&[q(2), q(1)]);
        let psi2 = m.act(&[q(-1), q(4)]);
        assert!(tensor_compatibility(&m, &m, &psi, &psi2).unwrap());
    }

    #[test]
    fn roundtrip_on_finite_flat_pair() {
        let pair = CyclePair::hilbert_chow(dual_numbers()).unwrap();
        let rt = functor_law_roundtrip(&pair).unwrap();
        assert!(rt.holds(), "{rt:?}");
        assert_eq!(rt.matches_exterior_power, Some(true));
    }
}
