use std::fmt;

use crate::algebra::poly::{univariate, MultiPoly};
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::gamma::basis::gamma_basis;
use crate::laws::PolyLaw;

use super::theta::unit_times_monomial;

/// `χ_{n,b}(t) = n_{A[t]}(b − t)`, coefficients ascending in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub ring: Ring,
    pub coeffs: Vec<Scalar>,
}

impl CharPoly {
    pub fn degree(&self) -> Option<usize> {
        univariate::degree(&self.coeffs)
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        univariate::eval(&self.coeffs, t)
    }

    pub fn to_multipoly(&self) -> MultiPoly {
        univariate::to_multipoly(&self.coeffs, self.ring)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly())
    }
}

/// `Σ_k (−1)^k Ψ(γ^k(1) × γ^{d−k}(b)) t^k`.
pub fn char_poly(law: &PolyLaw, b: &[Scalar]) -> Result<CharPoly> {
    if b.len() != law.rank() {
        return Err(Error::DimensionMismatch("element length differs from the carrier rank".into()));
    }
    let gens = char_poly_generic(law)?;
    let mut coeffs = Vec::with_capacity(gens.len());
    for (k, c) in gens.iter().enumerate() {
        let v = c.eval(b);
        coeffs.push(if k % 2 == 1 { -v } else { v });
    }
    Ok(CharPoly { ring: law.ring(), coeffs })
}

/// Unsigned coefficients `c_k(t) = Ψ(γ^k(1) × γ^{d−k}(Σ t_i b_i))`, each a
/// homogeneous polynomial of degree `d − k` in the generic coordinates.
pub fn char_poly_generic(law: &PolyLaw) -> Result<Vec<MultiPoly>> {
    let ring = law.ring();
    let n = law.rank();
    let d = law.degree();
    law.algebra()?;
    (0..=d)
        .map(|k| {
            let mut p = MultiPoly::zero(ring, n);
            for beta in gamma_basis(n, d - k) {
                let v = unit_times_monomial(law, k, &beta)?;
                if !v.is_zero() {
                    p = p.add_ref(&MultiPoly::monomial(v, beta.0));
                }
            }
            Ok(p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::finite::FiniteAlgebra;
    use crate::algebra::linalg::classical_charpoly;
    use crate::laws::determinant_law;

    #[test]
    fn finite_flat_matches_matrix_charpoly() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(1), s(-2), s(0), s(1)]).unwrap());
        let law = determinant_law(&alg).unwrap();
        for b in [vec![s(0), s(1), s(0)], vec![s(2), s(-1), s(3)], alg.one().to_vec()] {
            let chi = char_poly(&law, &b).unwrap();
            let classical = classical_charpoly(q, &alg.mult_matrix(&b));
            // χ = (−1)^3 det(tI − M)
            let neg: Vec<Scalar> = classical.iter().map(|c| -c).collect();
            assert_eq!(chi.coeffs, neg);
            assert_eq!(chi.coeffs[0], law.value(&b));
        }
        let chi = char_poly(&law, alg.one()).unwrap();
        assert_eq!(chi.to_string(), "1 - 3*t + 3*t^2 - t^3");
    }
}
