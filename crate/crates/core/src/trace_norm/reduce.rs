use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::linalg::Subspace;
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::laws::{Carrier, PolyLaw};

use super::charpoly::char_poly_generic;

/// A law pushed to its Cayley–Hamilton quotient `B/J_n`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub ideal: Subspace,
    pub quotient: Arc<FiniteAlgebra>,
    pub projection: AlgebraMorphism,
    pub law: PolyLaw,
}

/// Generators of `J_n`: the `B`-coefficients of every `t`-monomial in
/// `χ_{n,b}(b)` for the generic element `b = Σ t_i b_i`.
pub fn cayley_hamilton_generators(law: &PolyLaw) -> Result<Vec<Vec<Scalar>>> {
    let alg = law.algebra()?;
    let ring = alg.ring();
    let n = alg.rank();
    let coeffs = char_poly_generic(law)?;
    let zero = MultiPoly::zero(ring, n);
    let b = PolyLaw::generic_point(ring, n);
    let mut power = FiniteAlgebra::lift(alg.one(), &zero);
    let mut value = vec![zero.clone(); n];
    for (k, c) in coeffs.iter().enumerate() {
        let signed = if k % 2 == 1 { c.neg_ref() } else { c.clone() };
        for i in 0..n {
            value[i] = value[i].add_ref(&power[i].mul_ref(&signed));
        }
        if k + 1 < coeffs.len() {
            power = alg.mul_generic(&power, &b, &zero);
        }
    }
    let mut by_monomial: BTreeMap<Vec<u32>, Vec<Scalar>> = BTreeMap::new();
    for (i, p) in value.iter().enumerate() {
        for (e, c) in p.terms() {
            by_monomial.entry(e.clone()).or_insert_with(|| alg.zero_vector())[i] = c.clone();
        }
    }
    Ok(by_monomial.into_values().collect())
}

/// `J_n`, the quotient `B/J_n` and the induced law, with the factorisation
/// `n = n' ∘ π` verified exactly.
pub fn cayley_hamilton_reduce(law: &PolyLaw) -> Result<Reduction> {
    let alg = law.algebra()?;
    let ring = alg.ring();
    if law.degree() == 0 {
        // the empty cycle: χ = 1, so J_n is the unit ideal
        let zero = Arc::new(FiniteAlgebra::zero_ring(ring));
        let projection = AlgebraMorphism::new(alg.clone(), zero.clone(), vec![])?;
        let ideal = Subspace::span(ring, alg.rank(), &(0..alg.rank()).map(|i| alg.basis_vector(i)).collect::<Vec<_>>());
        return Ok(Reduction { ideal, quotient: zero.clone(), projection, law: PolyLaw::unit(Carrier::Algebra(zero)) });
    }
    let gens = cayley_hamilton_generators(law)?;
    let ideal = alg.ideal_closure(&gens);
    if ideal.is_full() {
        return Err(Error::FactorizationFailed("J_n is the unit ideal for a positive-degree law".into()));
    }
    let (quotient, projection) = alg.quotient(&ideal)?;
    // section sending each quotient basis vector to the basis vector it keeps
    let keep: Vec<usize> = (0..alg.rank()).filter(|c| !ideal.pivots().contains(c)).collect();
    let section: Vec<Vec<Scalar>> = (0..alg.rank())
        .map(|r| keep.iter().map(|&c| if c == r { ring.one() } else { ring.zero() }).collect())
        .collect();
    let induced = law.pullback_linear(Carrier::Algebra(quotient.clone()), &section)?;
    let back = induced.pullback(&projection)?;
    if &back != law {
        return Err(Error::FactorizationFailed(format!(
            "the law does not descend to the quotient by an ideal of dimension {}",
            ideal.dim()
        )));
    }
    Ok(Reduction { ideal, quotient, projection, law: induced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;
    use crate::laws::{determinant_law, law_from_homs};

    #[test]
    fn finite_flat_reduction_is_identity() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(0), s(0), s(1)]).unwrap());
        let law = determinant_law(&alg).unwrap();
        let r = cayley_hamilton_reduce(&law).unwrap();
        assert_eq!(r.ideal.dim(), 0);
        assert_eq!(r.quotient.rank(), 2);
        assert!(r.law.is_multiplicative());
    }

    #[test]
    fn double_point_in_a_larger_carrier() {
        // 2·[0] on Q[x]/(x^4) reduces to Q[x]/(x^2)
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(0), s(0), s(0), s(0), s(1)]).unwrap());
        let ev = AlgebraMorphism::from_images(
            alg.clone(),
            Arc::new(FiniteAlgebra::base(q)),
            &[vec![s(1)], vec![s(0)], vec![s(0)], vec![s(0)]],
        )
        .unwrap();
        let law = law_from_homs(&[ev.clone(), ev]).unwrap();
        let r = cayley_hamilton_reduce(&law).unwrap();
        // χ_{n,b}(t) = (b(0) − t)^2, so J = (x^2)
        assert_eq!(r.quotient.rank(), 2);
        assert_eq!(r.ideal.dim(), 2);
        assert_eq!(r.law, determinant_law(&r.quotient).unwrap());
    }
}
