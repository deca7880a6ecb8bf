//! Pairs `(Y, n)`: a closed subscheme of the ambient, given by a quotient
//! carrier, and a multiplicative law on it. Sums, direct images and
//! equivalence of pairs.

use std::sync::Arc;

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::linalg::{self, Subspace};
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::laws::{determinant_law, law_from_evaluator, Carrier, PolyLaw};
use crate::trace_norm::cayley_hamilton_reduce;

use super::ambient::{monomial_image, poly_image, Ambient};

#[derive(Clone, Debug)]
pub struct CyclePair {
    ambient: Ambient,
    carrier: Arc<FiniteAlgebra>,
    gens: Vec<Vec<Scalar>>,
    law: PolyLaw,
}

impl CyclePair {
    /// `gens` are the images of the ambient generators in `carrier`; they
    /// must generate it, and for a finite ambient define an algebra
    /// morphism onto it.
    pub fn new(ambient: Ambient, carrier: Arc<FiniteAlgebra>, gens: Vec<Vec<Scalar>>, law: PolyLaw) -> Result<Self> {
        if gens.len() != ambient.ngens() || gens.iter().any(|g| g.len() != carrier.rank()) {
            return Err(Error::DimensionMismatch("generator images do not match ambient and carrier".into()));
        }
        if law.carrier() != &Carrier::Algebra(carrier.clone()) {
            return Err(Error::AmbientMismatch("law is not defined on the carrier".into()));
        }
        if !carrier.is_zero_ring() {
            let (sub, _) = carrier.generated_subalgebra(&gens)?;
            if sub.rank() != carrier.rank() {
                return Err(Error::NotAMorphism("the ambient does not map onto the carrier".into()));
            }
        }
        let pair = CyclePair { ambient, carrier, gens, law };
        if pair.ambient.algebra().is_some() {
            pair.projection()?;
        }
        Ok(pair)
    }

    /// The finite-flat pair `(Spec B, det)`.
    pub fn hilbert_chow(alg: Arc<FiniteAlgebra>) -> Result<Self> {
        let ambient = Ambient::finite(alg.clone());
        let gens = ambient.generator_vectors().expect("finite ambient");
        let law = determinant_law(&alg)?;
        CyclePair::new(ambient, alg, gens, law)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn carrier(&self) -> &Arc<FiniteAlgebra> {
        &self.carrier
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.gens
    }

    pub fn law(&self) -> &PolyLaw {
        &self.law
    }

    pub fn degree(&self) -> usize {
        self.law.degree()
    }

    /// Image of an ambient element, written in the generators.
    pub fn image_of(&self, f: &MultiPoly) -> Vec<Scalar> {
        poly_image(&self.carrier, &self.gens, f)
    }

    /// `B → carrier` for a finite ambient.
    pub fn projection(&self) -> Result<AlgebraMorphism> {
        let Ambient::Finite { alg, monomials, .. } = &self.ambient else {
            return Err(Error::AmbientMismatch("projection morphisms need a finite ambient".into()));
        };
        let images: Vec<Vec<Scalar>> = monomials.iter().map(|e| monomial_image(&self.carrier, &self.gens, e)).collect();
        AlgebraMorphism::from_images(alg.clone(), self.carrier.clone(), &images)
    }

    /// The law pulled back to a finite ambient.
    pub fn ambient_law(&self) -> Result<PolyLaw> {
        self.law.pullback(&self.projection()?)
    }

    /// Pass to the Cayley–Hamilton quotient of the carrier.
    pub fn reduce(&self) -> Result<CyclePair> {
        let r = cayley_hamilton_reduce(&self.law)?;
        let gens = self.gens.iter().map(|g| r.projection.apply(g)).collect();
        CyclePair::new(self.ambient.clone(), r.quotient, gens, r.law)
    }
}

/// The law induced on the target of a surjection `q: C → W`, if `law`
/// factors through it.
pub fn descend(law: &PolyLaw, q: &AlgebraMorphism) -> Result<Option<PolyLaw>> {
    let w = q.target();
    let ring = w.ring();
    if w.is_zero_ring() {
        return Ok((law.degree() == 0).then(|| PolyLaw::unit(Carrier::Algebra(w.clone()))));
    }
    let mut section: Vec<Vec<Scalar>> = vec![Vec::with_capacity(w.rank()); q.source().rank()];
    for k in 0..w.rank() {
        let sol = linalg::solve_linear(ring, q.matrix(), q.source().rank(), &w.basis_vector(k))
            .map_err(|_| Error::NotAMorphism("descent along a map that is not surjective".into()))?;
        for (row, c) in section.iter_mut().zip(sol.particular) {
            row.push(c);
        }
    }
    let induced = law.pullback_linear(Carrier::Algebra(w.clone()), &section)?;
    Ok((&induced.pullback(q)? == law).then_some(induced))
}

/// `(Y_1 ∪ Y_2, n_1 n_2)`: the carrier is the image of the ambient in
/// `C_1 × C_2`.
pub fn sum_cycles(p: &CyclePair, q: &CyclePair) -> Result<CyclePair> {
    p.ambient.check_same(&q.ambient)?;
    if p.degree() == 0 {
        return Ok(q.clone());
    }
    if q.degree() == 0 {
        return Ok(p.clone());
    }
    let (c1, c2) = (p.carrier.as_ref(), q.carrier.as_ref());
    let (r1, r2) = (c1.rank(), c2.rank());
    let prod = Arc::new(FiniteAlgebra::product(&[c1, c2])?);
    let gens_p: Vec<Vec<Scalar>> = p
        .gens
        .iter()
        .zip(&q.gens)
        .map(|(a, b)| {
            let mut v = a.clone();
            v.extend(b.iter().cloned());
            v
        })
        .collect();
    let (union, incl) = prod.generated_subalgebra(&gens_p)?;
    let space = Subspace::span(prod.ring(), r1 + r2, &linalg::transpose(incl.matrix()));
    let gens = gens_p.iter().map(|g| space.coordinates(g).expect("generators lie in the union")).collect();
    let ring = prod.ring();
    let law = law_from_evaluator(Carrier::Algebra(union.clone()), p.degree() + q.degree(), |t| {
        let zero = MultiPoly::zero(ring, t.len());
        let image = incl.apply_generic(t, &zero);
        let a = p.law.evaluate_generic(&image[..r1], &zero);
        let b = q.law.evaluate_generic(&image[r1..], &zero);
        a.mul_ref(&b)
    })?;
    CyclePair::new(p.ambient.clone(), union, gens, law)
}

/// Direct image along an ambient map `Z → X`, given by the images of the
/// generators of `source` (the ambient of `Z`) as polynomials in the
/// generators of the pair's ambient. The result is Cayley–Hamilton reduced.
pub fn pushforward(pair: &CyclePair, source: &Ambient, images: &[MultiPoly]) -> Result<CyclePair> {
    if images.len() != source.ngens() {
        return Err(Error::DimensionMismatch("one image per source generator is required".into()));
    }
    if images.iter().any(|f| f.nvars() != pair.ambient.ngens()) {
        return Err(Error::DimensionMismatch("images must be polynomials in the target generators".into()));
    }
    if source.ring() != pair.ambient.ring() {
        return Err(Error::RingMismatch("source and target over different rings".into()));
    }
    if pair.carrier.is_zero_ring() {
        let gens = vec![vec![]; source.ngens()];
        return CyclePair::new(source.clone(), pair.carrier.clone(), gens, pair.law.clone());
    }
    let img: Vec<Vec<Scalar>> = images.iter().map(|f| pair.image_of(f)).collect();
    let (sub, incl) = pair.carrier.generated_subalgebra(&img)?;
    let space = Subspace::span(sub.ring(), pair.carrier.rank(), &linalg::transpose(incl.matrix()));
    let gens = img.iter().map(|g| space.coordinates(g).expect("generators lie in the image")).collect();
    let law = pair.law.pullback(&incl)?;
    CyclePair::new(source.clone(), sub, gens, law)?.reduce()
}

/// Direct image along a morphism of finite ambients `f: B_Z → B_X`.
pub fn pushforward_morphism(pair: &CyclePair, f: &AlgebraMorphism) -> Result<CyclePair> {
    let target = pair.ambient.algebra().ok_or_else(|| Error::AmbientMismatch("pair ambient is not finite".into()))?;
    if !f.target().same_structure(target) {
        return Err(Error::AmbientMismatch("morphism target is not the pair's ambient".into()));
    }
    let source = Ambient::finite(f.source().clone());
    let images = source
        .generator_vectors()
        .expect("finite ambient")
        .iter()
        .map(|g| pair.ambient.vector_to_poly(&f.apply(g)))
        .collect::<Result<Vec<_>>>()?;
    pushforward(pair, &source, &images)
}

/// `(Y_1, n_1) ~ (Y_2, n_2)`: both laws descend to `Y_1 ∩ Y_2` and agree
/// there. This is equivalent to the existence of any common closed
/// subscheme through which both factor.
pub fn pairs_equivalent(p: &CyclePair, q: &CyclePair) -> Result<bool> {
    p.ambient.check_same(&q.ambient)?;
    if p.degree() != q.degree() {
        return Ok(false);
    }
    if p.degree() == 0 {
        return Ok(true);
    }
    let (c1, c2) = (&p.carrier, &q.carrier);
    let nb = c2.rank();
    let tensor = Arc::new(FiniteAlgebra::tensor(c1, c2)?);
    let left = |u: &[Scalar]| -> Vec<Scalar> {
        u.iter().flat_map(|x| c2.one().iter().map(move |y| x * y)).collect()
    };
    let right = |v: &[Scalar]| -> Vec<Scalar> {
        c1.one().iter().flat_map(|x| v.iter().map(move |y| x * y)).collect()
    };
    let relations: Vec<Vec<Scalar>> = p
        .gens
        .iter()
        .zip(&q.gens)
        .map(|(a, b)| left(a).iter().zip(right(b)).map(|(x, y)| x - &y).collect())
        .collect();
    let ideal = tensor.ideal_closure(&relations);
    if ideal.is_full() {
        return Ok(false);
    }
    let (meet, proj) = tensor.quotient(&ideal)?;
    let q1 = AlgebraMorphism::from_images(
        c1.clone(),
        meet.clone(),
        &(0..c1.rank()).map(|i| proj.apply(&left(&c1.basis_vector(i)))).collect::<Vec<_>>(),
    )?;
    let q2 = AlgebraMorphism::from_images(
        c2.clone(),
        meet.clone(),
        &(0..nb).map(|j| proj.apply(&right(&c2.basis_vector(j)))).collect::<Vec<_>>(),
    )?;
    match (descend(&p.law, &q1)?, descend(&q.law, &q2)?) {
        (Some(m1), Some(m2)) => Ok(m1 == m2),
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;
    use crate::cycles::{Cycle, Point};

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    fn line_cycle(points: &[(i64, u32)]) -> Cycle {
        let r = Ring::Rationals;
        Cycle::new(
            Ambient::polynomial(r, &["x"]),
            points.iter().map(|&(a, d)| (Point::rational(&[q(a)], r).unwrap(), d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn hilbert_chow_of_two_points() {
        let r = Ring::Rationals;
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(r, "x", &[q(0), q(-1), q(1)]).unwrap());
        let pair = CyclePair::hilbert_chow(alg.clone()).unwrap();
        let ev = |a: i64| {
            AlgebraMorphism::from_images(alg.clone(), Arc::new(FiniteAlgebra::base(r)), &[vec![q(1)], vec![q(a)]]).unwrap()
        };
        let homs = crate::laws::law_from_homs(&[ev(0), ev(1)]).unwrap();
        assert_eq!(pair.law(), &homs);
    }

    #[test]
    fn sum_of_fat_point_and_point() {
        let a = line_cycle(&[(0, 2)]).to_pair().unwrap();
        let b = line_cycle(&[(1, 1)]).to_pair().unwrap();
        let s = sum_cycles(&a, &b).unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.carrier().minimal_polynomial(&s.generators()[0]), vec![q(0), q(0), q(-1), q(1)]);
        let direct = line_cycle(&[(0, 2), (1, 1)]).to_pair().unwrap();
        assert!(pairs_equivalent(&s, &direct).unwrap());
    }

    #[test]
    fn repeated_point_sum_is_equivalent_to_multiple() {
        let one = line_cycle(&[(3, 1)]).to_pair().unwrap();
        let mut acc = one.clone();
        for _ in 0..2 {
            acc = sum_cycles(&acc, &one).unwrap();
        }
        assert_eq!(acc.carrier().rank(), 1);
        let triple = line_cycle(&[(3, 3)]).to_pair().unwrap();
        assert_eq!(triple.carrier().rank(), 3);
        assert!(pairs_equivalent(&acc, &triple).unwrap());
        assert!(!pairs_equivalent(&acc, &line_cycle(&[(3, 2), (4, 1)]).to_pair().unwrap()).unwrap());
        assert!(!pairs_equivalent(&one, &triple).unwrap());
    }

    #[test]
    fn sum_with_empty_cycle() {
        let a = line_cycle(&[(0, 2)]).to_pair().unwrap();
        let e = line_cycle(&[]).to_pair().unwrap();
        assert!(pairs_equivalent(&sum_cycles(&a, &e).unwrap(), &a).unwrap());
    }

    #[test]
    fn projection_to_a_line() {
        let r = Ring::Rationals;
        let plane = Cycle::new(Ambient::polynomial(r, &["x", "y"]), vec![(Point::rational(&[q(2), q(5)], r).unwrap(), 1)])
            .unwrap()
            .to_pair()
            .unwrap();
        let line = Ambient::polynomial(r, &["t"]);
        let image = pushforward(&plane, &line, &[MultiPoly::var(r, 2, 0)]).unwrap();
        let expected = Cycle::new(line.clone(), vec![(Point::rational(&[q(2)], r).unwrap(), 1)]).unwrap().to_pair().unwrap();
        assert!(pairs_equivalent(&image, &expected).unwrap());
    }

    #[test]
    fn pair_equivalent_to_its_reduction() {
        let r = Ring::Rationals;
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(r, "x", &[q(0), q(0), q(0), q(0), q(1)]).unwrap());
        let amb = Ambient::finite(alg.clone());
        let cycle = Cycle::new(amb.clone(), vec![(Point::rational(&[q(0)], r).unwrap(), 2)]).unwrap();
        let law = cycle.law().unwrap();
        let gens = amb.generator_vectors().unwrap();
        let raw = CyclePair::new(amb, alg, gens, law).unwrap();
        let red = raw.reduce().unwrap();
        assert_eq!(red.carrier().rank(), 2);
        assert!(pairs_equivalent(&raw, &red).unwrap());
    }
}
