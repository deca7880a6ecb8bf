//! Zero cycles `Σ d_i [x_i]` and their norm laws.

use std::sync::Arc;

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::poly::{univariate, MultiPoly};
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::laws::{determinant_law, law_from_evaluator, Carrier, PolyLaw};
use crate::trace_norm::TraceMap;

use super::ambient::{monomial_image, univariate_tensor_quotient, Ambient};
use super::pair::CyclePair;
use super::point::Point;

/// A finite formal sum of closed points with positive multiplicities.
#[derive(Clone, Debug)]
pub struct Cycle {
    ambient: Ambient,
    points: Vec<(Point, u32)>,
}

impl Cycle {
    pub fn new(ambient: Ambient, points: Vec<(Point, u32)>) -> Result<Self> {
        for (p, mult) in &points {
            if *mult == 0 {
                return Err(Error::Malformed("point multiplicity must be positive".into()));
            }
            if p.residue().ring() != ambient.ring() {
                return Err(Error::RingMismatch("point and ambient over different rings".into()));
            }
            if p.coords().len() != ambient.ngens() {
                return Err(Error::DimensionMismatch(format!(
                    "point has {} coordinates, ambient has {} generators",
                    p.coords().len(),
                    ambient.ngens()
                )));
            }
            if ambient.algebra().is_some() {
                p.evaluation(&ambient)?;
            }
        }
        Ok(Cycle { ambient, points })
    }

    pub fn empty(ambient: Ambient) -> Self {
        Cycle { ambient, points: vec![] }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn points(&self) -> &[(Point, u32)] {
        &self.points
    }

    /// `Σ d_i [k(x_i):k]`.
    pub fn degree(&self) -> usize {
        self.points.iter().map(|(p, d)| p.degree() * *d as usize).sum()
    }

    /// `f ↦ Π N_{k(x_i)/k}(f(x_i))^{d_i}` for `f` a polynomial in the
    /// ambient generators.
    pub fn norm_of(&self, f: &MultiPoly) -> Scalar {
        self.points
            .iter()
            .fold(self.ambient.ring().one(), |acc, (p, d)| &acc * &p.norm(&p.evaluate(f)).pow(*d))
    }

    /// The norm at a polynomial whose first `ngens` variables are the
    /// ambient generators and whose remaining variables are parameters.
    pub fn norm_symbolic(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let ngens = self.ambient.ngens();
        if f.nvars() < ngens {
            return Err(Error::DimensionMismatch("polynomial has fewer variables than the ambient".into()));
        }
        let zero = MultiPoly::zero(self.ambient.ring(), f.nvars() - ngens);
        Ok(self.points.iter().fold(zero.one_like(), |acc, (p, d)| {
            acc.mul_ref(&p.norm_generic(&p.evaluate_symbolic(f, ngens), &zero).pow_u32(*d))
        }))
    }

    /// `f ↦ Σ d_i Tr_{k(x_i)/k}(f(x_i))`.
    pub fn trace_of(&self, f: &MultiPoly) -> Scalar {
        let ring = self.ambient.ring();
        self.points
            .iter()
            .fold(ring.zero(), |acc, (p, d)| &acc + &(&p.trace(&p.evaluate(f)) * &ring.from_u64(*d as u64)))
    }

    /// `χ(t) = Π N(f(x_i) − t)^{d_i}`, ascending coefficients.
    pub fn char_poly_of(&self, f: &MultiPoly) -> Vec<Scalar> {
        let ring = self.ambient.ring();
        let zero = MultiPoly::zero(ring, 1);
        let t = MultiPoly::var(ring, 1, 0);
        let value = self.points.iter().fold(zero.one_like(), |acc, (p, d)| {
            let mut v: Vec<MultiPoly> = p.evaluate(f).into_iter().map(|c| MultiPoly::constant(c, 1)).collect();
            for (x, o) in v.iter_mut().zip(p.residue().one()) {
                *x = x.sub_ref(&t.scale(o));
            }
            acc.mul_ref(&p.norm_generic(&v, &zero).pow_u32(*d))
        });
        let mut out = univariate::from_multipoly(&value);
        out.resize(self.degree() + 1, ring.zero());
        out
    }

    fn evaluations(&self, alg: &Arc<FiniteAlgebra>, monomials: &[Vec<u32>]) -> Result<Vec<AlgebraMorphism>> {
        self.points
            .iter()
            .map(|(p, _)| {
                let images: Vec<Vec<Scalar>> = monomials.iter().map(|e| monomial_image(p.residue(), p.coords(), e)).collect();
                AlgebraMorphism::from_images(alg.clone(), p.residue().clone(), &images)
            })
            .collect()
    }

    fn law_on(&self, alg: &Arc<FiniteAlgebra>, monomials: &[Vec<u32>]) -> Result<PolyLaw> {
        let evs = self.evaluations(alg, monomials)?;
        let ring = alg.ring();
        if alg.is_zero_ring() {
            return if self.degree() == 0 {
                Ok(PolyLaw::unit(Carrier::Algebra(alg.clone())))
            } else {
                Err(Error::DegenerateAlgebra("a nonempty cycle on the zero algebra".into()))
            };
        }
        law_from_evaluator(Carrier::Algebra(alg.clone()), self.degree(), |t| {
            let zero = MultiPoly::zero(ring, t.len());
            evs.iter().zip(&self.points).fold(zero.one_like(), |acc, (ev, (p, d))| {
                acc.mul_ref(&p.norm_generic(&ev.apply_generic(t, &zero), &zero).pow_u32(*d))
            })
        })
    }

    /// The norm law on a finite ambient, extensionalised.
    pub fn law(&self) -> Result<PolyLaw> {
        let Ambient::Finite { alg, monomials, .. } = &self.ambient else {
            return Err(Error::AmbientMismatch("extensional laws need a finite ambient; use to_pair".into()));
        };
        self.law_on(alg, monomials)
    }

    /// `b ↦ Σ d_i Tr(b(x_i))` on a finite ambient.
    pub fn trace(&self) -> Result<TraceMap> {
        let Ambient::Finite { alg, .. } = &self.ambient else {
            return Err(Error::AmbientMismatch("trace maps need a finite ambient".into()));
        };
        let ring = alg.ring();
        let evs = self.evaluations(alg, match &self.ambient {
            Ambient::Finite { monomials, .. } => monomials,
            _ => unreachable!(),
        })?;
        let theta = (0..alg.rank())
            .map(|i| {
                let e = alg.basis_vector(i);
                evs.iter().zip(&self.points).fold(ring.zero(), |acc, (ev, (p, d))| {
                    &acc + &(&p.trace(&ev.apply(&e)) * &ring.from_u64(*d as u64))
                })
            })
            .collect();
        TraceMap::new(alg.clone(), self.degree(), theta)
    }

    /// The canonical pair: Cayley–Hamilton quotient of the ambient with the
    /// induced law. For a polynomial ambient the law is first realised on
    /// `k[x]/(χ_{x_1}(x_1), …, χ_{x_m}(x_m))`, which it factors through.
    pub fn to_pair(&self) -> Result<CyclePair> {
        match &self.ambient {
            Ambient::Finite { alg, .. } => {
                let law = self.law()?;
                let gens = self.ambient.generator_vectors().expect("finite ambient");
                CyclePair::new(self.ambient.clone(), alg.clone(), gens, law)?.reduce()
            }
            Ambient::Polynomial { ring, vars } => {
                let ring = *ring;
                let m = vars.len();
                if self.degree() == 0 {
                    let zero = Arc::new(FiniteAlgebra::zero_ring(ring));
                    return CyclePair::new(self.ambient.clone(), zero.clone(), vec![vec![]; m], PolyLaw::unit(Carrier::Algebra(zero)));
                }
                // χ_{x_j}(t) has leading coefficient (−1)^d; make it monic
                let sign = if self.degree() % 2 == 1 { -ring.one() } else { ring.one() };
                let polys: Vec<Vec<Scalar>> = (0..m)
                    .map(|j| self.char_poly_of(&MultiPoly::var(ring, m, j)).iter().map(|c| c * &sign).collect())
                    .collect();
                let big = Arc::new(univariate_tensor_quotient(ring, vars, &polys)?);
                let degs: Vec<usize> = polys.iter().map(|p| p.len() - 1).collect();
                let mut monomials: Vec<Vec<u32>> = vec![vec![]];
                for &d in &degs {
                    monomials = monomials
                        .into_iter()
                        .flat_map(|e| {
                            (0..d as u32).map(move |k| {
                                let mut e = e.clone();
                                e.push(k);
                                e
                            })
                        })
                        .collect();
                }
                if m == 1 {
                    // on k[x]/(χ_x) the cycle law is the determinant, which
                    // is already Cayley–Hamilton reduced
                    let mut x = big.zero_vector();
                    if degs[0] == 1 {
                        x[0] = -&polys[0][0];
                    } else {
                        x[1] = ring.one();
                    }
                    let law = determinant_law(&big)?;
                    return CyclePair::new(self.ambient.clone(), big, vec![x], law);
                }
                let law = self.law_on(&big, &monomials)?;
                let gens: Vec<Vec<Scalar>> = (0..m)
                    .map(|j| {
                        let mut x = big.zero_vector();
                        if degs[j] == 1 {
                            // x_j is the constant −g_j(0)
                            x[0] = -&polys[j][0];
                        } else {
                            let pos = monomials
                                .iter()
                                .position(|e| e.iter().enumerate().all(|(k, &v)| v == u32::from(k == j)))
                                .expect("x_j is a basis monomial");
                            x[pos] = ring.one();
                        }
                        x
                    })
                    .collect();
                CyclePair::new(self.ambient.clone(), big, gens, law)?.reduce()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    #[test]
    fn norm_on_quadratic_point() {
        // 1·[x̄] with k(x̄) = Q(√2): n(a + b x) = a^2 − 2b^2
        let r = Ring::Rationals;
        let p = Point::new(r, &[q(-2), q(0), q(1)], &[vec![q(0), q(1)]]).unwrap();
        let cycle = Cycle::new(Ambient::polynomial(r, &["x"]), vec![(p, 1)]).unwrap();
        assert_eq!(cycle.degree(), 2);
        // variables x, a, b
        let f = MultiPoly::from_terms(r, 3, [(vec![0, 1, 0], q(1)), (vec![1, 0, 1], q(1))]);
        let n = cycle.norm_symbolic(&f).unwrap();
        assert_eq!(n.display_with(&["a".into(), "b".into()]), "a^2 - 2*b^2");
        let pair = cycle.to_pair().unwrap();
        assert_eq!(pair.carrier().rank(), 2);
        assert_eq!(pair.law().psi(), &[q(-2), q(0), q(1)][..]);
    }

    #[test]
    fn trace_of_fat_cycle() {
        // 2[0] + [1]: θ(f) = 2 f(0) + f(1)
        let r = Ring::Rationals;
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(r, "x", &[q(0), q(0), q(-1), q(1)]).unwrap());
        let amb = Ambient::finite(alg);
        let cycle = Cycle::new(
            amb.clone(),
            vec![(Point::rational(&[q(0)], r).unwrap(), 2), (Point::rational(&[q(1)], r).unwrap(), 1)],
        )
        .unwrap();
        let theta = cycle.trace().unwrap();
        assert_eq!(theta.functional(), &[q(3), q(1), q(1)][..]);
        let f = amb.vector_to_poly(&[q(5), q(-1), q(2)]).unwrap();
        assert_eq!(cycle.trace_of(&f), q(2 * 5 + 6));
        assert_eq!(cycle.char_poly_of(&MultiPoly::var(r, 1, 0)), vec![q(0), q(0), q(1), q(-1)]);
    }

    #[test]
    fn polynomial_ambient_reduction() {
        let r = Ring::Rationals;
        let cycle = Cycle::new(
            Ambient::polynomial(r, &["x"]),
            vec![(Point::rational(&[q(0)], r).unwrap(), 2), (Point::rational(&[q(1)], r).unwrap(), 1)],
        )
        .unwrap();
        let pair = cycle.to_pair().unwrap();
        assert_eq!(pair.carrier().rank(), 3);
        assert_eq!(pair.carrier().minimal_polynomial(&pair.generators()[0]), vec![q(0), q(0), q(-1), q(1)]);
        // d[Q] on the plane reduces to a curvilinear scheme of length d only
        // when the tangent direction is forced; here it is the full fat point
        let plane = Cycle::new(Ambient::polynomial(r, &["x", "y"]), vec![(Point::rational(&[q(0), q(0)], r).unwrap(), 2)])
            .unwrap();
        let pair = plane.to_pair().unwrap();
        assert_eq!(pair.degree(), 2);
        assert!(pair.law().is_multiplicative());
    }

    #[test]
    fn empty_cycle_lives_on_the_zero_ring() {
        let r = Ring::Rationals;
        let pair = Cycle::empty(Ambient::polynomial(r, &["x"])).to_pair().unwrap();
        assert!(pair.carrier().is_zero_ring());
        assert_eq!(pair.degree(), 0);
    }
}
