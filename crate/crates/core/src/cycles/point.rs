//! Points with finite residue fields `k[z]/(m(z))`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::linalg;
use crate::algebra::poly::{univariate, MultiPoly};
use crate::algebra::ring_elem::{determinant, RingElem};
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

use super::ambient::{monomial_image, poly_image, poly_image_symbolic, Ambient};

/// A closed point: residue field `k(x) = k[z]/(m)` and the images of the
/// ambient generators in `k(x)`.
#[derive(Clone, Debug)]
pub struct Point {
    minpoly: Vec<Scalar>,
    residue: Arc<FiniteAlgebra>,
    coords: Vec<Vec<Scalar>>,
}

impl Point {
    /// `minpoly` ascending (normalised to monic); each coordinate is a
    /// polynomial in the primitive element `z`, reduced modulo `minpoly`.
    pub fn new(ring: Ring, minpoly: &[Scalar], coords: &[Vec<Scalar>]) -> Result<Self> {
        let m = univariate::trim(minpoly.to_vec());
        let deg = univariate::degree(&m).ok_or_else(|| Error::NotAField("zero minimal polynomial".into()))?;
        if deg == 0 {
            return Err(Error::NotAField("constant minimal polynomial".into()));
        }
        let lead = m[deg].inv().expect("nonzero leading coefficient");
        let monic: Vec<Scalar> = m.iter().map(|c| c * &lead).collect();
        screen_irreducible(ring, &monic)?;
        let residue = Arc::new(FiniteAlgebra::univariate_quotient(ring, "z", &monic)?);
        let coords = coords
            .iter()
            .map(|c| {
                let mut r = if c.is_empty() { vec![] } else { univariate::rem(c, &monic) };
                r.resize(deg, ring.zero());
                r
            })
            .collect();
        Ok(Point { minpoly: monic, residue, coords })
    }

    /// A `k`-rational point.
    pub fn rational(values: &[Scalar], ring: Ring) -> Result<Self> {
        Point::new(ring, &[ring.zero(), ring.one()], &values.iter().map(|v| vec![v.clone()]).collect::<Vec<_>>())
    }

    pub fn minpoly(&self) -> &[Scalar] {
        &self.minpoly
    }

    pub fn residue(&self) -> &Arc<FiniteAlgebra> {
        &self.residue
    }

    pub fn coords(&self) -> &[Vec<Scalar>] {
        &self.coords
    }

    /// `[k(x):k]`.
    pub fn degree(&self) -> usize {
        self.residue.rank()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// `f(x) ∈ k(x)` for a polynomial in the ambient generators.
    pub fn evaluate(&self, f: &MultiPoly) -> Vec<Scalar> {
        poly_image(&self.residue, &self.coords, f)
    }

    pub fn evaluate_symbolic(&self, f: &MultiPoly, ngens: usize) -> Vec<MultiPoly> {
        poly_image_symbolic(&self.residue, &self.coords, f, ngens)
    }

    /// The evaluation morphism `B → k(x)` of a finite ambient.
    pub fn evaluation(&self, ambient: &Ambient) -> Result<AlgebraMorphism> {
        let Ambient::Finite { alg, monomials, gens } = ambient else {
            return Err(Error::AmbientMismatch("evaluation morphisms need a finite ambient".into()));
        };
        if self.coords.len() != gens.len() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, ambient has {} generators",
                self.coords.len(),
                gens.len()
            )));
        }
        let images: Vec<Vec<Scalar>> = monomials.iter().map(|e| monomial_image(&self.residue, &self.coords, e)).collect();
        AlgebraMorphism::from_images(alg.clone(), self.residue.clone(), &images)
    }

    /// `N_{k(x)/k}` of an element of `k(x) ⊗ T`.
    pub fn norm_generic<T: RingElem>(&self, v: &[T], zero: &T) -> T {
        determinant(&self.residue.mult_matrix_generic(v, zero), &zero.one_like())
    }

    pub fn norm(&self, v: &[Scalar]) -> Scalar {
        linalg::det(self.residue.ring(), &self.residue.mult_matrix(v))
    }

    pub fn trace(&self, v: &[Scalar]) -> Scalar {
        let m = self.residue.mult_matrix(v);
        (0..m.len()).fold(self.residue.ring().zero(), |acc, i| &acc + &m[i][i])
    }
}

/// Squarefree check plus a search for factors of small degree.
fn screen_irreducible(ring: Ring, monic: &[Scalar]) -> Result<()> {
    let deg = monic.len() - 1;
    if deg == 1 {
        return Ok(());
    }
    let g = univariate::gcd(monic, &univariate::derivative(monic));
    if univariate::degree(&g) != Some(0) {
        return Err(Error::NotAField("minimal polynomial is not squarefree".into()));
    }
    match ring {
        Ring::Rationals => {
            if let Some(r) = rational_root(monic) {
                return Err(Error::NotAField(format!("minimal polynomial has the rational root {r}")));
            }
        }
        Ring::PrimeField(p) => {
            // trial division by every monic polynomial of degree ≤ deg/2, when affordable
            for k in 1..=deg / 2 {
                let count = (p as f64).powi(k as i32);
                if count > 200_000.0 {
                    break;
                }
                for idx in 0..count as u64 {
                    let mut f: Vec<Scalar> = Vec::with_capacity(k + 1);
                    let mut rest = idx;
                    for _ in 0..k {
                        f.push(ring.from_u64(rest % p));
                        rest /= p;
                    }
                    f.push(ring.one());
                    if univariate::degree(&univariate::rem(monic, &f)).is_none() {
                        return Err(Error::NotAField(format!("minimal polynomial has a factor of degree {k}")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// A rational root by the rational root theorem, when the constant and
/// leading coefficients are small enough to enumerate divisors.
fn rational_root(monic: &[Scalar]) -> Option<Scalar> {
    let ring = Ring::Rationals;
    let den_lcm = monic.iter().fold(BigInt::one(), |acc, c| match c {
        Scalar::Q(r) => acc.lcm(r.denom()),
        _ => acc,
    });
    let ints: Vec<BigInt> = monic
        .iter()
        .map(|c| match c {
            Scalar::Q(r) => r.numer() * (&den_lcm / r.denom()),
            _ => unreachable!("rational coefficients"),
        })
        .collect();
    if ints[0].is_zero() {
        return Some(ring.zero());
    }
    let lead = ints.last()?.abs().to_u64()?;
    let constant = ints[0].abs().to_u64()?;
    if lead > 1_000_000 || constant > 1_000_000 {
        return None;
    }
    let divisors = |n: u64| (1..=n).filter(move |d| n.is_multiple_of(*d));
    for num in divisors(constant) {
        for den in divisors(lead) {
            for sign in [1i64, -1] {
                let x = ring.from_ratio(&BigInt::from(sign * num as i64), &BigInt::from(den)).ok()?;
                if univariate::eval(monic, &x).is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_field_screen() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        assert!(Point::new(q, &[s(-2), s(0), s(1)], &[vec![s(0), s(1)]]).is_ok());
        assert!(matches!(Point::new(q, &[s(-4), s(0), s(1)], &[]), Err(Error::NotAField(_))));
        assert!(matches!(Point::new(q, &[s(0), s(0), s(1)], &[]), Err(Error::NotAField(_))));
        let f2 = Ring::PrimeField(2);
        let t = |n| f2.from_i64(n);
        assert!(Point::new(f2, &[t(1), t(1), t(1)], &[]).is_ok());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 is caught by the squarefree test
        assert!(Point::new(f2, &[t(1), t(0), t(1), t(0), t(1)], &[]).is_err());
        // x^4 + x^3 + x^2 + ... over F_3 with a quadratic factor
        let f3 = Ring::PrimeField(3);
        let u = |n| f3.from_i64(n);
        let prod = univariate::mul(&[u(1), u(0), u(1)], &[u(2), u(1), u(1)]);
        assert!(matches!(Point::new(f3, &prod, &[]), Err(Error::NotAField(_))));
    }

    #[test]
    fn norms_and_evaluation() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let p = Point::new(q, &[s(-2), s(0), s(1)], &[vec![s(0), s(1)]]).unwrap();
        assert_eq!(p.degree(), 2);
        // a + b√2 at a = 3, b = 1: 9 − 2
        let f = MultiPoly::from_terms(q, 1, [(vec![0], s(3)), (vec![1], s(1))]);
        let v = p.evaluate(&f);
        assert_eq!(p.norm(&v), s(7));
        assert_eq!(p.trace(&v), s(6));
    }
}
