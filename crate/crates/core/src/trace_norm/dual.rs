use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;

/// Dual numbers `a + bε`, `ε² = 0`, over the base ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dual {
    pub re: Scalar,
    pub eps: Scalar,
}

impl Dual {
    pub fn new(re: Scalar, eps: Scalar) -> Self {
        Dual { re, eps }
    }
}

impl RingElem for Dual {
    fn zero_like(&self) -> Self {
        let z = self.re.ring().zero();
        Dual::new(z.clone(), z)
    }
    fn one_like(&self) -> Self {
        Dual::new(self.re.ring().one(), self.re.ring().zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        Dual::new(&self.re + &o.re, &self.eps + &o.eps)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Dual::new(&self.re - &o.re, &self.eps - &o.eps)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        Dual::new(&self.re * &o.re, &(&self.re * &o.eps) + &(&self.eps * &o.re))
    }
    fn neg_ref(&self) -> Self {
        Dual::new(-&self.re, -&self.eps)
    }
    fn scale(&self, s: &Scalar) -> Self {
        Dual::new(&self.re * s, &self.eps * s)
    }
}
