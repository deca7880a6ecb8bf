use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::linalg::kernel;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::gamma::basis::gamma_basis;

use super::dual::Dual;
use super::theta::ThetaTower;

/// First-order deformations `θ = d·ev_Q + εθ''` of the trace of `[dQ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTraceDeformation {
    pub degree: usize,
    pub dimension: usize,
    /// Basis of the admissible `θ''`, as functionals on the basis of `B`.
    pub basis: Vec<Vec<Scalar>>,
}

/// Solve for all `θ''` such that `θ(1) = d` and `Θ_{d+1} ≡ 0` over `k[ε]/ε²`.
pub fn tangent_deformations(alg: &FiniteAlgebra, point: &AlgebraMorphism, d: usize) -> Result<DualTraceDeformation> {
    let ring = alg.ring();
    if !ring.factorial_invertible(d) {
        return Err(Error::Characteristic { factorial: d, characteristic: ring.characteristic() });
    }
    if point.target().rank() != 1 || !point.source().same_structure(alg) {
        return Err(Error::AmbientMismatch("point must be a rational evaluation of the algebra".into()));
    }
    let n = alg.rank();
    let dd = ring.from_u64(d as u64);
    let ev: Vec<Scalar> = (0..n).map(|i| &point.apply(&alg.basis_vector(i))[0] * &dd).collect();
    let multisets: Vec<Vec<usize>> = gamma_basis(n, d + 1).iter().map(|a| a.to_word()).collect();
    // columns: the ε-part of Θ_{d+1} for θ'' = δ_j, which is linear in θ''
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for j in 0..n {
        let theta: Vec<Dual> = (0..n)
            .map(|i| Dual::new(ev[i].clone(), if i == j { ring.one() } else { ring.zero() }))
            .collect();
        let mut tower = ThetaTower::new(alg, theta, Dual::new(ring.zero(), ring.zero()));
        let mut col = vec![alg.one()[j].clone()];
        for m in &multisets {
            let v = tower.basis_value(m);
            if !v.re.is_zero() {
                return Err(Error::NotATrace { degree: d, reason: "d·ev_Q is not a degree-d trace".into() });
            }
            col.push(v.eps);
        }
        columns.push(col);
    }
    let rows = columns[0].len();
    let mat: Vec<Vec<Scalar>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let basis = if n == 0 { vec![] } else { kernel(ring, &mat, n) };
    Ok(DualTraceDeformation { degree: d, dimension: basis.len(), basis })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::scalar::Ring;

    fn origin(alg: &Arc<FiniteAlgebra>) -> AlgebraMorphism {
        let q = alg.ring();
        let images: Vec<Vec<Scalar>> = (0..alg.rank()).map(|i| vec![if i == 0 { q.one() } else { q.zero() }]).collect();
        AlgebraMorphism::from_images(alg.clone(), Arc::new(FiniteAlgebra::base(q)), &images).unwrap()
    }

    #[test]
    fn truncated_line_and_plane() {
        let q = Ring::Rationals;
        let mut x4 = vec![q.zero(); 4];
        x4.push(q.one());
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &x4).unwrap());
        let t = tangent_deformations(&alg, &origin(&alg), 2).unwrap();
        assert_eq!(t.dimension, 2);
        let plane = Arc::new(FiniteAlgebra::truncated_polynomial(q, &["x", "y"], 2));
        assert_eq!(tangent_deformations(&plane, &origin(&plane), 2).unwrap().dimension, 5);
        let pt = Arc::new(FiniteAlgebra::base(q));
        assert_eq!(tangent_deformations(&pt, &origin(&pt), 3).unwrap().dimension, 0);
    }

    #[test]
    fn small_characteristic_is_rejected() {
        let f2 = Ring::PrimeField(2);
        let pt = Arc::new(FiniteAlgebra::base(f2));
        let err = tangent_deformations(&pt, &AlgebraMorphism::identity(pt.clone()), 2).unwrap_err();
        assert_eq!(err, Error::Characteristic { factorial: 2, characteristic: 2 });
    }
}
