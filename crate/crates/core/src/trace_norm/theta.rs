//! The Θ_k tower of a law or a trace, and the trace/norm correspondence.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::gamma::basis::{gamma_basis, MultiIndex};
use crate::gamma::element::GammaElement;
use crate::gamma::product::{external_product, gamma_of_vector};
use crate::laws::{Carrier, PolyLaw};

use super::TraceMap;

/// `Σ_{i_1..i_k} Π_j args[j][i_j] · f(sorted(i_1..i_k))` for a symmetric
/// multilinear form given by its values `f` on sorted basis multisets.
pub fn expand_multilinear<T: RingElem>(args: &[Vec<T>], zero: &T, f: &mut dyn FnMut(&[usize]) -> T) -> T {
    fn go<T: RingElem>(
        args: &[Vec<T>],
        pos: usize,
        idx: &mut Vec<usize>,
        coeff: T,
        acc: &mut T,
        f: &mut dyn FnMut(&[usize]) -> T,
    ) {
        if pos == args.len() {
            let mut key = idx.clone();
            key.sort_unstable();
            let v = f(&key);
            if !v.is_zero() {
                *acc = acc.add_ref(&coeff.mul_ref(&v));
            }
            return;
        }
        for (i, c) in args[pos].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx.push(i);
            go(args, pos + 1, idx, coeff.mul_ref(c), acc, f);
            idx.pop();
        }
    }
    let mut acc = zero.clone();
    go(args, 0, &mut Vec::with_capacity(args.len()), zero.one_like(), &mut acc, f);
    acc
}

/// Θ_k computed from a trace by the recursion
/// `Θ_{k+1}(b_1..) = θ(b_1)Θ_k(b_2..) − Σ_i Θ_k(b_2,..,b_1 b_i,..)`,
/// with `Θ_0 = 1`. Values on basis multisets are memoised; `θ` may take
/// values in any base extension `T`.
pub struct ThetaTower<'a, T: RingElem> {
    alg: &'a FiniteAlgebra,
    theta: Vec<T>,
    zero: T,
    products: Vec<Vec<Vec<(usize, Scalar)>>>,
    memo: HashMap<Vec<usize>, T>,
}

impl<'a, T: RingElem> ThetaTower<'a, T> {
    pub fn new(alg: &'a FiniteAlgebra, theta: Vec<T>, zero: T) -> Self {
        assert_eq!(theta.len(), alg.rank(), "functional length must equal the rank");
        let n = alg.rank();
        let products = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        alg.mul_vec(&alg.basis_vector(i), &alg.basis_vector(j))
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ThetaTower { alg, theta, zero, products, memo: HashMap::new() }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    /// `Θ_k(e_{m_1}, …, e_{m_k})` for a sorted multiset `m`.
    pub fn basis_value(&mut self, ms: &[usize]) -> T {
        if ms.is_empty() {
            return self.zero.one_like();
        }
        if ms.len() == 1 {
            return self.theta[ms[0]].clone();
        }
        if let Some(v) = self.memo.get(ms) {
            return v.clone();
        }
        let b1 = ms[0];
        let rest = &ms[1..];
        let sub = self.basis_value(rest);
        let mut acc = self.theta[b1].mul_ref(&sub);
        let mut j = 0;
        while j < rest.len() {
            // equal entries give equal terms
            let mut count = 1;
            while j + count < rest.len() && rest[j + count] == rest[j] {
                count += 1;
            }
            let prods = self.products[b1][rest[j]].clone();
            for (m, c) in prods {
                let mut key = rest.to_vec();
                key[j] = m;
                key.sort_unstable();
                let v = self.basis_value(&key);
                let c = &c * &self.alg.ring().from_u64(count as u64);
                acc = acc.sub_ref(&v.scale(&c));
            }
            j += count;
        }
        self.memo.insert(ms.to_vec(), acc.clone());
        acc
    }

    /// `Θ_k(b_1, …, b_k)` for elements of `B ⊗ T`.
    pub fn eval(&mut self, args: &[Vec<T>]) -> T {
        let zero = self.zero.clone();
        expand_multilinear(args, &zero, &mut |ms| self.basis_value(ms))
    }

    /// `Θ_k(x, …, x)`.
    pub fn eval_diagonal(&mut self, x: &[T], k: usize) -> T {
        let zero = self.zero.clone();
        let ring = self.alg.ring();
        let n = self.alg.rank();
        let support: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
        let mut acc = zero.clone();
        for sub in gamma_basis(support.len(), k) {
            let mut alpha = vec![0u32; n];
            let mut coeff = zero.one_like();
            for (p, &i) in support.iter().enumerate() {
                alpha[i] = sub.0[p];
                coeff = coeff.mul_ref(&x[i].pow_u32(sub.0[p]));
            }
            let alpha = MultiIndex(alpha);
            let multinomial = ring.factorial(k).checked_div(&ring.from_bigint(&alpha.factorial()));
            // in small characteristic the multinomial is still an integer
            let multinomial = multinomial.unwrap_or_else(|_| ring.from_bigint(&multinomial_int(&alpha)));
            let v = self.basis_value(&alpha.to_word());
            acc = acc.add_ref(&coeff.mul_ref(&v).scale(&multinomial));
        }
        acc
    }
}

fn multinomial_int(alpha: &MultiIndex) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    let mut total = 0u64;
    for &a in &alpha.0 {
        total += a as u64;
        acc *= crate::algebra::scalar::binomial(total, a as u64);
    }
    acc
}

/// `Θ_k(b_1..b_k) = Ψ(γ^{d−k}(1) × γ^1(b_1) × … × γ^1(b_k))`, zero for `k > d`.
pub fn theta_k_from_norm(law: &PolyLaw, args: &[Vec<Scalar>]) -> Result<Scalar> {
    let alg = law.algebra()?;
    let ring = law.ring();
    let d = law.degree();
    let k = args.len();
    if k > d {
        return Ok(ring.zero());
    }
    let mut g = gamma_of_vector(ring, alg.one(), d - k);
    for b in args {
        if b.len() != alg.rank() {
            return Err(Error::DimensionMismatch("argument length differs from the carrier rank".into()));
        }
        g = external_product(&g, &gamma_of_vector(ring, b, 1))?;
    }
    law.apply(&g)
}

/// Θ_k of a law on basis multisets, memoised; the norm-side counterpart of
/// [`ThetaTower`].
pub struct NormTower<'a> {
    law: &'a PolyLaw,
    memo: HashMap<Vec<usize>, Scalar>,
}

impl<'a> NormTower<'a> {
    pub fn new(law: &'a PolyLaw) -> Result<Self> {
        law.algebra()?;
        Ok(NormTower { law, memo: HashMap::new() })
    }

    pub fn basis_value(&mut self, ms: &[usize]) -> Scalar {
        if let Some(v) = self.memo.get(ms) {
            return v.clone();
        }
        let alg = self.law.algebra().expect("checked");
        let args: Vec<Vec<Scalar>> = ms.iter().map(|&i| alg.basis_vector(i)).collect();
        let v = theta_k_from_norm(self.law, &args).expect("basis arguments");
        self.memo.insert(ms.to_vec(), v.clone());
        v
    }

    /// Θ_k on elements of `B ⊗ T`.
    pub fn eval<T: RingElem>(&mut self, args: &[Vec<T>], zero: &T) -> T {
        let one = zero.one_like();
        expand_multilinear(args, zero, &mut |ms| one.scale(&self.basis_value(ms)))
    }
}

/// `Θ_k` of a trace on base-ring arguments.
pub fn theta_k_from_trace(theta: &TraceMap, args: &[Vec<Scalar>]) -> Scalar {
    let zero = theta.ring().zero();
    let mut tower = ThetaTower::new(theta.carrier(), theta.functional().to_vec(), zero);
    tower.eval(args)
}

/// `θ(b) = Ψ(γ^{d−1}(1) × γ^1(b))` of a multiplicative law.
pub fn trace_from_norm(law: &PolyLaw) -> Result<TraceMap> {
    law.check_multiplicative()?;
    trace_of_law_unchecked(law)
}

/// The functional `b ↦ Ψ(γ^{d−1}(1) × γ^1(b))` without the multiplicativity
/// check.
pub fn trace_of_law_unchecked(law: &PolyLaw) -> Result<TraceMap> {
    let alg = law.algebra()?;
    let theta = if law.degree() == 0 {
        alg.zero_vector()
    } else {
        (0..alg.rank()).map(|i| theta_k_from_norm(law, &[alg.basis_vector(i)])).collect::<Result<Vec<_>>>()?
    };
    TraceMap::new(alg.clone(), law.degree(), theta)
}

/// Outcome of a degree-`d` trace check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck<T> {
    pub holds: bool,
    /// Basis indices of a failing `(d+1)`-multiset, when `Θ_{d+1}` fails.
    pub witness: Option<Vec<usize>>,
    pub value: Option<T>,
    pub reason: String,
}

/// `θ(1) = d` and `Θ_{d+1}` vanishes on every basis multiset of size `d+1`,
/// for a functional with values in `T`.
pub fn degree_d_trace_check<T: RingElem>(alg: &FiniteAlgebra, theta: Vec<T>, d: usize, zero: T) -> TraceCheck<T> {
    let one_val = FiniteAlgebra::lift(alg.one(), &zero)
        .iter()
        .zip(&theta)
        .fold(zero.clone(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)));
    let expected = zero.one_like().scale(&alg.ring().from_u64(d as u64));
    if one_val != expected {
        return TraceCheck {
            holds: false,
            witness: None,
            value: Some(one_val),
            reason: format!("θ(1) differs from {d}"),
        };
    }
    let mut tower = ThetaTower::new(alg, theta, zero);
    for alpha in gamma_basis(alg.rank(), d + 1) {
        let word = alpha.to_word();
        let v = tower.basis_value(&word);
        if !v.is_zero() {
            let names: Vec<&str> = word.iter().map(|&i| alg.basis_names()[i].as_str()).collect();
            return TraceCheck {
                holds: false,
                reason: format!("Θ_{}({}) ≠ 0", d + 1, names.join(", ")),
                witness: Some(word),
                value: Some(v),
            };
        }
    }
    TraceCheck { holds: true, witness: None, value: None, reason: String::new() }
}

pub fn is_degree_d_trace(theta: &TraceMap) -> TraceCheck<Scalar> {
    degree_d_trace_check(theta.carrier(), theta.functional().to_vec(), theta.degree(), theta.ring().zero())
}

/// `Ψ(γ^α) = Θ_d(e_1^{α_1}, …)/α!`; requires `d!` invertible and a genuine
/// degree-`d` trace.
pub fn norm_from_trace(theta: &TraceMap) -> Result<PolyLaw> {
    let ring = theta.ring();
    let d = theta.degree();
    if !ring.factorial_invertible(d) {
        return Err(Error::Characteristic { factorial: d, characteristic: ring.characteristic() });
    }
    let check = is_degree_d_trace(theta);
    if !check.holds {
        return Err(Error::NotATrace { degree: d, reason: check.reason });
    }
    let alg = theta.carrier();
    let carrier = Carrier::Algebra(Arc::clone(theta.carrier_arc()));
    if alg.is_zero_ring() {
        return Ok(PolyLaw::unit(carrier));
    }
    let mut tower = ThetaTower::new(alg, theta.functional().to_vec(), ring.zero());
    let psi = gamma_basis(alg.rank(), d)
        .iter()
        .map(|a| {
            let v = tower.basis_value(&a.to_word());
            v.checked_div(&ring.from_bigint(&a.factorial()))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyLaw::new(carrier, d, psi)
}

/// `Ψ(γ^{d−k}(1) × γ^β)` as a Γ element helper for callers that need the
/// raw divided monomial.
pub fn unit_times_monomial(law: &PolyLaw, k: usize, beta: &MultiIndex) -> Result<Scalar> {
    let alg = law.algebra()?;
    let g = external_product(
        &gamma_of_vector(law.ring(), alg.one(), k),
        &GammaElement::monomial(law.ring(), beta.clone(), law.ring().one()),
    )?;
    law.apply(&g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite::AlgebraMorphism;
    use crate::algebra::scalar::Ring;
    use crate::laws::{determinant_law, law_from_homs};

    fn cubic() -> Arc<FiniteAlgebra> {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(2), s(-1), s(3), s(1)]).unwrap())
    }

    #[test]
    fn towers_agree_on_basis_tuples() {
        let alg = cubic();
        let law = determinant_law(&alg).unwrap();
        let theta = trace_from_norm(&law).unwrap();
        // θ is the matrix trace
        for i in 0..3 {
            let m = alg.mult_matrix(&alg.basis_vector(i));
            let tr = (0..3).fold(alg.ring().zero(), |a, k| &a + &m[k][k]);
            assert_eq!(theta.functional()[i], tr);
        }
        let mut norm_side = NormTower::new(&law).unwrap();
        let mut trace_side = ThetaTower::new(&alg, theta.functional().to_vec(), alg.ring().zero());
        for k in 1..=4 {
            for a in gamma_basis(3, k) {
                let w = a.to_word();
                assert_eq!(norm_side.basis_value(&w), trace_side.basis_value(&w), "k={k} {w:?}");
            }
        }
        assert!(is_degree_d_trace(&theta).holds);
        assert_eq!(norm_from_trace(&theta).unwrap(), law);
    }

    #[test]
    fn unit_recursion_and_diagonal() {
        let alg = cubic();
        let law = determinant_law(&alg).unwrap();
        let theta = trace_from_norm(&law).unwrap();
        let q = alg.ring();
        let b = vec![q.from_i64(1), q.from_i64(2), q.from_i64(-1)];
        let c = vec![q.from_i64(0), q.from_i64(1), q.from_i64(5)];
        let one = alg.one().to_vec();
        // Θ_{k+1}(1, b, c) = (d − k) Θ_k(b, c)
        let lhs = theta_k_from_trace(&theta, &[one, b.clone(), c.clone()]);
        let rhs = &q.from_i64(1) * &theta_k_from_trace(&theta, &[b.clone(), c]);
        assert_eq!(lhs, rhs);
        let mut tower = ThetaTower::new(&alg, theta.functional().to_vec(), q.zero());
        assert_eq!(tower.eval_diagonal(&b, 3), &q.from_i64(6) * &law.value(&b));
        assert!(theta_k_from_norm(&law, &[b.clone(), b.clone(), b.clone(), b]).unwrap().is_zero());
    }

    #[test]
    fn sum_of_point_evaluations() {
        // θ = ev_0 + ev_1 on Q[x]/(x^2 − x): Θ_2(b, c) = b(0)c(1) + b(1)c(0)
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(0), s(-1), s(1)]).unwrap());
        let theta = TraceMap::new(alg.clone(), 2, vec![s(2), s(1)]).unwrap();
        let (b, c) = (vec![s(3), s(4)], vec![s(-1), s(2)]);
        let at = |v: &Vec<Scalar>, x: i64| &v[0] + &(&v[1] * &s(x));
        let expected = &(&at(&b, 0) * &at(&c, 1)) + &(&at(&b, 1) * &at(&c, 0));
        assert_eq!(theta_k_from_trace(&theta, &[b, c]), expected);
        assert!(is_degree_d_trace(&theta).holds);
        let base = Arc::new(FiniteAlgebra::base(q));
        let ev0 = AlgebraMorphism::from_images(alg.clone(), base.clone(), &[vec![s(1)], vec![s(0)]]).unwrap();
        let ev1 = AlgebraMorphism::from_images(alg.clone(), base, &[vec![s(1)], vec![s(1)]]).unwrap();
        assert_eq!(norm_from_trace(&theta).unwrap(), law_from_homs(&[ev0, ev1]).unwrap());
    }

    #[test]
    fn failures_carry_witnesses() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &[s(0), s(0), s(0), s(1)]).unwrap());
        // wrong θ(1)
        let bad = TraceMap::new(alg.clone(), 2, vec![s(3), s(0), s(0)]).unwrap();
        let check = is_degree_d_trace(&bad);
        assert!(!check.holds && check.witness.is_none());
        // 1·ev_0 + θ'' with θ''(x^2) ≠ 0 claimed as degree 1
        let bad = TraceMap::new(alg.clone(), 1, vec![s(1), s(0), s(1)]).unwrap();
        let check = is_degree_d_trace(&bad);
        // first failing multiset in ascending-lex order: Θ_2(x^2, x^2) = θ(x^2)^2 − θ(x^4) = 1
        assert_eq!(check.witness, Some(vec![2, 2]));
        assert_eq!(check.value, Some(s(1)));
        assert!(matches!(norm_from_trace(&bad), Err(Error::NotATrace { degree: 1, .. })));
        let f2 = Ring::PrimeField(2);
        let pt = Arc::new(FiniteAlgebra::base(f2));
        let t = TraceMap::new(pt, 2, vec![f2.zero()]).unwrap();
        assert_eq!(norm_from_trace(&t), Err(Error::Characteristic { factorial: 2, characteristic: 2 }));
    }
}
