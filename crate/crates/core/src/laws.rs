//! Homogeneous polynomial laws `M → A` of degree `d`, stored as their linear
//! coefficient map `Ψ: Γ^d(M) → A` on the divided-monomial basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::json::{AlgebraJson, RingJson, ScalarJson};
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::{determinant, RingElem};
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::gamma::basis::{basis_position, gamma_basis, MultiIndex};
use crate::gamma::element::{parse_index_map, serialize_index_map, GammaElement};
use crate::gamma::product::{gamma_of_vector, GammaMultTable};

/// Source of a law: a finite algebra, or a bare free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Algebra(Arc<FiniteAlgebra>),
    Module { ring: Ring, rank: usize },
}

impl Carrier {
    pub fn ring(&self) -> Ring {
        match self {
            Carrier::Algebra(a) => a.ring(),
            Carrier::Module { ring, .. } => *ring,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Carrier::Algebra(a) => a.rank(),
            Carrier::Module { rank, .. } => *rank,
        }
    }
}

/// A degree-`d` homogeneous polynomial law, `n = Ψ ∘ γ^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyLaw {
    degree: usize,
    carrier: Carrier,
    psi: Vec<Scalar>,
}

impl PolyLaw {
    /// `psi` is dense on the ascending-lex basis of `Γ^d`.
    pub fn new(carrier: Carrier, degree: usize, psi: Vec<Scalar>) -> Result<Self> {
        if let Carrier::Algebra(a) = &carrier {
            if a.is_zero_ring() && degree > 0 {
                return Err(Error::DegenerateAlgebra(format!("degree-{degree} law on the zero algebra")));
            }
        }
        let dim = gamma_basis(carrier.rank(), degree).len().max(usize::from(degree == 0));
        if psi.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "Γ^{degree} of rank {} has dimension {dim}, psi has {} entries",
                carrier.rank(),
                psi.len()
            )));
        }
        if psi.iter().any(|c| c.ring() != carrier.ring()) {
            return Err(Error::RingMismatch("psi coefficients outside the carrier's ring".into()));
        }
        Ok(PolyLaw { degree, carrier, psi })
    }

    pub fn from_map(carrier: Carrier, degree: usize, map: &BTreeMap<MultiIndex, Scalar>) -> Result<Self> {
        let basis = gamma_basis(carrier.rank(), degree);
        let mut psi = vec![carrier.ring().zero(); basis.len().max(usize::from(degree == 0))];
        for (a, c) in map {
            let pos = basis_position(&basis, a).ok_or_else(|| {
                Error::DimensionMismatch(format!("({a}) is not a weight-{degree} index of length {}", carrier.rank()))
            })?;
            psi[pos] = c.clone();
        }
        PolyLaw::new(carrier, degree, psi)
    }

    /// The constant law `1` of degree 0.
    pub fn unit(carrier: Carrier) -> Self {
        let ring = carrier.ring();
        PolyLaw { degree: 0, carrier, psi: vec![ring.one()] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn ring(&self) -> Ring {
        self.carrier.ring()
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank()
    }

    pub fn algebra(&self) -> Result<&Arc<FiniteAlgebra>> {
        match &self.carrier {
            Carrier::Algebra(a) => Ok(a),
            Carrier::Module { .. } => Err(Error::NotAlgebraCarrier),
        }
    }

    pub fn psi(&self) -> &[Scalar] {
        &self.psi
    }

    pub fn basis(&self) -> Vec<MultiIndex> {
        if self.rank() == 0 {
            return vec![MultiIndex(vec![])];
        }
        gamma_basis(self.rank(), self.degree)
    }

    pub fn psi_at(&self, alpha: &MultiIndex) -> Scalar {
        basis_position(&self.basis(), alpha).map(|p| self.psi[p].clone()).unwrap_or_else(|| self.ring().zero())
    }

    pub fn psi_map(&self) -> BTreeMap<MultiIndex, Scalar> {
        self.basis().into_iter().zip(self.psi.iter().cloned()).filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> PolyLaw {
        PolyLaw { degree: self.degree, carrier: self.carrier.clone(), psi: self.psi.iter().map(|x| x * c).collect() }
    }

    /// `Ψ(u)` for `u ∈ Γ^d`.
    pub fn apply(&self, u: &GammaElement) -> Result<Scalar> {
        if u.degree() != self.degree || u.rank() != self.rank() {
            return Err(Error::DegreeMismatch(format!(
                "law on Γ^{} of rank {} applied to Γ^{} of rank {}",
                self.degree,
                self.rank(),
                u.degree(),
                u.rank()
            )));
        }
        let basis = self.basis();
        let mut acc = self.ring().zero();
        for (a, c) in u.terms() {
            let p = basis_position(&basis, a).expect("weight checked");
            acc = &acc + &(c * &self.psi[p]);
        }
        Ok(acc)
    }

    /// `n(x)` for a base-ring point `x`.
    pub fn value(&self, x: &[Scalar]) -> Scalar {
        self.evaluate_generic(x, &self.ring().zero())
    }

    /// `n(x)` for `x ∈ M ⊗ T`: `Σ_α Ψ(γ^α) Π x_i^{α_i}`.
    pub fn evaluate_generic<T: RingElem>(&self, x: &[T], zero: &T) -> T {
        assert_eq!(x.len(), self.rank(), "argument length must equal the carrier rank");
        let one = zero.one_like();
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(x.len());
        for xi in x {
            let mut p = vec![one.clone()];
            for k in 1..=self.degree {
                let next = p[k - 1].mul_ref(xi);
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = zero.clone();
        for (a, c) in self.basis().iter().zip(&self.psi) {
            if c.is_zero() {
                continue;
            }
            let mut term = one.scale(c);
            for (i, &e) in a.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul_ref(&powers[i][e as usize]);
                }
            }
            acc = acc.add_ref(&term);
        }
        acc
    }

    /// Evaluation over `A[t_1..t_k]`.
    pub fn evaluate(&self, x: &[MultiPoly]) -> Result<MultiPoly> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.rank(), x.len())));
        }
        let nvars = x.first().map(|p| p.nvars()).unwrap_or(0);
        if x.iter().any(|p| p.nvars() != nvars || p.ring() != self.ring()) {
            return Err(Error::DimensionMismatch("coordinates live in different polynomial rings".into()));
        }
        Ok(self.evaluate_generic(x, &MultiPoly::zero(self.ring(), nvars)))
    }

    /// Generic point `Σ t_i b_i` over `A[t_1..t_n]`.
    pub fn generic_point(ring: Ring, rank: usize) -> Vec<MultiPoly> {
        (0..rank).map(|i| MultiPoly::var(ring, rank, i)).collect()
    }

    /// `Ψ(u·v) = Ψ(u)Ψ(v)` on all basis pairs of `Γ^d(B)` and `Ψ(γ^d(1)) = 1`.
    pub fn is_multiplicative(&self) -> bool {
        self.check_multiplicative().is_ok()
    }

    pub fn check_multiplicative(&self) -> Result<()> {
        self.check_multiplicative_with(None)
    }

    /// As [`check_multiplicative`](Self::check_multiplicative), reusing a
    /// precomputed multiplication table of `Γ^d(B)`.
    pub fn check_multiplicative_with(&self, table: Option<&GammaMultTable>) -> Result<()> {
        let alg = self.algebra()?;
        let ring = self.ring();
        let unit = gamma_of_vector(ring, alg.one(), self.degree);
        let u = self.apply(&unit)?;
        if !u.is_one() {
            return Err(Error::NotMultiplicative(format!("Ψ(γ^{}(1)) = {u}", self.degree)));
        }
        if self.degree == 0 {
            return Ok(());
        }
        let owned;
        let table = match table {
            Some(t) => t,
            None => {
                owned = GammaMultTable::new(alg, self.degree);
                &owned
            }
        };
        for p in 0..table.basis.len() {
            for q in p..table.basis.len() {
                let mut lhs = ring.zero();
                for (k, c) in &table.products[p][q] {
                    lhs = &lhs + &(c * &self.psi[*k]);
                }
                if lhs != &self.psi[p] * &self.psi[q] {
                    return Err(Error::NotMultiplicative(format!(
                        "Ψ(γ^({})·γ^({})) = {lhs} but Ψ(γ^({}))Ψ(γ^({})) = {}",
                        table.basis[p],
                        table.basis[q],
                        table.basis[p],
                        table.basis[q],
                        &self.psi[p] * &self.psi[q]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Precompose with a linear map `g: B' → B` given by its matrix
    /// (rank B × rank B'), producing `n ∘ g` on `carrier`.
    pub fn pullback_linear(&self, carrier: Carrier, matrix: &[Vec<Scalar>]) -> Result<PolyLaw> {
        let ring = self.ring();
        let n = carrier.rank();
        if matrix.len() != self.rank() || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("pullback matrix has the wrong shape".into()));
        }
        let degree = self.degree;
        law_from_evaluator(carrier, degree, |t| {
            let zero = MultiPoly::zero(ring, t.first().map(|p| p.nvars()).unwrap_or(0));
            let image: Vec<MultiPoly> = matrix
                .iter()
                .map(|row| {
                    let mut acc = zero.clone();
                    for (c, x) in row.iter().zip(t) {
                        if !c.is_zero() {
                            acc = acc.add_ref(&x.scale(c));
                        }
                    }
                    acc
                })
                .collect();
            self.evaluate_generic(&image, &zero)
        })
    }

    /// `n ∘ f` for an algebra morphism `f: B' → B`.
    pub fn pullback(&self, f: &AlgebraMorphism) -> Result<PolyLaw> {
        let alg = self.algebra()?;
        if !f.target().same_structure(alg) {
            return Err(Error::AmbientMismatch("morphism target is not the law's carrier".into()));
        }
        if f.source().is_zero_ring() {
            return if self.degree == 0 {
                Ok(PolyLaw::unit(Carrier::Algebra(f.source().clone())))
            } else {
                Err(Error::DegenerateAlgebra("pullback of a positive-degree law to the zero algebra".into()))
            };
        }
        self.pullback_linear(Carrier::Algebra(f.source().clone()), f.matrix())
    }

    /// Pointwise product `n_1 n_2`, of degree `d_1 + d_2`.
    pub fn product(&self, other: &PolyLaw) -> Result<PolyLaw> {
        if self.carrier != other.carrier {
            return Err(Error::AmbientMismatch("laws on different carriers".into()));
        }
        let ring = self.ring();
        law_from_evaluator(self.carrier.clone(), self.degree + other.degree, |t| {
            let zero = MultiPoly::zero(ring, t.first().map(|p| p.nvars()).unwrap_or(0));
            self.evaluate_generic(t, &zero).mul_ref(&other.evaluate_generic(t, &zero))
        })
    }

    pub fn to_json_string(&self) -> String {
        let carrier = match &self.carrier {
            Carrier::Algebra(a) => CarrierJson::Inline(AlgebraJson::from_algebra(a)),
            Carrier::Module { ring, rank } => {
                CarrierJson::Module { module: ModuleJson { ring: RingJson::from_ring(*ring), rank: *rank } }
            }
        };
        let out = PolyLawOut { degree: self.degree, carrier, psi: self.psi_map() };
        serde_json::to_string_pretty(&out).expect("serialisable")
    }
}

/// Extensionalise a black-box law: `Ψ(γ^α)` is the coefficient of `t^α` in
/// `f(Σ t_i b_i)` over `A[t_1..t_n]`.
pub fn law_from_evaluator<F>(carrier: Carrier, degree: usize, f: F) -> Result<PolyLaw>
where
    F: Fn(&[MultiPoly]) -> MultiPoly,
{
    let ring = carrier.ring();
    let n = carrier.rank();
    let generic = PolyLaw::generic_point(ring, n);
    let out = f(&generic);
    if out.nvars() != n {
        return Err(Error::DimensionMismatch(format!("evaluator returned a polynomial in {} variables", out.nvars())));
    }
    if let Some((e, _)) = out.terms().iter().find(|(e, _)| e.iter().sum::<u32>() as usize != degree) {
        let names = MultiPoly::default_names(n);
        let mono = MultiPoly::monomial(ring.one(), e.clone());
        return Err(Error::NotHomogeneous { degree, monomial: mono.display_with(&names) });
    }
    let psi = if n == 0 {
        vec![out.coeff(&[])]
    } else {
        gamma_basis(n, degree).iter().map(|a| out.coeff(&a.0)).collect()
    };
    PolyLaw::new(carrier, degree, psi)
}

/// `x ↦ Π f_i(x)` for homomorphisms `f_i: B → A` (targets of rank 1).
pub fn law_from_homs(homs: &[AlgebraMorphism]) -> Result<PolyLaw> {
    let first = homs.first().ok_or_else(|| Error::Malformed("no homomorphisms given".into()))?;
    let source = first.source().clone();
    for f in homs {
        if !f.source().same_structure(&source) {
            return Err(Error::AmbientMismatch("homomorphisms have different sources".into()));
        }
        if f.target().rank() != 1 || !f.target().one()[0].is_one() {
            return Err(Error::AmbientMismatch("homomorphism target is not the base ring".into()));
        }
    }
    let ring = source.ring();
    law_from_evaluator(Carrier::Algebra(source.clone()), homs.len(), |t| {
        let zero = MultiPoly::zero(ring, t.len());
        homs.iter().fold(zero.one_like(), |acc, f| acc.mul_ref(&f.apply_generic(t, &zero)[0]))
    })
}

/// Finite-flat norm: `x ↦ det(multiplication by x)`, degree = rank.
pub fn determinant_law(alg: &Arc<FiniteAlgebra>) -> Result<PolyLaw> {
    let ring = alg.ring();
    let n = alg.rank();
    law_from_evaluator(Carrier::Algebra(alg.clone()), n, |t| {
        let zero = MultiPoly::zero(ring, t.len());
        let m = alg.mult_matrix_generic(t, &zero);
        determinant(&m, &zero.one_like())
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub ring: RingJson,
    pub rank: usize,
}

/// A carrier in JSON: a reference (path), a bare module, or an inline algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierJson {
    Ref(String),
    Module { module: ModuleJson },
    Inline(AlgebraJson),
}

#[derive(Serialize)]
struct PolyLawOut {
    degree: usize,
    carrier: CarrierJson,
    #[serde(serialize_with = "serialize_index_map")]
    psi: BTreeMap<MultiIndex, Scalar>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyLawJson {
    pub degree: usize,
    pub carrier: CarrierJson,
    pub psi: BTreeMap<String, ScalarJson>,
}

impl PolyLawJson {
    /// Build the law; `resolve` loads referenced algebras.
    pub fn into_law(self, resolve: &dyn Fn(&str) -> Result<FiniteAlgebra>) -> Result<PolyLaw> {
        let carrier = match self.carrier {
            CarrierJson::Ref(path) => Carrier::Algebra(Arc::new(resolve(&path)?)),
            CarrierJson::Module { module } => Carrier::Module { ring: module.ring.to_ring()?, rank: module.rank },
            CarrierJson::Inline(a) => Carrier::Algebra(Arc::new(a.to_algebra()?)),
        };
        let map = parse_index_map(carrier.ring(), &self.psi)?;
        PolyLaw::from_map(carrier, self.degree, &map)
    }
}

/// Parse a law whose carrier must be inline.
pub fn law_from_str(s: &str) -> Result<PolyLaw> {
    let raw: PolyLawJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    raw.into_law(&|p| Err(Error::Malformed(format!("unresolved algebra reference {p:?}"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::Rationals
    }

    fn s(n: i64) -> Scalar {
        q().from_i64(n)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    fn split(n: usize) -> Arc<FiniteAlgebra> {
        let b = FiniteAlgebra::base(q());
        let parts: Vec<&FiniteAlgebra> = (0..n).map(|_| &b).collect();
        Arc::new(FiniteAlgebra::product(&parts).unwrap())
    }

    fn projection(alg: &Arc<FiniteAlgebra>, i: usize) -> AlgebraMorphism {
        let images: Vec<Vec<Scalar>> = (0..alg.rank()).map(|j| vec![s((i == j) as i64)]).collect();
        AlgebraMorphism::from_images(alg.clone(), Arc::new(FiniteAlgebra::base(q())), &images).unwrap()
    }

    #[test]
    fn product_of_projections() {
        let b2 = split(2);
        let law = law_from_homs(&[projection(&b2, 0), projection(&b2, 1)]).unwrap();
        assert_eq!(law.value(&[s(3), s(5)]), s(15));
        let b3 = split(3);
        let law = law_from_homs(&[projection(&b3, 0), projection(&b3, 1), projection(&b3, 2)]).unwrap();
        assert_eq!(law.psi_map(), BTreeMap::from([(mi(&[1, 1, 1]), s(1))]));
        assert!(law.is_multiplicative());
        let one = law.evaluate(&[MultiPoly::var(q(), 1, 0), MultiPoly::var(q(), 1, 0), MultiPoly::var(q(), 1, 0)]).unwrap();
        assert_eq!(one, MultiPoly::monomial(s(1), vec![3]));
    }

    #[test]
    fn determinant_of_split_algebra() {
        let b2 = split(2);
        let law = determinant_law(&b2).unwrap();
        assert_eq!(law.psi(), &[s(0), s(1), s(0)]);
    }

    #[test]
    fn norm_of_quadratic_field() {
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q(), "x", &[s(-2), s(0), s(1)]).unwrap());
        let law = determinant_law(&alg).unwrap();
        let a = MultiPoly::var(q(), 2, 0);
        let b = MultiPoly::var(q(), 2, 1);
        let v = law.evaluate(&[a.clone(), b.clone()]).unwrap();
        let expected = a.mul_ref(&a).sub_ref(&b.mul_ref(&b).scale(&s(2)));
        assert_eq!(v, expected);
        assert!(law.is_multiplicative());
    }

    #[test]
    fn dual_numbers_determinant_is_multiplicative() {
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q(), "x", &[s(0), s(0), s(1)]).unwrap());
        let law = determinant_law(&alg).unwrap();
        assert!(law.is_multiplicative());
        assert!(!law.scale(&s(2)).is_multiplicative());
        assert_eq!(law.value(&[s(3), s(7)]), s(9));
    }

    #[test]
    fn evaluation_at_a_point() {
        // b ↦ b(Q)^2 on Q[x]/(x^2 - 1) with Q: x ↦ 1
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q(), "x", &[s(-1), s(0), s(1)]).unwrap());
        let ev = AlgebraMorphism::from_images(alg.clone(), Arc::new(FiniteAlgebra::base(q())), &[vec![s(1)], vec![s(1)]])
            .unwrap();
        let law = law_from_homs(&[ev.clone(), ev]).unwrap();
        // coefficient of t^α in (t_1 + t_2)^2 carries the multinomial d!/α!
        for a in law.basis() {
            let m = q().factorial(2).checked_div(&q().from_bigint(&a.factorial())).unwrap();
            assert_eq!(law.psi_at(&a), m);
        }
        let theta_two = law_from_evaluator(law.carrier().clone(), 2, |t| {
            let x = t[0].add_ref(&t[1]);
            x.mul_ref(&x)
        })
        .unwrap();
        assert_eq!(theta_two, law);
    }

    #[test]
    fn degree_zero_and_inhomogeneous() {
        let alg = split(2);
        let law = law_from_evaluator(Carrier::Algebra(alg.clone()), 0, |t| MultiPoly::one(q(), t.len())).unwrap();
        assert_eq!(law.psi(), &[s(1)]);
        assert!(law.is_multiplicative());
        let err = law_from_evaluator(Carrier::Algebra(alg), 2, |t| t[0].clone()).unwrap_err();
        assert!(matches!(err, Error::NotHomogeneous { degree: 2, .. }));
    }

    #[test]
    fn module_carrier_is_not_multiplicative() {
        let law = PolyLaw::new(Carrier::Module { ring: q(), rank: 1 }, 1, vec![s(1)]).unwrap();
        assert_eq!(law.check_multiplicative(), Err(Error::NotAlgebraCarrier));
    }

    #[test]
    fn json_round_trip() {
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(q(), "x", &[s(0), s(0), s(1)]).unwrap());
        let law = determinant_law(&alg).unwrap();
        let text = law.to_json_string();
        assert_eq!(law_from_str(&text).unwrap(), law);
        assert!(law_from_str(&text.replacen("\"degree\"", "\"extra\": 1, \"degree\"", 1)).is_err());
    }
}
