//! Coordinate algebras of ambient spaces and their generators.

use std::fmt;
use std::sync::Arc;

use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// The coordinate algebra of an ambient space: finite-dimensional, or a
/// polynomial algebra `k[x_1..x_m]`.
///
/// Elements are written as polynomials in the generators. For a finite
/// algebra whose basis labels are monomials (`1`, `x`, `x^2*y`, …) the
/// generators are the variables; otherwise they are the basis elements.
#[derive(Clone, Debug)]
pub enum Ambient {
    Finite { alg: Arc<FiniteAlgebra>, gens: Vec<String>, monomials: Vec<Vec<u32>> },
    Polynomial { ring: Ring, vars: Vec<String> },
}

impl Ambient {
    pub fn finite(alg: Arc<FiniteAlgebra>) -> Self {
        let parsed: Option<Vec<Vec<(String, u32)>>> = alg.basis_names().iter().map(|n| parse_monomial(n)).collect();
        if let Some(parsed) = parsed {
            let mut gens: Vec<String> = Vec::new();
            for (v, _) in parsed.iter().flatten() {
                if !gens.contains(v) {
                    gens.push(v.clone());
                }
            }
            let monomials: Vec<Vec<u32>> = parsed
                .iter()
                .map(|m| {
                    let mut e = vec![0; gens.len()];
                    for (v, k) in m {
                        e[gens.iter().position(|g| g == v).expect("collected")] += k;
                    }
                    e
                })
                .collect();
            let distinct = {
                let mut s = monomials.clone();
                s.sort();
                s.dedup();
                s.len() == monomials.len()
            };
            let has_vars = (0..gens.len()).all(|j| {
                monomials.iter().any(|m| m.iter().enumerate().all(|(k, &e)| e == u32::from(k == j)))
            });
            if distinct && has_vars {
                return Ambient::Finite { alg, gens, monomials };
            }
        }
        let n = alg.rank();
        let gens = alg.basis_names().to_vec();
        let monomials = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        Ambient::Finite { alg, gens, monomials }
    }

    pub fn polynomial(ring: Ring, vars: &[&str]) -> Self {
        Ambient::Polynomial { ring, vars: vars.iter().map(|s| s.to_string()).collect() }
    }

    /// Parse `poly:Q[x,y]` or `poly:F5[t]`.
    pub fn parse_descriptor(s: &str) -> Result<Self> {
        let bad = || Error::Malformed(format!("bad ambient descriptor {s:?}"));
        let rest = s.trim().strip_prefix("poly:").ok_or_else(bad)?;
        let (ring, vars) = rest.split_once('[').ok_or_else(bad)?;
        let vars = vars.strip_suffix(']').ok_or_else(bad)?;
        let ring = match ring.trim() {
            "Q" => Ring::Rationals,
            r => Ring::prime_field(r.strip_prefix('F').ok_or_else(bad)?.parse().map_err(|_| bad())?)?,
        };
        let vars: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
        if vars.iter().any(|v| !is_identifier(v)) {
            return Err(bad());
        }
        Ok(Ambient::polynomial(ring, &vars))
    }

    pub fn ring(&self) -> Ring {
        match self {
            Ambient::Finite { alg, .. } => alg.ring(),
            Ambient::Polynomial { ring, .. } => *ring,
        }
    }

    pub fn generators(&self) -> &[String] {
        match self {
            Ambient::Finite { gens, .. } => gens,
            Ambient::Polynomial { vars, .. } => vars,
        }
    }

    pub fn ngens(&self) -> usize {
        self.generators().len()
    }

    pub fn algebra(&self) -> Option<&Arc<FiniteAlgebra>> {
        match self {
            Ambient::Finite { alg, .. } => Some(alg),
            Ambient::Polynomial { .. } => None,
        }
    }

    /// Generators of a finite ambient as coordinate vectors.
    pub fn generator_vectors(&self) -> Option<Vec<Vec<Scalar>>> {
        let Ambient::Finite { alg, monomials, gens } = self else {
            return None;
        };
        Some(
            (0..gens.len())
                .map(|j| {
                    let i = monomials
                        .iter()
                        .position(|m| m.iter().enumerate().all(|(k, &e)| e == u32::from(k == j)))
                        .expect("every generator is a basis element");
                    alg.basis_vector(i)
                })
                .collect(),
        )
    }

    /// A coordinate vector of a finite ambient as a polynomial in generators.
    pub fn vector_to_poly(&self, v: &[Scalar]) -> Result<MultiPoly> {
        match self {
            Ambient::Finite { alg, monomials, gens } => {
                if v.len() != alg.rank() {
                    return Err(Error::DimensionMismatch("element length differs from the ambient rank".into()));
                }
                Ok(MultiPoly::from_terms(alg.ring(), gens.len(), monomials.iter().cloned().zip(v.iter().cloned())))
            }
            Ambient::Polynomial { .. } => Err(Error::AmbientMismatch("polynomial ambients have no coordinates".into())),
        }
    }

    /// Structural equality (same algebra, or same ring and variables).
    pub fn same_as(&self, other: &Ambient) -> bool {
        match (self, other) {
            (Ambient::Finite { alg: a, .. }, Ambient::Finite { alg: b, .. }) => a.same_structure(b),
            (Ambient::Polynomial { ring: r1, vars: v1 }, Ambient::Polynomial { ring: r2, vars: v2 }) => {
                r1 == r2 && v1 == v2
            }
            _ => false,
        }
    }

    pub fn check_same(&self, other: &Ambient) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Finite { alg, .. } => write!(f, "{}-algebra of rank {}", alg.ring(), alg.rank()),
            Ambient::Polynomial { ring, vars } => write!(f, "poly:{}[{}]", ring, vars.join(",")),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `x^2*y` → `[(x,2),(y,1)]`; `1` → `[]`. `None` if not a monomial label.
pub fn parse_monomial(s: &str) -> Option<Vec<(String, u32)>> {
    let mut out: Vec<(String, u32)> = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        if factor == "1" {
            continue;
        }
        let (v, k) = match factor.split_once('^') {
            Some((v, k)) => (v, k.parse::<u32>().ok()?),
            None => (factor, 1),
        };
        if !is_identifier(v) || k == 0 {
            return None;
        }
        match out.iter_mut().find(|(w, _)| w == v) {
            Some(entry) => entry.1 += k,
            None => out.push((v.to_string(), k)),
        }
    }
    Some(out)
}

/// `Π g_j^{e_j}` in `C`.
pub fn monomial_image(c: &FiniteAlgebra, gens: &[Vec<Scalar>], exps: &[u32]) -> Vec<Scalar> {
    let mut acc = c.one().to_vec();
    for (g, &e) in gens.iter().zip(exps) {
        if e > 0 {
            acc = c.mul_vec(&acc, &c.pow_vec(g, e));
        }
    }
    acc
}

/// Image in `C` of a polynomial in the generators, given generator images.
pub fn poly_image(c: &FiniteAlgebra, gens: &[Vec<Scalar>], f: &MultiPoly) -> Vec<Scalar> {
    let mut acc = c.zero_vector();
    for (e, coeff) in f.terms() {
        let m = monomial_image(c, gens, e);
        for (a, x) in acc.iter_mut().zip(&m) {
            *a = &*a + &(x * coeff);
        }
    }
    acc
}

/// Image in `C ⊗ T` of a polynomial whose first `ngens` variables are
/// generators and whose remaining variables are parameters.
pub fn poly_image_symbolic(c: &FiniteAlgebra, gens: &[Vec<Scalar>], f: &MultiPoly, ngens: usize) -> Vec<MultiPoly> {
    let nparams = f.nvars() - ngens;
    let ring = c.ring();
    let zero = MultiPoly::zero(ring, nparams);
    let mut acc = vec![zero.clone(); c.rank()];
    for (e, coeff) in f.terms() {
        let m = monomial_image(c, gens, &e[..ngens]);
        let param = MultiPoly::monomial(coeff.clone(), e[ngens..].to_vec());
        for (a, x) in acc.iter_mut().zip(&m) {
            if !x.is_zero() {
                *a = a.add_ref(&param.scale(x));
            }
        }
    }
    acc
}

/// `k[x_1..x_m]/(g_1(x_1), …, g_m(x_m))` for monic `g_j` (ascending
/// coefficients), with monomial basis `x_1^{a_1}*…`, `a_j < deg g_j`, in
/// mixed-radix order.
pub fn univariate_tensor_quotient(ring: Ring, vars: &[String], polys: &[Vec<Scalar>]) -> Result<FiniteAlgebra> {
    let degs: Vec<usize> = polys.iter().map(|p| p.len() - 1).collect();
    if degs.contains(&0) {
        return Err(Error::DegenerateAlgebra("a defining polynomial is constant".into()));
    }
    let mut exps: Vec<Vec<u32>> = vec![vec![]];
    for &d in &degs {
        exps = exps.into_iter().flat_map(|e| (0..d as u32).map(move |k| {
            let mut e = e.clone();
            e.push(k);
            e
        })).collect();
    }
    let index = |e: &[u32]| -> usize { e.iter().zip(&degs).fold(0, |acc, (&k, &d)| acc * d + k as usize) };
    // reductions of x_j^k for k < 2 deg g_j
    let reductions: Vec<Vec<Vec<Scalar>>> = polys
        .iter()
        .zip(&degs)
        .map(|(g, &d)| {
            let mut out = Vec::with_capacity(2 * d);
            let mut cur = vec![ring.zero(); d];
            cur[0] = ring.one();
            for _ in 0..2 * d {
                out.push(cur.clone());
                // multiply by x and reduce with the monic g
                let top = cur[d - 1].clone();
                let mut next = vec![ring.zero(); d];
                for i in (1..d).rev() {
                    next[i] = cur[i - 1].clone();
                }
                for i in 0..d {
                    next[i] = &next[i] - &(&top * &g[i]);
                }
                cur = next;
            }
            out
        })
        .collect();
    let n = exps.len();
    let mut mul = vec![vec![vec![ring.zero(); n]; n]; n];
    for (i, a) in exps.iter().enumerate() {
        for (j, b) in exps.iter().enumerate() {
            let mut terms: Vec<(Vec<u32>, Scalar)> = vec![(vec![], ring.one())];
            for (v, (&ea, &eb)) in a.iter().zip(b).enumerate() {
                let red = &reductions[v][(ea + eb) as usize];
                let mut next = Vec::new();
                for (e, c) in &terms {
                    for (k, r) in red.iter().enumerate() {
                        if !r.is_zero() {
                            let mut e = e.clone();
                            e.push(k as u32);
                            next.push((e, c * r));
                        }
                    }
                }
                terms = next;
            }
            for (e, c) in terms {
                let k = index(&e);
                mul[i][j][k] = &mul[i][j][k] + &c;
            }
        }
    }
    let basis = exps
        .iter()
        .map(|e| {
            let f: Vec<(&str, u32)> = vars.iter().map(String::as_str).zip(e.iter().copied()).collect();
            crate::algebra::finite::monomial_name(&f)
        })
        .collect();
    let mut one = vec![ring.zero(); n];
    one[0] = ring.one();
    FiniteAlgebra::new(ring, basis, one, mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_labels() {
        assert_eq!(parse_monomial("1"), Some(vec![]));
        assert_eq!(parse_monomial("x^2*y"), Some(vec![("x".into(), 2), ("y".into(), 1)]));
        assert_eq!(parse_monomial("x*1"), Some(vec![("x".into(), 1)]));
        assert_eq!(parse_monomial("1#0"), None);
        let q = Ring::Rationals;
        let alg = Arc::new(FiniteAlgebra::truncated_polynomial(q, &["x", "y"], 2));
        let amb = Ambient::finite(alg);
        assert_eq!(amb.generators(), &["x".to_string(), "y".to_string()]);
        let b = FiniteAlgebra::base(q);
        let prod = Arc::new(FiniteAlgebra::product(&[&b, &b]).unwrap());
        assert_eq!(Ambient::finite(prod).ngens(), 2);
    }

    #[test]
    fn descriptor() {
        let a = Ambient::parse_descriptor("poly:F5[x, y]").unwrap();
        assert_eq!(a.ring(), Ring::PrimeField(5));
        assert_eq!(a.to_string(), "poly:F5[x,y]");
        assert!(Ambient::parse_descriptor("poly:F4[x]").is_err());
        assert!(Ambient::parse_descriptor("Q[x]").is_err());
    }

    #[test]
    fn tensor_quotient_matches_univariate() {
        let q = Ring::Rationals;
        let s = |n| q.from_i64(n);
        let g = vec![s(0), s(0), s(-1), s(1)];
        let a = univariate_tensor_quotient(q, &["x".into()], std::slice::from_ref(&g)).unwrap();
        let b = FiniteAlgebra::univariate_quotient(q, "x", &g).unwrap();
        assert!(a.same_structure(&b));
        assert_eq!(a.basis_names(), b.basis_names());
        let two = univariate_tensor_quotient(q, &["x".into(), "y".into()], &[vec![s(0), s(0), s(1)], vec![s(-2), s(0), s(1)]])
            .unwrap();
        assert_eq!(two.basis_names(), &["1", "y", "x", "x*y"]);
    }
}
