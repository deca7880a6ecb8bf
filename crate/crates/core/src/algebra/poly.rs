//! Sparse multivariate polynomials in auxiliary variables `t_1..t_k`.

use std::collections::BTreeMap;
use std::fmt;

use super::ring_elem::RingElem;
use super::scalar::{Ring, Scalar};

/// A polynomial in `nvars` auxiliary variables with exact coefficients.
/// No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(ring: Ring, nvars: usize) -> Self {
        MultiPoly { ring, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        let mut p = MultiPoly::zero(c.ring(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(ring: Ring, nvars: usize) -> Self {
        MultiPoly::constant(ring.one(), nvars)
    }

    /// The variable `t_{i+1}`.
    pub fn var(ring: Ring, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(ring.one(), e)
    }

    pub fn monomial(coeff: Scalar, exps: Vec<u32>) -> Self {
        let nvars = exps.len();
        let mut p = MultiPoly::zero(coeff.ring(), nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_terms(ring: Ring, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = MultiPoly::zero(ring, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, &c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// The constant term, or `None` if any non-constant monomial is present.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) {
        assert_eq!(self.ring, other.ring, "polynomial ring mismatch");
        assert_eq!(self.nvars, other.nvars, "polynomial variable count mismatch");
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every monomial has total degree `d` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Substitute base-ring values for every variable.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.nvars);
        let mut acc = self.ring.zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    m = &m * &v.pow(k);
                }
            }
            acc = &acc + &m;
        }
        acc
    }

    /// Substitute polynomials (all in a common variable set) for the variables.
    pub fn substitute(&self, values: &[MultiPoly]) -> MultiPoly {
        assert_eq!(values.len(), self.nvars);
        let target_vars = values.first().map(|v| v.nvars).unwrap_or(0);
        let mut acc = MultiPoly::zero(self.ring, target_vars);
        for (e, c) in &self.terms {
            let mut m = MultiPoly::constant(c.clone(), target_vars);
            for (v, &k) in values.iter().zip(e) {
                if k > 0 {
                    m = m.mul_ref(&v.pow_u32(k));
                }
            }
            acc = acc.add_ref(&m);
        }
        acc
    }

    /// Re-embed into a larger variable set, placing old variable `i` at `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            (ne, c.clone())
        });
        MultiPoly::from_terms(self.ring, nvars, terms)
    }

    /// Pretty-print with the given variable names, ascending total degree.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Default variable names: `t` for one variable, else `t1..tk`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        if nvars == 1 {
            vec!["t".to_string()]
        } else {
            (1..=nvars).map(|i| format!("t{i}")).collect()
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MultiPoly::default_names(self.nvars)))
    }
}

impl RingElem for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.ring, self.nvars)
    }

    fn one_like(&self) -> Self {
        MultiPoly::one(self.ring, self.nvars)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = MultiPoly::zero(self.ring, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        MultiPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return self.zero_like();
        }
        MultiPoly {
            ring: self.ring,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }
}

/// Univariate polynomial helpers over a field, coefficients ascending.
pub mod univariate {
    use super::*;

    pub fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Scalar]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
        let mut acc = x.ring().zero();
        for c in p.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(p: &[Scalar]) -> Vec<Scalar> {
        let ring = match p.first() {
            Some(c) => c.ring(),
            None => return vec![],
        };
        trim(p.iter().enumerate().skip(1).map(|(i, c)| c * &ring.from_u64(i as u64)).collect())
    }

    /// Remainder of `a` modulo `b` (b nonzero).
    pub fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let db = degree(b).expect("division by zero polynomial");
        let lead_inv = b[db].inv().expect("field coefficients");
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let q = &r[dr] * &lead_inv;
            for i in 0..=db {
                let t = &q * &b[i];
                r[dr - db + i] = &r[dr - db + i] - &t;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while degree(&b).is_some() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        match degree(&a) {
            Some(d) => {
                let inv = a[d].inv().unwrap();
                a.iter().map(|c| c * &inv).collect()
            }
            None => a,
        }
    }

    pub fn mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let ring = a[0].ring();
        let mut out = vec![ring.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        trim(out)
    }

    pub fn to_multipoly(p: &[Scalar], ring: Ring) -> MultiPoly {
        MultiPoly::from_terms(ring, 1, p.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    /// Coefficients (ascending) of a one-variable `MultiPoly`.
    pub fn from_multipoly(p: &MultiPoly) -> Vec<Scalar> {
        assert_eq!(p.nvars(), 1);
        let deg = p.total_degree().unwrap_or(0) as usize;
        trim((0..=deg).map(|i| p.coeff(&[i as u32])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    #[test]
    fn arithmetic_and_display() {
        let r = Ring::Rationals;
        let t1 = MultiPoly::var(r, 2, 0);
        let t2 = MultiPoly::var(r, 2, 1);
        let s = t1.add_ref(&t2);
        let sq = s.mul_ref(&s);
        assert_eq!(sq.to_string(), "t1^2 + 2*t1*t2 + t2^2");
        assert!(sq.is_homogeneous(2));
        assert!(!sq.add_ref(&MultiPoly::one(r, 2)).is_homogeneous(2));
        assert_eq!(sq.eval(&[q(1), q(2)]), q(9));
        assert!(sq.sub_ref(&sq).is_zero());
    }

    #[test]
    fn ascending_univariate_display() {
        let r = Ring::Rationals;
        let t = MultiPoly::var(r, 1, 0);
        let p = t.pow_u32(2).sub_ref(&t.pow_u32(3));
        assert_eq!(p.to_string(), "t^2 - t^3");
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = vec![q(2), q(-3), q(1)];
        let b = vec![q(-3), q(2), q(1)];
        assert_eq!(univariate::gcd(&a, &b), vec![q(-1), q(1)]);
        assert_eq!(univariate::derivative(&a), vec![q(-3), q(2)]);
    }
}
