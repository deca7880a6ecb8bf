use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::basis::{gamma_basis, MultiIndex};
use crate::algebra::json::{RingJson, ScalarJson};
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// An element of `Γ^d` of a free module of rank `n`, as a sparse combination
/// of divided monomials `γ^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaElement {
    ring: Ring,
    rank: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl GammaElement {
    pub fn zero(ring: Ring, rank: usize, degree: usize) -> Self {
        GammaElement { ring, rank, degree, terms: BTreeMap::new() }
    }

    /// The unit `γ^0 = 1` of `Γ^0 ≅ A`.
    pub fn unit(ring: Ring, rank: usize) -> Self {
        Self::monomial(ring, MultiIndex(vec![0; rank]), ring.one())
    }

    pub fn monomial(ring: Ring, alpha: MultiIndex, coeff: Scalar) -> Self {
        let mut g = Self::zero(ring, alpha.len(), alpha.weight());
        g.add_term(alpha, coeff);
        g
    }

    /// Build from terms, validating index length and weight.
    pub fn from_terms(
        ring: Ring,
        rank: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self> {
        let mut g = Self::zero(ring, rank, degree);
        for (alpha, c) in terms {
            if alpha.len() != rank || alpha.weight() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "multi-index ({alpha}) does not have length {rank} and weight {degree}"
                )));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch(format!("coefficient {c} is not in {ring}")));
            }
            g.add_term(alpha, c);
        }
        Ok(g)
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub(crate) fn check_compatible(&self, other: &GammaElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch(format!("rank {} vs {}", self.rank, other.rank)));
        }
        Ok(())
    }

    pub fn add(&self, other: &GammaElement) -> Result<GammaElement> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> GammaElement {
        let mut out = Self::zero(self.ring, self.rank, self.degree);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x * c);
        }
        out
    }

    /// Coordinates on the ascending-lex basis of `Γ^d`.
    pub fn to_dense(&self) -> Vec<Scalar> {
        gamma_basis(self.rank, self.degree).iter().map(|a| self.coeff(a)).collect()
    }

    pub fn from_dense(ring: Ring, rank: usize, degree: usize, coords: &[Scalar]) -> Result<Self> {
        let basis = gamma_basis(rank, degree);
        if basis.len() != coords.len() {
            return Err(Error::DimensionMismatch(format!(
                "Γ^{degree} of rank {rank} has dimension {}, got {} coordinates",
                basis.len(),
                coords.len()
            )));
        }
        Self::from_terms(ring, rank, degree, basis.into_iter().zip(coords.iter().cloned()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&GammaJsonOut(self)).expect("serialisable")
    }

    pub fn from_json_str(ring: Ring, s: &str) -> Result<Self> {
        let raw: GammaJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        raw.into_element(ring)
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            let (sep, abs) = match (i, c.is_negative()) {
                (0, true) => ("-", -c),
                (0, false) => ("", c.clone()),
                (_, true) => (" - ", -c),
                (_, false) => (" + ", c.clone()),
            };
            write!(f, "{sep}{abs}*γ^({a})")?;
        }
        Ok(())
    }
}

/// Input form of a [`GammaElement`]. Coefficients may be strings or integers.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaJson {
    pub degree: usize,
    pub rank: usize,
    #[serde(default)]
    pub ring: Option<RingJson>,
    pub terms: BTreeMap<String, ScalarJson>,
}

impl GammaJson {
    /// Convert, using the embedded ring when present and `default_ring`
    /// otherwise.
    pub fn into_element(self, default_ring: Ring) -> Result<GammaElement> {
        let ring = match &self.ring {
            Some(r) => r.to_ring()?,
            None => default_ring,
        };
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| Ok((k.parse::<MultiIndex>()?, v.to_scalar(ring)?)))
            .collect::<Result<Vec<_>>>()?;
        GammaElement::from_terms(ring, self.rank, self.degree, terms)
    }
}

struct GammaJsonOut<'a>(&'a GammaElement);

struct OrderedTerms<'a>(&'a BTreeMap<MultiIndex, Scalar>);

impl Serialize for OrderedTerms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (a, c) in self.0 {
            map.serialize_entry(&a.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl Serialize for GammaJsonOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("degree", &self.0.degree)?;
        map.serialize_entry("rank", &self.0.rank)?;
        map.serialize_entry("ring", &RingJson::from_ring(self.0.ring))?;
        map.serialize_entry("terms", &OrderedTerms(&self.0.terms))?;
        map.end()
    }
}

/// Serialise a coefficient map keyed by multi-indices, in canonical order,
/// with string scalars.
pub fn serialize_index_map<S: Serializer>(
    terms: &BTreeMap<MultiIndex, Scalar>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    OrderedTerms(terms).serialize(s)
}

/// Parse a `{"α-key": scalar}` map.
pub fn parse_index_map(ring: Ring, raw: &BTreeMap<String, ScalarJson>) -> Result<BTreeMap<MultiIndex, Scalar>> {
    raw.iter().map(|(k, v)| Ok((k.parse::<MultiIndex>()?, v.to_scalar(ring)?))).collect()
}

/// Deserialise helper for callers that want the raw map.
pub fn deserialize_raw_map<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<String, ScalarJson>, D::Error> {
    let m = BTreeMap::<String, ScalarJson>::deserialize(d)?;
    for k in m.keys() {
        k.parse::<MultiIndex>().map_err(D::Error::custom)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_in_canonical_order() {
        let q = Ring::Rationals;
        let g = GammaElement::from_terms(
            q,
            2,
            11,
            vec![
                (MultiIndex(vec![10, 1]), q.parse_scalar("1/2").unwrap()),
                (MultiIndex(vec![2, 9]), q.from_i64(-3)),
            ],
        )
        .unwrap();
        let s = g.to_json_string();
        assert!(s.find("\"2,9\"").unwrap() < s.find("\"10,1\"").unwrap());
        assert!(s.contains("\"1/2\""));
        assert_eq!(GammaElement::from_json_str(q, &s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_weight_and_unknown_fields() {
        let q = Ring::Rationals;
        assert!(GammaElement::from_json_str(q, r#"{"degree":2,"rank":2,"terms":{"1,0":"1"}}"#).is_err());
        assert!(GammaElement::from_json_str(q, r#"{"degree":1,"rank":2,"terms":{},"x":1}"#).is_err());
        let g = GammaElement::from_json_str(q, r#"{"degree":1,"rank":2,"terms":{"1,0":"1","0,1":2}}"#).unwrap();
        assert_eq!(g.to_dense(), vec![q.from_i64(2), q.one()]);
    }

    #[test]
    fn cancellation_drops_terms() {
        let q = Ring::Rationals;
        let a = GammaElement::monomial(q, MultiIndex(vec![1, 1]), q.one());
        let b = a.scale(&q.from_i64(-1));
        assert!(a.add(&b).unwrap().is_zero());
    }
}
