//! JSON forms of rings, scalars and finite algebras.

use serde::{Deserialize, Serialize};

use super::finite::FiniteAlgebra;
use super::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl RingJson {
    pub fn from_ring(ring: Ring) -> Self {
        match ring {
            Ring::Rationals => RingJson { kind: "Q".into(), p: None },
            Ring::PrimeField(p) => RingJson { kind: "Fp".into(), p: Some(p) },
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        match (self.kind.as_str(), self.p) {
            ("Q", None) => Ok(Ring::Rationals),
            ("Fp", Some(p)) => Ring::prime_field(p),
            _ => Err(Error::Malformed(format!("unknown ring {:?}", self.kind))),
        }
    }
}

/// A scalar as it appears in JSON: an integer or a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Str(String),
}

impl ScalarJson {
    /// Algebra-file style: rationals as strings, residues as integers.
    pub fn from_scalar(s: &Scalar) -> Self {
        match s {
            Scalar::Q(_) => ScalarJson::Str(s.to_string()),
            Scalar::Fp { value, .. } => ScalarJson::Int(*value as i64),
        }
    }

    pub fn to_scalar(&self, ring: Ring) -> Result<Scalar> {
        match self {
            ScalarJson::Int(n) => Ok(ring.from_i64(*n)),
            ScalarJson::Str(s) => ring.parse_scalar(s),
        }
    }
}

pub fn scalars_from_json(ring: Ring, v: &[ScalarJson]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| s.to_scalar(ring)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub ring: RingJson,
    pub rank: usize,
    pub basis: Vec<String>,
    pub one: Vec<ScalarJson>,
    pub mul: Vec<Vec<Vec<ScalarJson>>>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraJson {
            ring: RingJson::from_ring(a.ring()),
            rank: a.rank(),
            basis: a.basis_names().to_vec(),
            one: a.one().iter().map(ScalarJson::from_scalar).collect(),
            mul: a
                .structure_constants()
                .iter()
                .map(|r| r.iter().map(|c| c.iter().map(ScalarJson::from_scalar).collect()).collect())
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        let ring = self.ring.to_ring()?;
        if self.basis.len() != self.rank {
            return Err(Error::Malformed(format!("rank {} but {} basis names", self.rank, self.basis.len())));
        }
        let one = scalars_from_json(ring, &self.one)?;
        let mul = self
            .mul
            .iter()
            .map(|r| r.iter().map(|c| scalars_from_json(ring, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(ring, self.basis.clone(), one, mul)
    }
}

pub fn algebra_to_string(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from_algebra(a)).expect("serializable")
}

pub fn algebra_from_str(s: &str) -> Result<FiniteAlgebra> {
    let j: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    j.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_unknown_fields() {
        let f5 = Ring::PrimeField(5);
        let a = FiniteAlgebra::univariate_quotient(f5, "x", &[f5.from_i64(2), f5.zero(), f5.one()]).unwrap();
        let s = algebra_to_string(&a);
        assert_eq!(algebra_from_str(&s).unwrap(), a);
        let bad = s.replacen("\"rank\"", "\"extra\": 1, \"rank\"", 1);
        assert!(algebra_from_str(&bad).is_err());
    }

    #[test]
    fn rational_scalars_are_strings() {
        let q = Ring::Rationals;
        let a = FiniteAlgebra::univariate_quotient(q, "x", &[q.parse_scalar("-1/2").unwrap(), q.zero(), q.one()]).unwrap();
        let s = algebra_to_string(&a);
        assert!(s.contains("\"1/2\""));
        assert!(s.contains("\"kind\": \"Q\""));
    }
}
