//! JSON forms of cycles, projective cycles, graded algebras, cocycles and
//! pairs.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::json::{scalars_from_json, AlgebraJson, RingJson, ScalarJson};
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::gamma::element::{parse_index_map, serialize_index_map};
use crate::gamma::basis::MultiIndex;
use crate::laws::{determinant_law, Carrier, PolyLaw};

use super::ambient::Ambient;
use super::chow::{GradedAlgebra, ProjectiveCycle};
use super::cocycle::Cocycle;
use super::cycle::Cycle;
use super::pair::CyclePair;
use super::point::Point;

/// Loads an algebra referenced by a string (a path, for the command line).
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<FiniteAlgebra>;

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Ref(String),
    Inline(AlgebraJson),
}

impl AlgebraRef {
    pub fn load(&self, resolve: Resolver) -> Result<FiniteAlgebra> {
        match self {
            AlgebraRef::Ref(p) => resolve(p),
            AlgebraRef::Inline(a) => a.to_algebra(),
        }
    }
}

/// A coordinate: a constant, or a polynomial in the primitive element.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordJson {
    Scalar(ScalarJson),
    Poly(Vec<ScalarJson>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<Vec<ScalarJson>>,
    pub coords: Vec<CoordJson>,
    pub mult: u32,
}

impl PointJson {
    pub fn to_point(&self, ring: Ring) -> Result<(Point, u32)> {
        let minpoly = match &self.minpoly {
            Some(m) => scalars_from_json(ring, m)?,
            None => vec![ring.zero(), ring.one()],
        };
        let coords = self
            .coords
            .iter()
            .map(|c| match c {
                CoordJson::Scalar(s) => Ok(vec![s.to_scalar(ring)?]),
                CoordJson::Poly(p) => scalars_from_json(ring, p),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Point::new(ring, &minpoly, &coords)?, self.mult))
    }

    pub fn from_point(p: &Point, mult: u32) -> Self {
        let rational = p.is_rational() && p.minpoly()[0].is_zero();
        PointJson {
            minpoly: (!rational).then(|| p.minpoly().iter().map(ScalarJson::from_scalar).collect()),
            coords: p
                .coords()
                .iter()
                .map(|c| {
                    if rational {
                        CoordJson::Scalar(ScalarJson::from_scalar(&c[0]))
                    } else {
                        CoordJson::Poly(c.iter().map(ScalarJson::from_scalar).collect())
                    }
                })
                .collect(),
            mult,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleJson {
    /// `"poly:Q[x,y]"`, an inline algebra, or a reference.
    pub ambient: AlgebraRef,
    pub points: Vec<PointJson>,
}

impl CycleJson {
    pub fn to_cycle(&self, resolve: Resolver) -> Result<Cycle> {
        let ambient = match &self.ambient {
            AlgebraRef::Ref(s) if s.starts_with("poly:") => Ambient::parse_descriptor(s)?,
            other => Ambient::finite(Arc::new(other.load(resolve)?)),
        };
        let ring = ambient.ring();
        let points = self.points.iter().map(|p| p.to_point(ring)).collect::<Result<Vec<_>>>()?;
        Cycle::new(ambient, points)
    }
}

pub fn cycle_from_str(s: &str, resolve: Resolver) -> Result<Cycle> {
    let raw: CycleJson = serde_json::from_str(s).map_err(malformed)?;
    raw.to_cycle(resolve)
}

pub fn cycle_to_json_string(c: &Cycle) -> String {
    let ambient = match c.ambient() {
        Ambient::Finite { alg, .. } => AlgebraRef::Inline(AlgebraJson::from_algebra(alg)),
        a @ Ambient::Polynomial { .. } => AlgebraRef::Ref(a.to_string()),
    };
    let points = c.points().iter().map(|(p, d)| PointJson::from_point(p, *d)).collect();
    serde_json::to_string_pretty(&CycleJson { ambient, points }).expect("serialisable")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedPieceJson {
    pub rank: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedJson {
    pub ring: RingJson,
    pub pieces: Vec<GradedPieceJson>,
    /// Keys `"l,m"`.
    pub mul: BTreeMap<String, Vec<Vec<Vec<ScalarJson>>>>,
}

impl GradedJson {
    pub fn to_graded(&self) -> Result<GradedAlgebra> {
        let ring = self.ring.to_ring()?;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (l, p) in self.pieces.iter().enumerate() {
            if p.basis.len() != p.rank {
                return Err(Error::Malformed(format!("piece {l}: rank {} but {} basis names", p.rank, p.basis.len())));
            }
            pieces.push(p.basis.clone());
        }
        let mut mul = BTreeMap::new();
        for (key, table) in &self.mul {
            let (l, m) = parse_pair(key)?;
            let table = table
                .iter()
                .map(|r| r.iter().map(|v| scalars_from_json(ring, v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            mul.insert((l, m), table);
        }
        GradedAlgebra::new(ring, pieces, mul)
    }

    pub fn from_graded(g: &GradedAlgebra) -> Self {
        GradedJson {
            ring: RingJson::from_ring(g.ring()),
            pieces: (0..=g.top_degree()).map(|l| GradedPieceJson { rank: g.rank(l), basis: g.basis(l).to_vec() }).collect(),
            mul: g
                .tables()
                .iter()
                .map(|(&(l, m), t)| {
                    let t = t.iter().map(|r| r.iter().map(|v| v.iter().map(ScalarJson::from_scalar).collect()).collect()).collect();
                    (format!("{l},{m}"), t)
                })
                .collect(),
        }
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("expected a key \"a,b\", got {key:?}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// A projective cycle: either an explicit graded algebra, or `variables`
/// (with `ring`) for the polynomial ring generated by them.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectiveCycleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<GradedJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub points: Vec<PointJson>,
}

impl ProjectiveCycleJson {
    /// `top` is the highest degree materialised for polynomial rings.
    pub fn to_cycle(&self, top: usize) -> Result<ProjectiveCycle> {
        let graded = match (&self.graded, &self.variables) {
            (Some(g), None) => g.to_graded()?,
            (None, Some(vars)) => {
                let ring = self.ring.as_ref().map(RingJson::to_ring).transpose()?.unwrap_or(Ring::Rationals);
                let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
                GradedAlgebra::polynomial(ring, &vars, top.max(1))?
            }
            _ => return Err(Error::Malformed("give exactly one of \"graded\" and \"variables\"".into())),
        };
        let ring = graded.ring();
        let points = self.points.iter().map(|p| p.to_point(ring)).collect::<Result<Vec<_>>>()?;
        ProjectiveCycle::new(Arc::new(graded), points)
    }
}

pub fn projective_cycle_from_str(s: &str, top: usize) -> Result<ProjectiveCycle> {
    let raw: ProjectiveCycleJson = serde_json::from_str(s).map_err(malformed)?;
    raw.to_cycle(top)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawSpecJson {
    pub degree: usize,
    pub psi: BTreeMap<String, ScalarJson>,
}

/// A cocycle on a cover whose pieces and overlaps are all the same algebra.
/// The law defaults to the determinant.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub algebra: AlgebraRef,
    #[serde(default)]
    pub law: Option<LawSpecJson>,
    pub pieces: usize,
    /// Keys `"i,j"` with `i < j`.
    pub transitions: BTreeMap<String, Vec<ScalarJson>>,
}

impl CocycleJson {
    pub fn to_cocycle(&self, resolve: Resolver) -> Result<Cocycle> {
        let alg = Arc::new(self.algebra.load(resolve)?);
        let ring = alg.ring();
        let law = match &self.law {
            Some(l) => PolyLaw::from_map(Carrier::Algebra(alg.clone()), l.degree, &parse_index_map(ring, &l.psi)?)?,
            None => determinant_law(&alg)?,
        };
        let transitions = self
            .transitions
            .iter()
            .map(|(k, v)| Ok((parse_pair(k)?, scalars_from_json(ring, v)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Cocycle::uniform(alg, law, self.pieces, transitions)
    }
}

pub fn cocycle_from_str(s: &str, resolve: Resolver) -> Result<Cocycle> {
    let raw: CocycleJson = serde_json::from_str(s).map_err(malformed)?;
    raw.to_cocycle(resolve)
}

#[derive(Serialize)]
struct PairOut {
    ambient: String,
    degree: usize,
    carrier: AlgebraJson,
    generators: BTreeMap<String, Vec<ScalarJson>>,
    #[serde(serialize_with = "serialize_index_map")]
    law: BTreeMap<MultiIndex, Scalar>,
}

pub fn pair_to_json_value(p: &CyclePair) -> Value {
    let out = PairOut {
        ambient: p.ambient().to_string(),
        degree: p.degree(),
        carrier: AlgebraJson::from_algebra(p.carrier()),
        generators: p
            .ambient()
            .generators()
            .iter()
            .zip(p.generators())
            .map(|(n, v)| (n.clone(), v.iter().map(ScalarJson::from_scalar).collect()))
            .collect(),
        law: p.law().psi_map(),
    };
    serde_json::to_value(out).expect("serialisable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_refs(p: &str) -> Result<FiniteAlgebra> {
        Err(Error::Malformed(format!("unexpected reference {p}")))
    }

    #[test]
    fn cycle_round_trip() {
        let s = r#"{"ambient":"poly:Q[x]","points":[{"minpoly":[-2,0,1],"coords":[[0,1]],"mult":1},{"coords":[3],"mult":2}]}"#;
        let c = cycle_from_str(s, &no_refs).unwrap();
        assert_eq!(c.degree(), 4);
        let again = cycle_from_str(&cycle_to_json_string(&c), &no_refs).unwrap();
        assert_eq!(cycle_to_json_string(&again), cycle_to_json_string(&c));
        assert!(cycle_from_str(r#"{"ambient":"poly:Q[x]","points":[],"extra":1}"#, &no_refs).is_err());
    }

    #[test]
    fn graded_round_trip() {
        let g = GradedAlgebra::polynomial(Ring::Rationals, &["X", "Y"], 3).unwrap();
        let j = serde_json::to_string(&GradedJson::from_graded(&g)).unwrap();
        let back: GradedJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_graded().unwrap(), g);
    }

    #[test]
    fn cocycle_file() {
        let s = r#"{"algebra":{"ring":{"kind":"Q"},"rank":2,"basis":["1","x"],"one":[1,0],
            "mul":[[[1,0],[0,1]],[[0,1],[-2,3]]]},"pieces":2,"transitions":{"0,1":[0,1]}}"#;
        let c = cocycle_from_str(s, &no_refs).unwrap();
        let out = super::super::cocycle::norm_cocycle(&c).unwrap();
        assert_eq!(out.transitions[&(0, 1)], Ring::Rationals.from_i64(2));
    }
}
