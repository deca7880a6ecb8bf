//! Traces, the Θ_k tower, the trace/norm correspondence, characteristic
//! polynomials, Cayley–Hamilton reduction and tangent spaces at `[dQ]`.

pub mod charpoly;
pub mod dual;
pub mod reduce;
pub mod tangent;
pub mod theta;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::json::{scalars_from_json, AlgebraJson, ScalarJson};
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::laws::CarrierJson;

pub use charpoly::{char_poly, CharPoly};
pub use dual::Dual;
pub use reduce::{cayley_hamilton_reduce, Reduction};
pub use tangent::{tangent_deformations, DualTraceDeformation};
pub use theta::{
    is_degree_d_trace, norm_from_trace, theta_k_from_norm, theta_k_from_trace, trace_from_norm, NormTower,
    ThetaTower, TraceCheck,
};

/// A linear functional `θ: B → A` with a claimed degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceMap {
    carrier: Arc<FiniteAlgebra>,
    degree: usize,
    theta: Vec<Scalar>,
}

impl TraceMap {
    pub fn new(carrier: Arc<FiniteAlgebra>, degree: usize, theta: Vec<Scalar>) -> Result<Self> {
        if theta.len() != carrier.rank() {
            return Err(Error::DimensionMismatch(format!(
                "functional has {} entries for an algebra of rank {}",
                theta.len(),
                carrier.rank()
            )));
        }
        if theta.iter().any(|c| c.ring() != carrier.ring()) {
            return Err(Error::RingMismatch("functional outside the carrier's ring".into()));
        }
        Ok(TraceMap { carrier, degree, theta })
    }

    pub fn carrier(&self) -> &FiniteAlgebra {
        &self.carrier
    }

    pub fn carrier_arc(&self) -> &Arc<FiniteAlgebra> {
        &self.carrier
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.carrier.ring()
    }

    pub fn functional(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn apply(&self, b: &[Scalar]) -> Scalar {
        b.iter().zip(&self.theta).fold(self.ring().zero(), |acc, (x, t)| &acc + &(x * t))
    }

    pub fn to_json_string(&self) -> String {
        let out = TraceJson {
            degree: self.degree,
            carrier: CarrierJson::Inline(AlgebraJson::from_algebra(&self.carrier)),
            theta: self.theta.iter().map(ScalarJson::from_scalar).collect(),
        };
        serde_json::to_string_pretty(&out).expect("serialisable")
    }
}

/// `{"degree": d, "carrier": <algebra>, "theta": [θ(b_1), ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceJson {
    pub degree: usize,
    pub carrier: CarrierJson,
    pub theta: Vec<ScalarJson>,
}

impl TraceJson {
    pub fn into_trace(self, resolve: &dyn Fn(&str) -> Result<FiniteAlgebra>) -> Result<TraceMap> {
        let alg = match self.carrier {
            CarrierJson::Ref(path) => resolve(&path)?,
            CarrierJson::Inline(a) => a.to_algebra()?,
            CarrierJson::Module { .. } => return Err(Error::NotAlgebraCarrier),
        };
        let theta = scalars_from_json(alg.ring(), &self.theta)?;
        TraceMap::new(Arc::new(alg), self.degree, theta)
    }
}
