//! Loading input files. Algebra references inside a file are paths
//! relative to that file's directory.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use gamma_cycles::algebra::json::algebra_from_str;
use gamma_cycles::algebra::{parse_poly, FiniteAlgebra, MultiPoly, Ring, Scalar};
use gamma_cycles::cycles::ambient::poly_image;
use gamma_cycles::cycles::json::{cocycle_from_str, cycle_from_str, projective_cycle_from_str};
use gamma_cycles::cycles::{Ambient, Cocycle, Cycle, ProjectiveCycle};
use gamma_cycles::gamma::element::GammaJson;
use gamma_cycles::gamma::GammaElement;
use gamma_cycles::laws::{Carrier, PolyLaw, PolyLawJson};
use gamma_cycles::trace_norm::{TraceJson, TraceMap};
use gamma_cycles::{Error, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// Resolve algebra references relative to `base`.
fn resolver(base: PathBuf) -> impl Fn(&str) -> Result<FiniteAlgebra> {
    move |r: &str| algebra(&base.join(r))
}

fn context(path: &Path, e: Error) -> Error {
    match e {
        Error::Malformed(m) if !m.starts_with(&path.display().to_string()) => {
            Error::Malformed(format!("{}: {m}", path.display()))
        }
        other => other,
    }
}

pub fn algebra(path: &Path) -> Result<FiniteAlgebra> {
    algebra_from_str(&read(path)?).map_err(|e| context(path, e))
}

pub fn law(path: &Path) -> Result<PolyLaw> {
    let raw: PolyLawJson = json(path)?;
    raw.into_law(&resolver(dir_of(path))).map_err(|e| context(path, e))
}

pub fn trace(path: &Path) -> Result<TraceMap> {
    let raw: TraceJson = json(path)?;
    raw.into_trace(&resolver(dir_of(path))).map_err(|e| context(path, e))
}

pub fn gamma(path: &Path, ring: Ring) -> Result<GammaElement> {
    let raw: GammaJson = json(path)?;
    raw.into_element(ring).map_err(|e| context(path, e))
}

pub fn cycle(path: &Path) -> Result<Cycle> {
    cycle_from_str(&read(path)?, &resolver(dir_of(path))).map_err(|e| context(path, e))
}

pub fn projective_cycle(path: &Path, top: usize) -> Result<ProjectiveCycle> {
    projective_cycle_from_str(&read(path)?, top).map_err(|e| context(path, e))
}

pub fn cocycle(path: &Path) -> Result<Cocycle> {
    cocycle_from_str(&read(path)?, &resolver(dir_of(path))).map_err(|e| context(path, e))
}

/// `"Q"` or `"F<p>"`.
pub fn ring(s: &str) -> Result<Ring> {
    match s {
        "Q" | "QQ" => Ok(Ring::Rationals),
        _ => match s.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()) {
            Some(p) => Ring::prime_field(p),
            None => Err(Error::Malformed(format!("unknown ring {s:?}; expected Q or F<p>"))),
        },
    }
}

/// An ambient: a `poly:k[..]` descriptor or a path to an algebra file.
pub fn ambient(s: &str) -> Result<Ambient> {
    if s.starts_with("poly:") {
        Ambient::parse_descriptor(s)
    } else {
        Ok(Ambient::finite(Arc::new(algebra(Path::new(s))?)))
    }
}

/// Comma-separated scalars, optionally in brackets.
pub fn scalars(ring: Ring, s: &str) -> Result<Vec<Scalar>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner.split(',').map(|c| ring.parse_scalar(c.trim())).collect()
}

/// An element of a law's carrier: a coordinate vector `[c_1,..,c_n]`, or a
/// polynomial in the algebra's generators such as `x^2 + 1`.
pub fn element(carrier: &Carrier, s: &str) -> Result<Vec<Scalar>> {
    let ring = carrier.ring();
    let coords = |s: &str| -> Result<Vec<Scalar>> {
        let v = scalars(ring, s)?;
        if v.len() != carrier.rank() {
            return Err(Error::DimensionMismatch(format!(
                "element {s:?} has {} coordinates, the carrier has rank {}",
                v.len(),
                carrier.rank()
            )));
        }
        Ok(v)
    };
    let trimmed = s.trim();
    match carrier {
        Carrier::Module { .. } => coords(trimmed),
        Carrier::Algebra(_) if trimmed.starts_with('[') => coords(trimmed),
        Carrier::Algebra(alg) => {
            let amb = Ambient::finite(alg.clone());
            let f = expression(&amb, trimmed)?;
            Ok(poly_image(alg, &amb.generator_vectors().expect("finite ambient"), &f))
        }
    }
}

/// A polynomial in the generators of an ambient.
pub fn expression(amb: &Ambient, s: &str) -> Result<MultiPoly> {
    let names: Vec<&str> = amb.generators().iter().map(String::as_str).collect();
    parse_poly(amb.ring(), &names, s)
}
