//! One function per subcommand, each producing a text and a JSON report.

use std::time::Instant;

use gamma_cycles::algebra::json::AlgebraJson;
use gamma_cycles::algebra::{MultiPoly, Scalar};
use gamma_cycles::cycles::json::pair_to_json_value;
use gamma_cycles::cycles::point::Point;
use gamma_cycles::cycles::{
    chow_determines_cycle, chow_form, chow_multiplicativity_check, norm_cocycle, pairs_equivalent, pushforward,
    sum_cycles, Ambient, ChowComparison, CyclePair,
};
use gamma_cycles::gamma::{external_product, internal_product};
use gamma_cycles::laws::{Carrier, PolyLaw};
use gamma_cycles::trace_norm::{
    cayley_hamilton_reduce, char_poly, norm_from_trace, tangent_deformations, theta_k_from_norm, theta_k_from_trace,
    trace_from_norm,
};
use gamma_cycles::verify::{run_suite, SUITES};
use gamma_cycles::{Error, Result};
use serde_json::{json, Value};

use crate::input;
use crate::{Cli, Command};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, ok: true }
    }
}

fn parse_json(s: &str) -> Value {
    serde_json::from_str(s).expect("library output is valid JSON")
}

fn scalar_list(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

fn scalar_values(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn basis_names(carrier: &Carrier) -> Vec<String> {
    match carrier {
        Carrier::Algebra(a) => a.basis_names().to_vec(),
        Carrier::Module { rank, .. } => (1..=*rank).map(|i| format!("e{i}")).collect(),
    }
}

fn law_text(law: &PolyLaw) -> String {
    let names = basis_names(law.carrier());
    let mut out = format!(
        "degree: {}\nring: {}\nbasis: {}\n",
        law.degree(),
        law.ring(),
        names.join(", ")
    );
    for (alpha, c) in law.psi_map() {
        if !c.is_zero() {
            out.push_str(&format!("  psi({alpha}) = {c}\n"));
        }
    }
    out
}

fn pair_report(pair: &CyclePair) -> Report {
    let carrier = pair.carrier();
    let mut text = format!(
        "ambient: {}\ndegree: {}\ncarrier rank: {}\ncarrier basis: {}\n",
        pair.ambient(),
        pair.degree(),
        carrier.rank(),
        carrier.basis_names().join(", ")
    );
    for (name, image) in pair.ambient().generators().iter().zip(pair.generators()) {
        text.push_str(&format!("image of {name}: {}\n", scalar_list(image)));
    }
    text.push_str("law:\n");
    for (alpha, c) in pair.law().psi_map() {
        if !c.is_zero() {
            text.push_str(&format!("  psi({alpha}) = {c}\n"));
        }
    }
    Report::ok(text, pair_to_json_value(pair))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::GammaMul { left, right, algebra, ring } => {
            let (alg, ring) = match algebra {
                Some(p) => {
                    let a = input::algebra(p)?;
                    let r = a.ring();
                    (Some(a), r)
                }
                None => (None, input::ring(ring)?),
            };
            let (u, v) = (input::gamma(left, ring)?, input::gamma(right, ring)?);
            let w = match &alg {
                Some(a) => internal_product(a, &u, &v)?,
                None => external_product(&u, &v)?,
            };
            Ok(Report::ok(format!("{w}\n"), parse_json(&w.to_json_string())))
        }

        Command::LawCheck { law } => {
            let law = input::law(law)?;
            let (ok, reason) = match law.check_multiplicative() {
                Ok(()) => (true, None),
                Err(Error::NotMultiplicative(r)) => (false, Some(r)),
                Err(e) => return Err(e),
            };
            let mut text = format!("degree: {}\nrank: {}\nmultiplicative: {}\n", law.degree(), law.rank(), yes_no(ok));
            if let Some(r) = &reason {
                text.push_str(&format!("reason: {r}\n"));
            }
            let json = json!({"degree": law.degree(), "rank": law.rank(), "multiplicative": ok, "reason": reason});
            Ok(Report { text, json, ok })
        }

        Command::LawEval { law, element } => {
            let law = input::law(law)?;
            match element {
                Some(e) => {
                    let x = input::element(law.carrier(), e)?;
                    let v = law.value(&x);
                    Ok(Report::ok(format!("value: {v}\n"), json!({"element": scalar_values(&x), "value": v.to_string()})))
                }
                None => {
                    let p = law.evaluate(&PolyLaw::generic_point(law.ring(), law.rank()))?;
                    let names: Vec<String> = (1..=law.rank()).map(|i| format!("t{i}")).collect();
                    let shown = p.display_with(&names);
                    Ok(Report::ok(format!("n(t1*b1 + .. + tn*bn) = {shown}\n"), json!({"polynomial": shown})))
                }
            }
        }

        Command::Trace { law } => {
            let law = input::law(law)?;
            let theta = trace_from_norm(&law)?;
            let mut text = format!("degree: {}\n", theta.degree());
            for (name, c) in theta.carrier().basis_names().iter().zip(theta.functional()) {
                text.push_str(&format!("theta({name}) = {c}\n"));
            }
            Ok(Report::ok(text, parse_json(&theta.to_json_string())))
        }

        Command::Norm { trace } => {
            let law = norm_from_trace(&input::trace(trace)?)?;
            Ok(Report::ok(law_text(&law), parse_json(&law.to_json_string())))
        }

        Command::Theta { law, trace, elements } => {
            let k = elements.len();
            let value = if let Some(path) = law {
                let law = input::law(path)?;
                let args = elements.iter().map(|e| input::element(law.carrier(), e)).collect::<Result<Vec<_>>>()?;
                theta_k_from_norm(&law, &args)?
            } else {
                let theta = input::trace(trace.as_ref().expect("clap requires --law or --trace"))?;
                let carrier = Carrier::Algebra(theta.carrier_arc().clone());
                let args = elements.iter().map(|e| input::element(&carrier, e)).collect::<Result<Vec<_>>>()?;
                theta_k_from_trace(&theta, &args)
            };
            Ok(Report::ok(format!("Theta_{k} = {value}\n"), json!({"k": k, "value": value.to_string()})))
        }

        Command::Charpoly { law, element } => {
            let law = input::law(law)?;
            let b = input::element(law.carrier(), element)?;
            let chi = char_poly(&law, &b)?;
            let json = json!({"polynomial": chi.to_string(), "coefficients": scalar_values(&chi.coeffs)});
            Ok(Report::ok(format!("charpoly: {chi}\n"), json))
        }

        Command::ChReduce { law } => {
            let law = input::law(law)?;
            let red = cayley_hamilton_reduce(&law)?;
            let mut text = format!(
                "ideal dimension: {}\nquotient rank: {}\nquotient basis: {}\n",
                red.ideal.dim(),
                red.quotient.rank(),
                red.quotient.basis_names().join(", ")
            );
            for v in red.ideal.basis() {
                text.push_str(&format!("ideal generator: {}\n", scalar_list(v)));
            }
            text.push_str("reduced law:\n");
            text.push_str(&law_text(&red.law));
            let json = json!({
                "ideal": red.ideal.basis().iter().map(|v| scalar_values(v)).collect::<Vec<_>>(),
                "quotient": serde_json::to_value(AlgebraJson::from_algebra(&red.quotient)).expect("serialisable"),
                "law": parse_json(&red.law.to_json_string()),
            });
            Ok(Report::ok(text, json))
        }

        Command::Tangent { algebra, point, degree } => {
            let alg = std::sync::Arc::new(input::algebra(algebra)?);
            let amb = Ambient::finite(alg.clone());
            let values = input::scalars(alg.ring(), point)?;
            if values.len() != amb.ngens() {
                return Err(Error::DimensionMismatch(format!(
                    "point has {} coordinates, the algebra has generators {}",
                    values.len(),
                    amb.generators().join(", ")
                )));
            }
            let q = Point::rational(&values, alg.ring())?.evaluation(&amb)?;
            let def = tangent_deformations(&alg, &q, *degree)?;
            let mut text = format!("dimension: {}\nbasis order: {}\n", def.dimension, alg.basis_names().join(", "));
            for v in &def.basis {
                text.push_str(&format!("  {}\n", scalar_list(v)));
            }
            let json = json!({
                "degree": def.degree,
                "dimension": def.dimension,
                "basis_order": alg.basis_names(),
                "basis": def.basis.iter().map(|v| scalar_values(v)).collect::<Vec<_>>(),
            });
            Ok(Report::ok(text, json))
        }

        Command::CycleLaw { cycle } => Ok(pair_report(&input::cycle(cycle)?.to_pair()?)),

        Command::Sum { cycles } => {
            let mut pairs = cycles.iter().map(|p| input::cycle(p)?.to_pair());
            let first = pairs.next().expect("clap requires one cycle")?;
            let total = pairs.try_fold(first, |acc, p| sum_cycles(&acc, &p?))?;
            Ok(pair_report(&total))
        }

        Command::Pushforward { cycle, to, maps } => {
            let c = input::cycle(cycle)?;
            let target = input::ambient(to)?;
            if maps.len() != target.ngens() {
                return Err(Error::DimensionMismatch(format!(
                    "{} generators ({}) need one --map each, got {}",
                    target,
                    target.generators().join(", "),
                    maps.len()
                )));
            }
            let images = maps.iter().map(|m| input::expression(c.ambient(), m)).collect::<Result<Vec<MultiPoly>>>()?;
            Ok(pair_report(&pushforward(&c.to_pair()?, &target, &images)?))
        }

        Command::Equiv { left, right } => {
            let (a, b) = (input::cycle(left)?, input::cycle(right)?);
            let eq = pairs_equivalent(&a.to_pair()?, &b.to_pair()?)?;
            Ok(Report { text: format!("equivalent: {}\n", yes_no(eq)), json: json!({"equivalent": eq}), ok: eq })
        }

        Command::CocycleNorm { cocycle } => {
            let c = input::cocycle(cocycle)?;
            let base = norm_cocycle(&c)?;
            let holds = base.satisfies_cocycle_identity();
            let mut text = format!("degree: {}\npieces: {}\n", c.degree(), base.npieces);
            let mut transitions = serde_json::Map::new();
            for ((i, j), v) in &base.transitions {
                text.push_str(&format!("n(phi_{i}{j}) = {v}\n"));
                transitions.insert(format!("{i},{j}"), Value::String(v.to_string()));
            }
            text.push_str(&format!("cocycle identity: {}\n", if holds { "holds" } else { "fails" }));
            let json = json!({"degree": c.degree(), "pieces": base.npieces, "transitions": transitions, "cocycle_identity": holds});
            Ok(Report { text, json, ok: holds })
        }

        Command::ChowForm { cycle, level } => {
            let c = input::projective_cycle(cycle, (*level).max(1))?;
            let omega = chow_form(&c, *level)?;
            let names = c.graded().basis(*level).to_vec();
            let mut text = format!("level: {level}\ndegree: {}\nbasis: {}\n", omega.degree(), names.join(", "));
            for (alpha, v) in omega.psi_map() {
                if !v.is_zero() {
                    text.push_str(&format!("  psi({alpha}) = {v}\n"));
                }
            }
            let psi: serde_json::Map<String, Value> =
                omega.psi_map().iter().map(|(a, v)| (a.to_string(), Value::String(v.to_string()))).collect();
            Ok(Report::ok(text, json!({"level": level, "degree": omega.degree(), "basis": names, "psi": psi})))
        }

        Command::ChowCheck { cycle, against, level, top } => {
            let top = (*top).max(*level);
            let c = input::projective_cycle(cycle, top)?;
            let g = c.graded().clone();
            let top = top.min(g.top_degree());
            let forms = (0..=top).map(|l| chow_form(&c, l)).collect::<Result<Vec<_>>>()?;
            let mut text = String::new();
            let mut checks = Vec::new();
            let mut ok = true;
            for l in 1..=top {
                for m in 1..=top - l {
                    let holds = chow_multiplicativity_check(&g, l, m, &forms[l], &forms[m], &forms[l + m])?;
                    ok &= holds;
                    text.push_str(&format!("multiplicativity l={l} m={m}: {}\n", if holds { "holds" } else { "fails" }));
                    checks.push(json!({"l": l, "m": m, "holds": holds}));
                }
            }
            let mut json = json!({"multiplicativity": checks});
            if let Some(other) = against {
                let d = input::projective_cycle(other, top.max(*level))?;
                let cmp = chow_determines_cycle(&c, &d, *level)?;
                ok &= cmp.consistent();
                let (forms_equal, equivalent) = match cmp {
                    ChowComparison::DegreesDiffer => (false, false),
                    ChowComparison::Compared { forms_equal, cycles_equivalent } => (forms_equal, cycles_equivalent),
                };
                text.push_str(&format!(
                    "forms equal at level {level}: {}\ncycles equivalent: {}\nconsistent: {}\n",
                    yes_no(forms_equal),
                    yes_no(equivalent),
                    yes_no(cmp.consistent())
                ));
                json["comparison"] = json!({
                    "level": level, "forms_equal": forms_equal, "cycles_equivalent": equivalent, "consistent": cmp.consistent()
                });
            }
            Ok(Report { text, json, ok })
        }

        Command::VerifyAll { seed, suite } => {
            let seed = match std::env::var("GAMMA_CYCLES_SEED") {
                Ok(s) => s.trim().parse().map_err(|_| Error::Malformed(format!("GAMMA_CYCLES_SEED={s:?} is not an integer")))?,
                Err(_) => *seed,
            };
            let ids: Vec<usize> = match suite {
                Some(id) if SUITES.iter().any(|(i, _)| i == id) => vec![*id],
                Some(id) => return Err(Error::Malformed(format!("no suite {id}; suites are 1..={}", SUITES.len()))),
                None => SUITES.iter().map(|(i, _)| *i).collect(),
            };
            let mut text = format!("seed: {seed}\n");
            let mut rows = Vec::new();
            let mut ok = true;
            let start = Instant::now();
            for id in ids {
                let r = run_suite(id, seed);
                eprintln!("suite {id}: {:.3}s", r.elapsed.as_secs_f64());
                ok &= r.passed;
                text.push_str(&format!("{} {:>2}. {} ({} checks)", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.checks));
                if !r.detail.is_empty() {
                    text.push_str(&format!(": {}", r.detail));
                }
                text.push('\n');
                rows.push(json!({"id": r.id, "name": r.name, "passed": r.passed, "checks": r.checks, "detail": r.detail}));
            }
            eprintln!("total: {:.3}s", start.elapsed().as_secs_f64());
            Ok(Report { text, json: json!({"seed": seed, "suites": rows}), ok })
        }
    }
}
