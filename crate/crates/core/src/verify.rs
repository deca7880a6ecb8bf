//! Executable property suites, one per acceptance criterion. Every suite
//! is exact (zero tolerance) and deterministic for a given seed.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::linalg;
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::{Ring, Scalar};
use crate::cycles::ambient::{parse_monomial, poly_image_symbolic};
use crate::cycles::{
    chow_determines_cycle, chow_form, chow_multiplicativity_check, functor_law_roundtrip, norm_cocycle,
    projectively_equal, ChowComparison, Cocycle, Cycle, CyclePair, GradedAlgebra, Point, ProjectiveCycle,
};
use crate::cycles::Ambient;
use crate::error::{Error, Result};
use crate::gamma::{
    external_product, from_sym_tensor, gamma_basis, internal_product, shuffle_product, slotwise_product,
    to_sym_tensor, GammaElement,
};
use crate::laws::{determinant_law, law_from_homs, PolyLaw};
use crate::trace_norm::theta::trace_of_law_unchecked;
use crate::trace_norm::{char_poly, norm_from_trace, tangent_deformations, trace_from_norm, NormTower, ThetaTower};

/// Result of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({} checks, {:.2}s){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.elapsed.as_secs_f64(),
            if self.detail.is_empty() { String::new() } else { format!(": {}", self.detail) }
        )
    }
}

pub const SUITES: [(usize, &str); 10] = [
    (1, "divided-power products match symmetric-tensor oracles"),
    (2, "trace tower recursion matches the divided-power definition"),
    (3, "trace/norm bijection round trip"),
    (4, "characteristic polynomial matches det(tI - M)"),
    (5, "Cayley-Hamilton factorisation of cycle laws"),
    (6, "tangent space dimension at [dQ]"),
    (7, "characteristic-p divergence of [x] and 3[x]"),
    (8, "cocycle norms"),
    (9, "Chow forms"),
    (10, "norm functor / law round trip"),
];

/// Tally of checks with the first failure.
struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn absorb(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.checks += 1;
            if self.failure.is_none() {
                self.failure = Some(format!("error: {e}"));
            }
        }
    }
}

pub fn run_suite(id: usize, seed: u64) -> SuiteReport {
    let name = SUITES.iter().find(|(i, _)| *i == id).map(|(_, n)| *n).unwrap_or("unknown suite");
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let mut t = Tally::new();
    match id {
        1 => products(&mut t),
        2 => towers(&mut t, &mut rng),
        3 => bijection(&mut t, &mut rng),
        4 => charpolys(&mut t, &mut rng),
        5 => reduction(&mut t, &mut rng),
        6 => tangent(&mut t),
        7 => divergence(&mut t),
        8 => cocycles(&mut t, &mut rng),
        9 => chow(&mut t, &mut rng),
        10 => roundtrip(&mut t),
        _ => t.check(false, || format!("no suite {id}")),
    }
    SuiteReport {
        id,
        name,
        passed: t.failure.is_none() && t.checks > 0,
        checks: t.checks,
        detail: t.failure.unwrap_or_default(),
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES.iter().map(|(id, _)| run_suite(*id, seed)).collect()
}

fn int(ring: Ring, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| ring.from_i64(x)).collect()
}

fn small_algebras(ring: Ring) -> Vec<Arc<FiniteAlgebra>> {
    let b = FiniteAlgebra::base(ring);
    vec![
        Arc::new(b.clone()),
        Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[0, 0, 1])).unwrap()),
        Arc::new(FiniteAlgebra::product(&[&b, &b]).unwrap()),
        Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[0, 0, -1, 1])).unwrap()),
        Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[1, -2, 0, 1])).unwrap()),
        Arc::new(FiniteAlgebra::truncated_polynomial(ring, &["x", "y"], 1)),
    ]
}

fn products(t: &mut Tally) {
    for ring in [Ring::Rationals, Ring::PrimeField(5)] {
        let one = ring.one();
        for n in 1..=3 {
            for d1 in 0..=4 {
                for d2 in 0..=4 - d1 {
                    for a in gamma_basis(n, d1) {
                        for b in gamma_basis(n, d2) {
                            let u = GammaElement::monomial(ring, a.clone(), one.clone());
                            let v = GammaElement::monomial(ring, b.clone(), one.clone());
                            let r = (|| -> Result<bool> {
                                let direct = external_product(&u, &v)?;
                                let oracle = from_sym_tensor(&shuffle_product(&to_sym_tensor(&u), &to_sym_tensor(&v))?)?;
                                Ok(direct == oracle)
                            })();
                            t.check(r == Ok(true), || format!("external γ^{a} × γ^{b} over {ring}"));
                        }
                    }
                }
            }
        }
        for alg in small_algebras(ring) {
            for d in 0..=4 {
                let basis = gamma_basis(alg.rank(), d);
                for a in &basis {
                    for b in &basis {
                        let u = GammaElement::monomial(ring, a.clone(), one.clone());
                        let v = GammaElement::monomial(ring, b.clone(), one.clone());
                        let r = (|| -> Result<bool> {
                            let direct = internal_product(&alg, &u, &v)?;
                            let oracle = from_sym_tensor(&slotwise_product(&alg, &to_sym_tensor(&u), &to_sym_tensor(&v))?)?;
                            Ok(direct == oracle)
                        })();
                        t.check(r == Ok(true), || format!("internal γ^{a} · γ^{b} in rank {} over {ring}", alg.rank()));
                    }
                }
            }
        }
    }
}

/// Random monic polynomial of degree `d` with small coefficients.
fn random_monic(ring: Ring, rng: &mut ChaCha8Rng, d: usize) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = (0..d).map(|_| ring.from_i64(rng.gen_range(-3..=3))).collect();
    p.push(ring.one());
    p
}

/// The population: determinant laws of random monic quotients, and
/// products of rational evaluations on algebras with rational roots.
pub fn law_population(ring: Ring, rng: &mut ChaCha8Rng, count: usize) -> Vec<PolyLaw> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if out.len() % 2 == 0 {
            let d = rng.gen_range(1..=4);
            let alg = Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &random_monic(ring, rng, d)).unwrap());
            out.push(determinant_law(&alg).unwrap());
        } else {
            let rank = rng.gen_range(1..=4);
            let roots: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
            let mut poly = vec![ring.one()];
            for r in &roots {
                poly = crate::algebra::poly::univariate::mul(&poly, &[ring.from_i64(-r), ring.one()]);
            }
            let alg = Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &poly).unwrap());
            let base = Arc::new(FiniteAlgebra::base(ring));
            let d = rng.gen_range(1..=4);
            let homs: Vec<AlgebraMorphism> = (0..d)
                .map(|_| {
                    let r = ring.from_i64(roots[rng.gen_range(0..rank)]);
                    let images: Vec<Vec<Scalar>> = (0..rank).map(|k| vec![r.pow(k as u32)]).collect();
                    AlgebraMorphism::from_images(alg.clone(), base.clone(), &images).unwrap()
                })
                .collect();
            out.push(law_from_homs(&homs).unwrap());
        }
    }
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    gamma_basis(n, k).iter().map(|a| a.to_word()).collect()
}

fn towers(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let ring = Ring::Rationals;
    for (idx, law) in law_population(ring, rng, 50).iter().enumerate() {
        let alg = law.algebra().unwrap().clone();
        let d = law.degree();
        let n = alg.rank();
        let theta = match trace_from_norm(law) {
            Ok(th) => th,
            Err(e) => return t.absorb(Err(e)),
        };
        let mut rec = ThetaTower::new(&alg, theta.functional().to_vec(), ring.zero());
        let mut gam = NormTower::new(law).unwrap();
        for k in 0..=d + 1 {
            for ms in multisets(n, k) {
                let (a, b) = (rec.basis_value(&ms), gam.basis_value(&ms));
                t.check(a == b, || format!("law {idx}: Θ_{k}{ms:?} recursion {a} vs divided powers {b}"));
            }
        }
        for k in d + 1..=d + 2 {
            for ms in multisets(n, k) {
                let v = rec.basis_value(&ms);
                t.check(v.is_zero(), || format!("law {idx}: Θ_{k}{ms:?} = {v} for k > d"));
            }
        }
        let zero = MultiPoly::zero(ring, n);
        let x = PolyLaw::generic_point(ring, n);
        let mut sym = ThetaTower::new(&alg, FiniteAlgebra::lift(theta.functional(), &zero), zero.clone());
        let diag = sym.eval_diagonal(&x, d);
        let expected = law.evaluate_generic(&x, &zero).scale(&ring.factorial(d));
        t.check(diag == expected, || format!("law {idx}: Θ_d(x,…,x) differs from d!·n(x)"));
    }
}

fn bijection(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let ring = Ring::Rationals;
    for (idx, law) in law_population(ring, rng, 50).iter().enumerate() {
        let r = (|| -> Result<()> {
            let theta = trace_from_norm(law)?;
            let back = norm_from_trace(&theta)?;
            t.check(&back == law, || format!("law {idx}: norm(trace(n)) ≠ n"));
            let again = trace_from_norm(&back)?;
            t.check(again == theta, || format!("law {idx}: trace(norm(θ)) ≠ θ"));
            Ok(())
        })();
        t.absorb(r);
    }
    let f2 = Ring::PrimeField(2);
    let alg = Arc::new(FiniteAlgebra::univariate_quotient(f2, "x", &int(f2, &[1, 1, 1])).unwrap());
    let theta = trace_from_norm(&determinant_law(&alg).unwrap()).unwrap();
    let err = norm_from_trace(&theta);
    t.check(matches!(err, Err(Error::Characteristic { factorial: 2, characteristic: 2 })), || {
        format!("F_2, d = 2: expected the characteristic error, got {err:?}")
    });
}

fn charpolys(t: &mut Tally, rng: &mut ChaCha8Rng) {
    for ring in [Ring::Rationals, Ring::PrimeField(5)] {
        let mut algebras = small_algebras(ring);
        algebras.push(Arc::new(FiniteAlgebra::truncated_polynomial(ring, &["x", "y"], 2)).clone());
        for _ in 0..10 {
            let d = rng.gen_range(1..=4);
            algebras.push(Arc::new(FiniteAlgebra::univariate_quotient(ring, "x", &random_monic(ring, rng, d)).unwrap()));
        }
        for alg in algebras.iter().filter(|a| a.rank() <= 4) {
            let law = determinant_law(alg).unwrap();
            let d = alg.rank();
            for i in 0..d {
                let b = alg.basis_vector(i);
                let classical = linalg::classical_charpoly(ring, &alg.mult_matrix(&b));
                let sign = if d % 2 == 1 { -ring.one() } else { ring.one() };
                let expected: Vec<Scalar> = classical.iter().map(|c| c * &sign).collect();
                let got = char_poly(&law, &b).map(|c| c.coeffs);
                t.check(got.as_ref() == Ok(&expected), || format!("rank {d}, basis element {i} over {ring}: {got:?}"));
            }
        }
    }
}

fn line_cycle(points: &[(i64, u32)]) -> Cycle {
    let ring = Ring::Rationals;
    Cycle::new(
        Ambient::polynomial(ring, &["x"]),
        points.iter().map(|&(a, d)| (Point::rational(&[ring.from_i64(a)], ring).unwrap(), d)).collect(),
    )
    .unwrap()
}

fn reduction(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let ring = Ring::Rationals;
    let mut cases: Vec<(Cycle, Vec<Scalar>)> = vec![(line_cycle(&[(0, 2), (1, 1)]), int(ring, &[0, 0, -1, 1]))];
    for d in 1..=4u32 {
        let mut xd = vec![ring.zero(); d as usize];
        xd.push(ring.one());
        cases.push((line_cycle(&[(0, d)]), xd));
    }
    for (cycle, minpoly) in cases {
        let r = (|| -> Result<()> {
            let pair = cycle.to_pair()?;
            let c = pair.carrier();
            let x = &pair.generators()[0];
            let deg = minpoly.len() - 1;
            t.check(c.rank() == deg && c.minimal_polynomial(x) == minpoly, || {
                format!("degree-{} cycle: carrier of rank {} with x of minimal polynomial {:?}", cycle.degree(), c.rank(), c.minimal_polynomial(x))
            });
            // 20 random inputs f = Σ (a_k + b_k s) x^k in x and a parameter s
            for _ in 0..20 {
                let terms = (0..=deg + 1).flat_map(|k| {
                    let a = ring.from_i64(rng.gen_range(-5..=5));
                    let b = ring.from_i64(rng.gen_range(-5..=5));
                    [(vec![k as u32, 0], a), (vec![k as u32, 1], b)]
                });
                let f = MultiPoly::from_terms(ring, 2, terms.collect::<Vec<_>>());
                let original = cycle.norm_symbolic(&f)?;
                let image = poly_image_symbolic(c, pair.generators(), &f, 1);
                let zero = MultiPoly::zero(ring, 1);
                let induced = pair.law().evaluate_generic(&image, &zero);
                t.check(original == induced, || format!("induced law differs at {f}"));
            }
            Ok(())
        })();
        t.absorb(r);
    }
}

/// `dim m/m^{d+1}` by counting basis monomials of degree 1..d.
fn monomial_count(alg: &FiniteAlgebra, d: usize) -> usize {
    alg.basis_names()
        .iter()
        .filter(|n| {
            let deg: u32 = parse_monomial(n).map(|m| m.iter().map(|(_, k)| k).sum()).unwrap_or(0);
            deg >= 1 && deg as usize <= d
        })
        .count()
}

fn tangent(t: &mut Tally) {
    let ring = Ring::Rationals;
    let cases = [
        (FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[0, 0, 0, 0, 1])).unwrap(), 2, 2),
        (FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[0, 0, 0, 0, 0, 1])).unwrap(), 3, 3),
        (FiniteAlgebra::truncated_polynomial(ring, &["x", "y"], 2), 2, 5),
    ];
    for (alg, d, expected) in cases {
        let alg = Arc::new(alg);
        let counted = monomial_count(&alg, d);
        let base = Arc::new(FiniteAlgebra::base(ring));
        let origin: Vec<Vec<Scalar>> =
            (0..alg.rank()).map(|i| vec![if alg.basis_names()[i] == "1" { ring.one() } else { ring.zero() }]).collect();
        let r = (|| -> Result<()> {
            let q = AlgebraMorphism::from_images(alg.clone(), base, &origin)?;
            let dim = tangent_deformations(&alg, &q, d)?.dimension;
            t.check(dim == expected && counted == expected, || {
                format!("rank {} with d = {d}: dimension {dim}, monomial count {counted}, expected {expected}", alg.rank())
            });
            Ok(())
        })();
        t.absorb(r);
    }
}

fn divergence(t: &mut Tally) {
    let f2 = Ring::PrimeField(2);
    let r = (|| -> Result<()> {
        let alg = Arc::new(FiniteAlgebra::univariate_quotient(f2, "x", &int(f2, &[0, 1, 1]))?);
        let amb = Ambient::finite(alg.clone());
        let x = Point::rational(&[f2.zero()], f2)?;
        let single = Cycle::new(amb.clone(), vec![(x.clone(), 1)])?.law()?;
        let triple = Cycle::new(amb, vec![(x, 3)])?.law()?;
        let (a, b) = (trace_of_law_unchecked(&single)?, trace_of_law_unchecked(&triple)?);
        t.check(a.functional() == b.functional(), || "traces of [x] and 3[x] differ over F_2".into());
        let tv = MultiPoly::var(f2, 1, 0);
        let at_t: Vec<MultiPoly> = alg.one().iter().map(|c| tv.scale(c)).collect();
        let (va, vb) = (single.evaluate(&at_t)?, triple.evaluate(&at_t)?);
        t.check(va.to_string() == "t" && vb.to_string() == "t^3", || format!("evaluations at t·1: {va} and {vb}"));
        Ok(())
    })();
    t.absorb(r);
}

fn random_unit(alg: &FiniteAlgebra, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..alg.rank()).map(|_| alg.ring().from_i64(rng.gen_range(-4..=4))).collect();
        if alg.inverse_of(&v).is_some() {
            return v;
        }
    }
}

fn cocycles(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let ring = Ring::Rationals;
    let algebras = [
        FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[2, -3, 1])).unwrap(),
        FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[-2, 0, 1])).unwrap(),
        FiniteAlgebra::univariate_quotient(ring, "x", &int(ring, &[0, 0, 1])).unwrap(),
    ];
    for alg in algebras {
        let alg = Arc::new(alg);
        let law = determinant_law(&alg).unwrap();
        let d = law.degree() as u32;
        let r = (|| -> Result<()> {
            // the transition x̄ itself when invertible
            if alg.inverse_of(&alg.basis_vector(1)).is_some() {
                let c = Cocycle::uniform(alg.clone(), law.clone(), 2, BTreeMap::from([((0, 1), alg.basis_vector(1))]))?;
                let out = norm_cocycle(&c)?;
                let det = linalg::det(ring, &alg.mult_matrix(&alg.basis_vector(1)));
                t.check(out.transitions[&(0, 1)] == det, || "n(x̄) differs from det of multiplication by x̄".into());
            }
            for _ in 0..5 {
                let (a, b) = (random_unit(&alg, rng), random_unit(&alg, rng));
                let ab = alg.mul_vec(&a, &b);
                let three = Cocycle::uniform(alg.clone(), law.clone(), 3, BTreeMap::from([((0, 1), a.clone()), ((1, 2), b.clone()), ((0, 2), ab)]))?;
                t.check(norm_cocycle(&three)?.satisfies_cocycle_identity(), || "cocycle identity fails on the base".into());
                let c = Cocycle::uniform(alg.clone(), law.clone(), 2, BTreeMap::from([((0, 1), a.clone())]))?;
                let c2 = Cocycle::uniform(alg.clone(), law.clone(), 2, BTreeMap::from([((0, 1), b.clone())]))?;
                let n1 = norm_cocycle(&c)?.transitions[&(0, 1)].clone();
                let n2 = norm_cocycle(&c2)?.transitions[&(0, 1)].clone();
                let u = ring.from_i64(rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 });
                let scaled = norm_cocycle(&c.scale_transition((0, 1), &u)?)?.transitions[&(0, 1)].clone();
                t.check(scaled == &n1 * &u.pow(d), || format!("scaling by {u} does not multiply by u^{d}"));
                let tensor = norm_cocycle(&c.tensor(&c2)?)?.transitions[&(0, 1)].clone();
                t.check(tensor == &n1 * &n2, || "tensor compatibility fails".into());
            }
            Ok(())
        })();
        t.absorb(r);
    }
}

fn projective(g: &Arc<GradedAlgebra>, pts: &[((i64, i64), u32)]) -> Result<ProjectiveCycle> {
    let ring = g.ring();
    let points = pts
        .iter()
        .map(|&((a, b), d)| Ok((Point::rational(&[ring.from_i64(a), ring.from_i64(b)], ring)?, d)))
        .collect::<Result<Vec<_>>>()?;
    ProjectiveCycle::new(g.clone(), points)
}

/// Distinct rational points of the projective line with small coordinates.
fn random_multiset(rng: &mut ChaCha8Rng) -> Vec<((i64, i64), u32)> {
    let degree = rng.gen_range(1..=3);
    let mut pts: Vec<((i64, i64), u32)> = Vec::new();
    let mut left = degree;
    while left > 0 {
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
            if (a, b) != (0, 0) {
                break (a, b);
            }
        };
        let mult = rng.gen_range(1..=left);
        match pts.iter_mut().find(|((c, d), _)| a * d == b * c) {
            Some(entry) => entry.1 += mult,
            None => pts.push(((a, b), mult)),
        }
        left -= mult;
    }
    pts
}

/// Canonical form of a multiset: points normalised, sorted.
fn canonical(pts: &[((i64, i64), u32)]) -> Vec<((i64, i64, i64, i64), u32)> {
    let mut out: Vec<((i64, i64, i64, i64), u32)> = pts
        .iter()
        .map(|&((a, b), d)| {
            // store a/b or (1, 0) as reduced fractions
            if b == 0 {
                ((1, 1, 0, 1), d)
            } else {
                let g = gcd(a.abs(), b.abs()).max(1);
                let s = if b < 0 { -1 } else { 1 };
                ((s * a / g, 1, s * b / g, 1), d)
            }
        })
        .collect();
    out.sort();
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn chow(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let ring = Ring::Rationals;
    let r = (|| -> Result<()> {
        let g = Arc::new(GradedAlgebra::polynomial(ring, &["X", "Y"], 3)?);
        let two = projective(&g, &[((0, 1), 1), ((1, 1), 1)])?;
        let omega = chow_form(&two, 1)?;
        let labelled: Vec<Scalar> = [[2u32, 0], [1, 1], [0, 2]]
            .iter()
            .map(|a| omega.psi_at(&crate::gamma::MultiIndex(a.to_vec())))
            .collect();
        let expected = PolyLaw::from_map(
            omega.carrier().clone(),
            2,
            &BTreeMap::from([
                (crate::gamma::MultiIndex(vec![1, 1]), ring.one()),
                (crate::gamma::MultiIndex(vec![0, 2]), ring.one()),
            ]),
        )?;
        t.check(projectively_equal(&omega, &expected), || format!("Ω_1 on (γ²X, γXγY, γ²Y) is {labelled:?}"));

        let sqrt2 = ProjectiveCycle::new(
            g.clone(),
            vec![(Point::new(ring, &int(ring, &[-2, 0, 1]), &[vec![ring.zero(), ring.one()], vec![ring.one()]])?, 1)],
        )?;
        let mut samples = vec![two, sqrt2, projective(&g, &[((1, 0), 2), ((2, -1), 1)])?];
        samples.push(projective(&g, &random_multiset(rng))?);
        for c in &samples {
            for l in 0..=3 {
                for m in 0..=3 - l {
                    let ok = chow_multiplicativity_check(&g, l, m, &chow_form(c, l)?, &chow_form(c, m)?, &chow_form(c, l + m)?)?;
                    t.check(ok, || format!("multiplicativity fails for l = {l}, m = {m}"));
                }
            }
        }

        let mut multisets: Vec<Vec<((i64, i64), u32)>> = Vec::new();
        while multisets.len() < 10 {
            let m = random_multiset(rng);
            if !multisets.iter().any(|o| canonical(o) == canonical(&m)) {
                multisets.push(m);
            }
        }
        let line = Arc::new(GradedAlgebra::polynomial(ring, &["X", "Y"], 1)?);
        let cycles = multisets.iter().map(|m| projective(&line, m)).collect::<Result<Vec<_>>>()?;
        let forms = cycles.iter().map(|c| chow_form(c, 1)).collect::<Result<Vec<_>>>()?;
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                t.check(!projectively_equal(&forms[i], &forms[j]), || {
                    format!("distinct multisets {:?} and {:?} share Ω_1", multisets[i], multisets[j])
                });
                let cmp = chow_determines_cycle(&cycles[i], &cycles[j], 1)?;
                t.check(cmp.consistent() && cmp != ChowComparison::Compared { forms_equal: true, cycles_equivalent: true }, || {
                    format!("comparison of {:?} and {:?}: {cmp:?}", multisets[i], multisets[j])
                });
            }
            let cmp = chow_determines_cycle(&cycles[i], &cycles[i], 1)?;
            t.check(cmp == ChowComparison::Compared { forms_equal: true, cycles_equivalent: true }, || {
                format!("a cycle compared with itself: {cmp:?}")
            });
        }
        Ok(())
    })();
    t.absorb(r);
}

fn roundtrip(t: &mut Tally) {
    let ring = Ring::Rationals;
    let mut pairs: Vec<(String, Result<CyclePair>)> = Vec::new();
    for alg in small_algebras(ring).into_iter().skip(1) {
        pairs.push((format!("finite-flat rank {}", alg.rank()), CyclePair::hilbert_chow(alg)));
    }
    let f5 = Ring::PrimeField(5);
    pairs.push((
        "finite-flat over F_5".into(),
        CyclePair::hilbert_chow(Arc::new(FiniteAlgebra::univariate_quotient(f5, "x", &int(f5, &[2, 0, 1])).unwrap())),
    ));
    for d in 1..=3 {
        pairs.push((format!("{d}·[Q]"), line_cycle(&[(2, d)]).to_pair()));
    }
    pairs.push(("2[0] + [1]".into(), line_cycle(&[(0, 2), (1, 1)]).to_pair()));
    let quad = Point::new(ring, &int(ring, &[-2, 0, 1]), &[vec![ring.zero(), ring.one()]]).unwrap();
    pairs.push(("[√2]".into(), Cycle::new(Ambient::polynomial(ring, &["x"]), vec![(quad, 1)]).and_then(|c| c.to_pair())));
    let plane = Point::rational(&[ring.from_i64(1), ring.from_i64(-1)], ring).unwrap();
    pairs.push(("2·[(1,-1)] in the plane".into(), Cycle::new(Ambient::polynomial(ring, &["x", "y"]), vec![(plane, 2)]).and_then(|c| c.to_pair())));
    for (name, pair) in pairs {
        match pair.and_then(|p| functor_law_roundtrip(&p)) {
            Ok(rt) => t.check(rt.holds(), || format!("{name}: {rt:?}")),
            Err(e) => t.absorb(Err(e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for id in [5, 6, 7, 8, 10] {
            let r = run_suite(id, 7);
            assert!(r.passed, "{}", r.line());
        }
    }
}
