use std::sync::Arc;

use gamma_cycles::algebra::finite::FiniteAlgebra;
use gamma_cycles::algebra::poly::MultiPoly;
use gamma_cycles::algebra::ring_elem::RingElem;
use gamma_cycles::algebra::scalar::Ring;
use gamma_cycles::cycles::{pairs_equivalent, pushforward, sum_cycles, Ambient, Cycle, CyclePair, Point};
use proptest::prelude::*;

fn line() -> Ambient {
    Ambient::polynomial(Ring::Rationals, &["x"])
}

fn cycle(points: &[(i64, u32)]) -> Cycle {
    let q = Ring::Rationals;
    let pts = points.iter().map(|&(a, d)| (Point::rational(&[q.from_i64(a)], q).unwrap(), d)).collect();
    Cycle::new(line(), pts).unwrap()
}

fn points() -> impl Strategy<Value = Vec<(i64, u32)>> {
    // equivalence checks cost grows like binomial(rank + degree, degree), so keep degrees small
    prop::collection::vec((-2i64..=2, 1u32..=2), 1..=2).prop_filter("degree at most 3", |v| v.iter().map(|p| p.1).sum::<u32>() <= 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sum_is_commutative(a in points(), b in points()) {
        let (p, q) = (cycle(&a).to_pair().unwrap(), cycle(&b).to_pair().unwrap());
        let (pq, qp) = (sum_cycles(&p, &q).unwrap(), sum_cycles(&q, &p).unwrap());
        prop_assert_eq!(pq.degree(), p.degree() + q.degree());
        prop_assert!(pairs_equivalent(&pq, &qp).unwrap());
    }

    #[test]
    fn sum_matches_concatenated_cycle(a in points(), b in points()) {
        let joined: Vec<_> = a.iter().chain(b.iter()).copied().collect();
        let sum = sum_cycles(&cycle(&a).to_pair().unwrap(), &cycle(&b).to_pair().unwrap()).unwrap();
        prop_assert!(pairs_equivalent(&sum, &cycle(&joined).to_pair().unwrap()).unwrap());
    }

    #[test]
    fn pushforward_moves_points(a in points(), shift in -3i64..=3) {
        let q = Ring::Rationals;
        let image = MultiPoly::var(q, 1, 0).add_ref(&MultiPoly::constant(q.from_i64(shift), 1));
        let moved: Vec<_> = a.iter().map(|&(p, d)| (p + shift, d)).collect();
        let pushed = pushforward(&cycle(&a).to_pair().unwrap(), &line(), &[image]).unwrap();
        prop_assert!(pairs_equivalent(&pushed, &cycle(&moved).to_pair().unwrap()).unwrap());
    }
}

#[test]
fn sum_is_associative() {
    let (a, b, c) = (cycle(&[(0, 1)]).to_pair().unwrap(), cycle(&[(1, 2)]).to_pair().unwrap(), cycle(&[(0, 1)]).to_pair().unwrap());
    let left = sum_cycles(&sum_cycles(&a, &b).unwrap(), &c).unwrap();
    let right = sum_cycles(&a, &sum_cycles(&b, &c).unwrap()).unwrap();
    assert!(pairs_equivalent(&left, &right).unwrap());
}

#[test]
fn multiple_is_repeated_sum() {
    let p = cycle(&[(1, 1)]).to_pair().unwrap();
    let three = sum_cycles(&sum_cycles(&p, &p).unwrap(), &p).unwrap();
    assert!(pairs_equivalent(&three, &cycle(&[(1, 3)]).to_pair().unwrap()).unwrap());
    assert!(!pairs_equivalent(&three, &cycle(&[(1, 2), (0, 1)]).to_pair().unwrap()).unwrap());
}

#[test]
fn pushforward_composes() {
    let q = Ring::Rationals;
    let x = MultiPoly::var(q, 1, 0);
    let sq = x.mul_ref(&x);
    let shifted = x.add_ref(&MultiPoly::one(q, 1));
    let p = cycle(&[(1, 1), (-2, 2)]).to_pair().unwrap();
    let two_steps = pushforward(&pushforward(&p, &line(), std::slice::from_ref(&sq)).unwrap(), &line(), std::slice::from_ref(&shifted)).unwrap();
    let composite = shifted.substitute(&[sq]);
    let one_step = pushforward(&p, &line(), &[composite]).unwrap();
    assert!(pairs_equivalent(&two_steps, &one_step).unwrap());
    assert!(pairs_equivalent(&one_step, &cycle(&[(2, 1), (5, 2)]).to_pair().unwrap()).unwrap());
}

#[test]
fn etale_hilbert_chow_is_sum_of_points() {
    let q = Ring::Rationals;
    let coeffs: Vec<_> = [-6, 11, -6, 1].iter().map(|&c| q.from_i64(c)).collect();
    let alg = Arc::new(FiniteAlgebra::univariate_quotient(q, "x", &coeffs).unwrap());
    let hc = CyclePair::hilbert_chow(alg).unwrap();
    let pushed = pushforward(&hc, &line(), &[MultiPoly::var(q, 1, 0)]).unwrap();
    assert!(pairs_equivalent(&pushed, &cycle(&[(1, 1), (2, 1), (3, 1)]).to_pair().unwrap()).unwrap());
}
