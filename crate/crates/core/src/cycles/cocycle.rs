//! Čech data for an invertible module over a cover, and its norm: apply
//! the law of each overlap to the transition functions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::finite::{AlgebraMorphism, FiniteAlgebra};
use crate::algebra::scalar::Scalar;
use crate::error::{Error, Result};
use crate::laws::PolyLaw;

#[derive(Clone, Debug)]
pub struct Overlap {
    pub algebra: Arc<FiniteAlgebra>,
    pub law: PolyLaw,
    /// Restrictions from `B_i` and from `B_j`.
    pub restrict: [AlgebraMorphism; 2],
    /// `φ_ij`, an invertible element of `B_ij`.
    pub transition: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct TripleOverlap {
    pub algebra: Arc<FiniteAlgebra>,
    /// Restrictions from `B_ij`, `B_jk` and `B_ik`.
    pub restrict: [AlgebraMorphism; 3],
}

/// Pieces `(B_i, n_i)`, overlaps indexed by `i < j` (with `φ_ji = φ_ij^{-1}`
/// and `φ_ii = 1` implicit), and triple overlaps indexed by `i < j < k`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    degree: usize,
    pieces: Vec<(Arc<FiniteAlgebra>, PolyLaw)>,
    overlaps: BTreeMap<(usize, usize), Overlap>,
    triples: BTreeMap<(usize, usize, usize), TripleOverlap>,
}

impl Cocycle {
    pub fn new(
        pieces: Vec<(Arc<FiniteAlgebra>, PolyLaw)>,
        overlaps: BTreeMap<(usize, usize), Overlap>,
        triples: BTreeMap<(usize, usize, usize), TripleOverlap>,
    ) -> Result<Self> {
        let degree = pieces.first().map(|(_, n)| n.degree()).ok_or_else(|| Error::Malformed("empty cover".into()))?;
        for (i, (alg, law)) in pieces.iter().enumerate() {
            if law.degree() != degree || law.algebra()?.as_ref() != alg.as_ref() {
                return Err(Error::Malformed(format!("piece {i} carries a law of another degree or algebra")));
            }
        }
        for (&(i, j), ov) in &overlaps {
            if i >= j || j >= pieces.len() {
                return Err(Error::Malformed(format!("overlap ({i}, {j}) is not an ordered pair of pieces")));
            }
            if ov.law.degree() != degree || ov.law.algebra()?.as_ref() != ov.algebra.as_ref() {
                return Err(Error::Malformed(format!("overlap ({i}, {j}) carries a mismatched law")));
            }
            for (side, piece) in [(0, i), (1, j)] {
                let r = &ov.restrict[side];
                if !r.source().same_structure(&pieces[piece].0) || !r.target().same_structure(&ov.algebra) {
                    return Err(Error::AmbientMismatch(format!("restriction into overlap ({i}, {j}) from piece {piece}")));
                }
                if ov.law.pullback(r)? != pieces[piece].1 {
                    return Err(Error::AmbientMismatch(format!(
                        "law on overlap ({i}, {j}) does not restrict the law of piece {piece}"
                    )));
                }
            }
            if ov.algebra.inverse_of(&ov.transition).is_none() {
                return Err(Error::NonInvertibleTransition(vec![i, j]));
            }
        }
        for (&(i, j, k), tr) in &triples {
            let pairs = [(i, j), (j, k), (i, k)];
            let mut images = Vec::with_capacity(3);
            for (slot, p) in pairs.iter().enumerate() {
                let ov = overlaps.get(p).ok_or_else(|| Error::Malformed(format!("triple ({i}, {j}, {k}) lacks overlap {p:?}")))?;
                let r = &tr.restrict[slot];
                if !r.source().same_structure(&ov.algebra) || !r.target().same_structure(&tr.algebra) {
                    return Err(Error::AmbientMismatch(format!("restriction into triple ({i}, {j}, {k})")));
                }
                images.push(r.apply(&ov.transition));
            }
            if tr.algebra.mul_vec(&images[0], &images[1]) != images[2] {
                return Err(Error::CocycleCondition(vec![i, j, k]));
            }
        }
        Ok(Cocycle { degree, pieces, overlaps, triples })
    }

    /// Every piece, overlap and triple overlap is `alg` with identity
    /// restrictions; triples are present wherever all three overlaps are.
    pub fn uniform(alg: Arc<FiniteAlgebra>, law: PolyLaw, npieces: usize, transitions: BTreeMap<(usize, usize), Vec<Scalar>>) -> Result<Self> {
        let id = AlgebraMorphism::identity(alg.clone());
        let pieces = vec![(alg.clone(), law.clone()); npieces];
        let overlaps: BTreeMap<(usize, usize), Overlap> = transitions
            .into_iter()
            .map(|(p, phi)| {
                if phi.len() != alg.rank() {
                    return Err(Error::DimensionMismatch(format!("transition on overlap {p:?} has the wrong length")));
                }
                Ok((p, Overlap { algebra: alg.clone(), law: law.clone(), restrict: [id.clone(), id.clone()], transition: phi }))
            })
            .collect::<Result<_>>()?;
        let mut triples = BTreeMap::new();
        for i in 0..npieces {
            for j in i + 1..npieces {
                for k in j + 1..npieces {
                    if [(i, j), (j, k), (i, k)].iter().all(|p| overlaps.contains_key(p)) {
                        triples.insert((i, j, k), TripleOverlap { algebra: alg.clone(), restrict: [id.clone(), id.clone(), id.clone()] });
                    }
                }
            }
        }
        Cocycle::new(pieces, overlaps, triples)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn npieces(&self) -> usize {
        self.pieces.len()
    }

    pub fn overlaps(&self) -> &BTreeMap<(usize, usize), Overlap> {
        &self.overlaps
    }

    /// Multiply `φ_ij` by a base scalar.
    pub fn scale_transition(&self, pair: (usize, usize), u: &Scalar) -> Result<Cocycle> {
        let mut overlaps = self.overlaps.clone();
        let ov = overlaps.get_mut(&pair).ok_or_else(|| Error::Malformed(format!("no overlap {pair:?}")))?;
        ov.transition = ov.transition.iter().map(|c| c * u).collect();
        Cocycle::new(self.pieces.clone(), overlaps, self.triples.clone())
    }

    /// Transitions multiplied overlapwise; the covers must agree.
    pub fn tensor(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.overlaps.keys().ne(other.overlaps.keys()) || self.pieces.len() != other.pieces.len() {
            return Err(Error::AmbientMismatch("cocycles on different covers".into()));
        }
        let mut overlaps = self.overlaps.clone();
        for (p, ov) in overlaps.iter_mut() {
            let o = &other.overlaps[p];
            if !o.algebra.same_structure(&ov.algebra) {
                return Err(Error::AmbientMismatch(format!("overlap {p:?} differs between the cocycles")));
            }
            ov.transition = ov.algebra.mul_vec(&ov.transition, &o.transition);
        }
        Cocycle::new(self.pieces.clone(), overlaps, self.triples.clone())
    }
}

/// A cocycle of units of the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCocycle {
    pub npieces: usize,
    pub transitions: BTreeMap<(usize, usize), Scalar>,
    pub triples: BTreeSet<(usize, usize, usize)>,
}

impl BaseCocycle {
    /// `t_ij t_jk = t_ik` on every triple overlap; the first failure if any.
    pub fn cocycle_failure(&self) -> Option<(usize, usize, usize)> {
        self.triples
            .iter()
            .copied()
            .find(|&(i, j, k)| &self.transitions[&(i, j)] * &self.transitions[&(j, k)] != self.transitions[&(i, k)])
    }

    pub fn satisfies_cocycle_identity(&self) -> bool {
        self.cocycle_failure().is_none()
    }

    pub fn is_trivial(&self) -> bool {
        self.transitions.values().all(Scalar::is_one)
    }
}

/// `t_ij = n_ij(φ_ij)`.
pub fn norm_cocycle(c: &Cocycle) -> Result<BaseCocycle> {
    let mut transitions = BTreeMap::new();
    for (&(i, j), ov) in &c.overlaps {
        let t = ov.law.value(&ov.transition);
        if t.inv().is_none() {
            return Err(Error::NonInvertibleTransition(vec![i, j]));
        }
        transitions.insert((i, j), t);
    }
    Ok(BaseCocycle { npieces: c.pieces.len(), transitions, triples: c.triples.keys().copied().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;
    use crate::laws::determinant_law;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    fn rank_two() -> Arc<FiniteAlgebra> {
        // Q[x]/(x^2 - 3x + 2)
        Arc::new(FiniteAlgebra::univariate_quotient(Ring::Rationals, "x", &[q(2), q(-3), q(1)]).unwrap())
    }

    #[test]
    fn two_piece_transition_is_a_determinant() {
        let b = rank_two();
        let law = determinant_law(&b).unwrap();
        let c = Cocycle::uniform(b.clone(), law, 2, BTreeMap::from([((0, 1), vec![q(0), q(1)])])).unwrap();
        let out = norm_cocycle(&c).unwrap();
        // det of multiplication by x: roots 1 and 2
        assert_eq!(out.transitions[&(0, 1)], q(2));
        let scaled = norm_cocycle(&c.scale_transition((0, 1), &q(5)).unwrap()).unwrap();
        assert_eq!(scaled.transitions[&(0, 1)], q(50));
        let sq = norm_cocycle(&c.tensor(&c).unwrap()).unwrap();
        assert_eq!(sq.transitions[&(0, 1)], q(4));
    }

    #[test]
    fn trivial_and_failing_inputs() {
        let b = rank_two();
        let law = determinant_law(&b).unwrap();
        let ones = BTreeMap::from([((0, 1), vec![q(1), q(0)]), ((1, 2), vec![q(1), q(0)]), ((0, 2), vec![q(1), q(0)])]);
        let out = norm_cocycle(&Cocycle::uniform(b.clone(), law.clone(), 3, ones).unwrap()).unwrap();
        assert!(out.is_trivial() && out.satisfies_cocycle_identity());
        // x − 1 is a zero divisor
        let bad = BTreeMap::from([((0, 1), vec![q(-1), q(1)])]);
        assert_eq!(Cocycle::uniform(b.clone(), law.clone(), 2, bad).unwrap_err(), Error::NonInvertibleTransition(vec![0, 1]));
        let broken = BTreeMap::from([((0, 1), vec![q(2), q(0)]), ((1, 2), vec![q(1), q(0)]), ((0, 2), vec![q(1), q(0)])]);
        assert_eq!(Cocycle::uniform(b, law, 3, broken).unwrap_err(), Error::CocycleCondition(vec![0, 1, 2]));
    }
}
