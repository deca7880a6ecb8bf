//! Graded algebras generated in degree one, projective zero cycles and
//! their Chow forms `Ω_l`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::poly::MultiPoly;
use crate::algebra::ring_elem::RingElem;
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::laws::{law_from_evaluator, Carrier, PolyLaw};

use super::ambient::Ambient;
use super::cycle::Cycle;
use super::pair::pairs_equivalent;
use super::point::Point;

/// `A_0 = k, A_1, …, A_L` with multiplication tables `A_l × A_m → A_{l+m}`
/// for `1 ≤ l, m`, `l + m ≤ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    ring: Ring,
    pieces: Vec<Vec<String>>,
    mul: BTreeMap<(usize, usize), Vec<Vec<Vec<Scalar>>>>,
    /// For `l ≥ 2`: pairs `(i, j)` with `e_i ∈ A_1`, `f_j ∈ A_{l−1}` whose
    /// products form a basis of `A_l`, and the matrix expressing the basis
    /// of `A_l` in those products.
    splitting: Vec<(Vec<(usize, usize)>, Matrix)>,
}

impl GradedAlgebra {
    pub fn new(ring: Ring, pieces: Vec<Vec<String>>, mul: BTreeMap<(usize, usize), Vec<Vec<Vec<Scalar>>>>) -> Result<Self> {
        if pieces.first().map(Vec::len) != Some(1) {
            return Err(Error::Malformed("A_0 must have rank 1".into()));
        }
        let top = pieces.len() - 1;
        for l in 1..=top {
            for m in 1..=top - l {
                let table = mul.get(&(l, m)).ok_or_else(|| Error::Malformed(format!("missing multiplication A_{l} x A_{m}")))?;
                let ok = table.len() == pieces[l].len()
                    && table.iter().all(|r| r.len() == pieces[m].len() && r.iter().all(|v| v.len() == pieces[l + m].len()));
                if !ok {
                    return Err(Error::DimensionMismatch(format!("multiplication A_{l} x A_{m} has the wrong shape")));
                }
            }
        }
        if mul.keys().any(|&(l, m)| l == 0 || m == 0 || l + m > top) {
            return Err(Error::Malformed("multiplication table outside the graded range".into()));
        }
        let mut g = GradedAlgebra { ring, pieces, mul, splitting: vec![(vec![], vec![]), (vec![], vec![])] };
        for l in 1..=top {
            for m in 1..=top - l {
                for i in 0..g.pieces[l].len() {
                    for j in 0..g.pieces[m].len() {
                        if g.mul[&(l, m)][i][j] != g.mul[&(m, l)][j][i] {
                            return Err(Error::NotAnAlgebra(format!("A_{l} x A_{m} is not commutative at ({i}, {j})")));
                        }
                    }
                }
                for n in 1..=top - l - m {
                    g.check_associative(l, m, n)?;
                }
            }
        }
        for l in 2..=top {
            let (n1, nprev, nl) = (g.pieces[1].len(), g.pieces[l - 1].len(), g.pieces[l].len());
            let mut chosen: Vec<(usize, usize)> = Vec::new();
            let mut rows: Matrix = Vec::new();
            for i in 0..n1 {
                for j in 0..nprev {
                    let v = g.mul[&(1, l - 1)][i][j].clone();
                    let mut trial = rows.clone();
                    trial.push(v.clone());
                    if linalg::rank(&trial, nl) > rows.len() {
                        rows.push(v);
                        chosen.push((i, j));
                    }
                }
            }
            if rows.len() != nl {
                return Err(Error::NotAnAlgebra(format!("A_1 A_{} does not span A_{l}", l - 1)));
            }
            // columns are the chosen products; invert to express the basis
            let inv = linalg::inverse(ring, &linalg::transpose(&rows)).expect("independent products");
            g.splitting.push((chosen, inv));
        }
        Ok(g)
    }

    /// `k[X_0..X_r]` up to degree `top`; `A_l` has the degree-`l` monomials in
    /// descending lexicographic order (so `A_1` is the variables in order).
    pub fn polynomial(ring: Ring, vars: &[&str], top: usize) -> Result<Self> {
        let monos: Vec<Vec<Vec<u32>>> = (0..=top).map(|l| monomials_desc(vars.len(), l as u32)).collect();
        let pieces = monos
            .iter()
            .map(|ms| {
                ms.iter()
                    .map(|e| {
                        let f: Vec<(&str, u32)> = vars.iter().copied().zip(e.iter().copied()).collect();
                        crate::algebra::finite::monomial_name(&f)
                    })
                    .collect()
            })
            .collect();
        let mut mul = BTreeMap::new();
        for l in 1..=top {
            for m in 1..=top - l {
                let table = monos[l]
                    .iter()
                    .map(|a| {
                        monos[m]
                            .iter()
                            .map(|b| {
                                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                                let pos = monos[l + m].iter().position(|c| *c == e).expect("monomial of degree l+m");
                                (0..monos[l + m].len()).map(|k| if k == pos { ring.one() } else { ring.zero() }).collect()
                            })
                            .collect()
                    })
                    .collect();
                mul.insert((l, m), table);
            }
        }
        GradedAlgebra::new(ring, pieces, mul)
    }

    fn check_associative(&self, l: usize, m: usize, n: usize) -> Result<()> {
        for i in 0..self.pieces[l].len() {
            for j in 0..self.pieces[m].len() {
                for k in 0..self.pieces[n].len() {
                    let (a, b, c) = (self.basis_vector(l, i), self.basis_vector(m, j), self.basis_vector(n, k));
                    let left = self.mul(l + m, n, &self.mul(l, m, &a, &b), &c);
                    let right = self.mul(l, m + n, &a, &self.mul(m, n, &b, &c));
                    if left != right {
                        return Err(Error::NotAnAlgebra(format!("not associative on A_{l} x A_{m} x A_{n} at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn rank(&self, l: usize) -> usize {
        self.pieces[l].len()
    }

    pub fn basis(&self, l: usize) -> &[String] {
        &self.pieces[l]
    }

    pub fn tables(&self) -> &BTreeMap<(usize, usize), Vec<Vec<Vec<Scalar>>>> {
        &self.mul
    }

    pub fn basis_vector(&self, l: usize, i: usize) -> Vec<Scalar> {
        (0..self.rank(l)).map(|k| if k == i { self.ring.one() } else { self.ring.zero() }).collect()
    }

    pub fn mul(&self, l: usize, m: usize, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let zero = self.ring.zero();
        self.mul_generic(l, m, a, b, &zero)
    }

    /// Product of `a ∈ A_l ⊗ T` and `b ∈ A_m ⊗ T`.
    pub fn mul_generic<T: RingElem>(&self, l: usize, m: usize, a: &[T], b: &[T], zero: &T) -> Vec<T> {
        if l == 0 {
            return b.iter().map(|x| x.mul_ref(&a[0])).collect();
        }
        if m == 0 {
            return a.iter().map(|x| x.mul_ref(&b[0])).collect();
        }
        let table = &self.mul[&(l, m)];
        let mut out = vec![zero.clone(); self.rank(l + m)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul_ref(y);
                for (k, c) in table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].add_ref(&xy.scale(c));
                    }
                }
            }
        }
        out
    }
}

fn monomials_desc(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for rest in monomials_desc(n - 1, d - first) {
            let mut e = vec![first];
            e.extend(rest);
            out.push(e);
        }
    }
    out
}

/// A zero cycle on `Proj A`: each point is a residue field with the images
/// of the basis of `A_1`, normalised so the last nonzero image is `1`.
#[derive(Clone, Debug)]
pub struct ProjectiveCycle {
    graded: Arc<GradedAlgebra>,
    points: Vec<(Point, u32)>,
    /// Per point, the images of the bases of `A_0..A_L`.
    evaluations: Vec<Vec<Vec<Vec<Scalar>>>>,
}

impl ProjectiveCycle {
    pub fn new(graded: Arc<GradedAlgebra>, points: Vec<(Point, u32)>) -> Result<Self> {
        let mut normalised = Vec::with_capacity(points.len());
        let mut evaluations = Vec::with_capacity(points.len());
        for (idx, (p, mult)) in points.into_iter().enumerate() {
            if mult == 0 {
                return Err(Error::Malformed("point multiplicity must be positive".into()));
            }
            if p.residue().ring() != graded.ring() {
                return Err(Error::RingMismatch("point and graded algebra over different rings".into()));
            }
            if p.coords().len() != graded.rank(1) {
                return Err(Error::MalformedProjectivePoint(format!(
                    "point {idx} has {} coordinates for A_1 of rank {}",
                    p.coords().len(),
                    graded.rank(1)
                )));
            }
            let k = p.residue();
            let last = p
                .coords()
                .iter()
                .rposition(|c| c.iter().any(|x| !x.is_zero()))
                .ok_or_else(|| Error::MalformedProjectivePoint(format!("point {idx} annihilates all of A_1")))?;
            let inv = k.inverse_of(&p.coords()[last]).ok_or_else(|| Error::NotAField(format!("point {idx}: zero divisor")))?;
            let coords: Vec<Vec<Scalar>> = p.coords().iter().map(|c| k.mul_vec(c, &inv)).collect();
            let point = Point::new(graded.ring(), p.minpoly(), &coords)?;
            let ev = evaluate_levels(&graded, &point, idx)?;
            normalised.push((point, mult));
            evaluations.push(ev);
        }
        Ok(ProjectiveCycle { graded, points: normalised, evaluations })
    }

    pub fn graded(&self) -> &Arc<GradedAlgebra> {
        &self.graded
    }

    pub fn points(&self) -> &[(Point, u32)] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.iter().map(|(p, d)| p.degree() * *d as usize).sum()
    }

    /// `F(x)` in the residue field of point `i` for `F ∈ A_l ⊗ T`.
    fn evaluate<T: RingElem>(&self, i: usize, l: usize, f: &[T], zero: &T) -> Vec<T> {
        let k = self.points[i].0.residue();
        let mut out = vec![zero.clone(); k.rank()];
        for (c, image) in f.iter().zip(&self.evaluations[i][l]) {
            for (o, x) in out.iter_mut().zip(image) {
                if !x.is_zero() {
                    *o = o.add_ref(&c.scale(x));
                }
            }
        }
        out
    }

    /// `F ↦ Π N(F(x_i))^{d_i}` on `A_l ⊗ T`.
    pub fn norm_generic<T: RingElem>(&self, l: usize, f: &[T], zero: &T) -> T {
        self.points.iter().enumerate().fold(zero.one_like(), |acc, (i, (p, d))| {
            acc.mul_ref(&p.norm_generic(&self.evaluate(i, l, f, zero), zero).pow_u32(*d))
        })
    }

    /// The same points as an affine cycle on the chart `ℓ ≠ 0`, with
    /// coordinates `y_j = e_j / ℓ` for every basis element of `A_1`.
    pub fn affine_chart(&self, ell: &[Scalar]) -> Result<Cycle> {
        let names: Vec<String> = (0..self.graded.rank(1)).map(|j| format!("y{j}")).collect();
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let ambient = Ambient::polynomial(self.graded.ring(), &vars);
        let mut points = Vec::with_capacity(self.points.len());
        for (i, (p, d)) in self.points.iter().enumerate() {
            let k = p.residue();
            let denom = self.evaluate(i, 1, ell, &self.graded.ring().zero());
            let inv = k.inverse_of(&denom).ok_or_else(|| Error::MalformedProjectivePoint(format!("point {i} lies on the chart boundary")))?;
            let coords: Vec<Vec<Scalar>> = self.evaluations[i][1].iter().map(|c| k.mul_vec(c, &inv)).collect();
            points.push((Point::new(self.graded.ring(), p.minpoly(), &coords)?, *d));
        }
        Cycle::new(ambient, points)
    }
}

fn evaluate_levels(g: &GradedAlgebra, p: &Point, idx: usize) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let k = p.residue();
    let mut levels = vec![vec![k.one().to_vec()], p.coords().to_vec()];
    for l in 2..=g.top_degree() {
        let (chosen, inv) = &g.splitting[l];
        let products: Vec<Vec<Scalar>> = chosen.iter().map(|&(i, j)| k.mul_vec(&levels[1][i], &levels[l - 1][j])).collect();
        let images: Vec<Vec<Scalar>> = (0..g.rank(l))
            .map(|b| {
                let mut acc = k.zero_vector();
                for (c, v) in (0..chosen.len()).map(|r| &inv[r][b]).zip(&products) {
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a = &*a + &(c * x);
                    }
                }
                acc
            })
            .collect();
        // every product must evaluate consistently: the point lies on Proj A
        for i in 0..g.rank(1) {
            for j in 0..g.rank(l - 1) {
                let lhs = k.mul_vec(&levels[1][i], &levels[l - 1][j]);
                let mut rhs = k.zero_vector();
                for (c, v) in g.mul[&(1, l - 1)][i][j].iter().zip(&images) {
                    for (a, x) in rhs.iter_mut().zip(v) {
                        *a = &*a + &(c * x);
                    }
                }
                if lhs != rhs {
                    return Err(Error::MalformedProjectivePoint(format!("point {idx} violates a relation in degree {l}")));
                }
            }
        }
        levels.push(images);
    }
    Ok(levels)
}

/// `Ω_l`: the coefficients of `F ↦ Π N(F(x_i))^{d_i}` on `Γ^d(A_l)`.
pub fn chow_form(cycle: &ProjectiveCycle, l: usize) -> Result<PolyLaw> {
    if l > cycle.graded.top_degree() {
        return Err(Error::DegreeMismatch(format!("level {l} exceeds the graded algebra's top degree")));
    }
    let ring = cycle.graded.ring();
    law_from_evaluator(Carrier::Module { ring, rank: cycle.graded.rank(l) }, cycle.degree(), |t| {
        let zero = MultiPoly::zero(ring, t.len());
        cycle.norm_generic(l, t, &zero)
    })
}

/// `a = c·b` for a single nonzero `c`.
pub fn projectively_equal(a: &PolyLaw, b: &PolyLaw) -> bool {
    if a.carrier() != b.carrier() || a.degree() != b.degree() {
        return false;
    }
    let Some(pos) = b.psi().iter().position(|x| !x.is_zero()) else {
        return a.psi().iter().all(Scalar::is_zero);
    };
    let Ok(c) = a.psi()[pos].checked_div(&b.psi()[pos]) else {
        return false;
    };
    !c.is_zero() && a.psi().iter().zip(b.psi()).all(|(x, y)| *x == &c * y)
}

/// `Ω_{l+m}(φφ') = Ω_l(φ)Ω_m(φ')` for generic `φ ∈ A_l`, `φ' ∈ A_m`, hence on
/// all products of basis forms.
pub fn chow_multiplicativity_check(
    graded: &GradedAlgebra,
    l: usize,
    m: usize,
    omega_l: &PolyLaw,
    omega_m: &PolyLaw,
    omega_lm: &PolyLaw,
) -> Result<bool> {
    let ring = graded.ring();
    if l + m > graded.top_degree() {
        return Err(Error::DegreeMismatch(format!("level {} exceeds the graded algebra's top degree", l + m)));
    }
    for (form, level) in [(omega_l, l), (omega_m, m), (omega_lm, l + m)] {
        if form.rank() != graded.rank(level) {
            return Err(Error::DimensionMismatch(format!("form for level {level} has the wrong rank")));
        }
    }
    let (nl, nm) = (graded.rank(l), graded.rank(m));
    let nv = nl + nm;
    let zero = MultiPoly::zero(ring, nv);
    let phi: Vec<MultiPoly> = (0..nl).map(|i| MultiPoly::var(ring, nv, i)).collect();
    let psi: Vec<MultiPoly> = (0..nm).map(|j| MultiPoly::var(ring, nv, nl + j)).collect();
    let prod = graded.mul_generic(l, m, &phi, &psi, &zero);
    let lhs = omega_lm.evaluate_generic(&prod, &zero);
    let rhs = omega_l.evaluate_generic(&phi, &zero).mul_ref(&omega_m.evaluate_generic(&psi, &zero));
    Ok(lhs == rhs)
}

/// Outcome of comparing two projective cycles through `Ω_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChowComparison {
    DegreesDiffer,
    Compared { forms_equal: bool, cycles_equivalent: bool },
}

impl ChowComparison {
    /// Equal forms exactly when the cycles are equivalent.
    pub fn consistent(&self) -> bool {
        match self {
            ChowComparison::DegreesDiffer => true,
            ChowComparison::Compared { forms_equal, cycles_equivalent } => forms_equal == cycles_equivalent,
        }
    }
}

pub fn chow_determines_cycle(a: &ProjectiveCycle, b: &ProjectiveCycle, l: usize) -> Result<ChowComparison> {
    if a.graded != b.graded {
        return Err(Error::AmbientMismatch("projective cycles in different graded algebras".into()));
    }
    if a.degree() != b.degree() {
        return Ok(ChowComparison::DegreesDiffer);
    }
    let forms_equal = projectively_equal(&chow_form(a, l)?, &chow_form(b, l)?);
    let ell = common_chart(a, b)?;
    let pa = a.affine_chart(&ell)?.to_pair()?;
    let pb = b.affine_chart(&ell)?.to_pair()?;
    let cycles_equivalent = pairs_equivalent(&pa, &pb)?;
    Ok(ChowComparison::Compared { forms_equal, cycles_equivalent })
}

/// A linear form in `A_1` not vanishing at any point of either cycle.
fn common_chart(a: &ProjectiveCycle, b: &ProjectiveCycle) -> Result<Vec<Scalar>> {
    let ring = a.graded.ring();
    let n = a.graded.rank(1);
    let mut candidates: Vec<Vec<Scalar>> = (0..n).rev().map(|i| a.graded.basis_vector(1, i)).collect();
    for s in 1..=8i64 {
        candidates.push((0..n).map(|j| ring.from_i64(s.pow(j as u32))).collect());
        candidates.push((0..n).map(|j| ring.from_i64(1 + s * j as i64)).collect());
    }
    let vanishes = |c: &ProjectiveCycle, ell: &[Scalar]| {
        (0..c.points.len()).any(|i| c.evaluate(i, 1, ell, &ring.zero()).iter().all(Scalar::is_zero))
    };
    candidates
        .into_iter()
        .find(|ell| !vanishes(a, ell) && !vanishes(b, ell))
        .ok_or_else(|| Error::MalformedProjectivePoint("no common affine chart among the candidates".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::basis::MultiIndex;

    fn q(n: i64) -> Scalar {
        Ring::Rationals.from_i64(n)
    }

    fn line(top: usize) -> Arc<GradedAlgebra> {
        Arc::new(GradedAlgebra::polynomial(Ring::Rationals, &["X", "Y"], top).unwrap())
    }

    fn points(g: &Arc<GradedAlgebra>, pts: &[(i64, i64, u32)]) -> ProjectiveCycle {
        let r = Ring::Rationals;
        ProjectiveCycle::new(
            g.clone(),
            pts.iter().map(|&(a, b, d)| (Point::rational(&[q(a), q(b)], r).unwrap(), d)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn polynomial_pieces() {
        let g = line(3);
        assert_eq!(g.basis(1), &["X", "Y"]);
        assert_eq!(g.basis(2), &["X^2", "X*Y", "Y^2"]);
        assert_eq!(g.rank(3), 4);
    }

    #[test]
    fn two_point_example() {
        let g = line(3);
        let c = points(&g, &[(0, 1, 1), (1, 1, 1)]);
        let omega = chow_form(&c, 1).unwrap();
        // labelled: γ²(X) → 0, γ¹(X)γ¹(Y) → 1, γ²(Y) → 1
        let at = |a: &[u32]| omega.psi_at(&MultiIndex(a.to_vec()));
        assert_eq!((at(&[2, 0]), at(&[1, 1]), at(&[0, 2])), (q(0), q(1), q(1)));
        // scaling a point's coordinates changes nothing after normalisation
        let scaled = points(&g, &[(0, 3, 1), (-2, -2, 1)]);
        assert_eq!(chow_form(&scaled, 1).unwrap(), omega);
        let omega0 = chow_form(&c, 0).unwrap();
        assert_eq!(omega0.psi(), &[q(1)][..]);
        for (l, m) in [(1, 1), (1, 2), (0, 2)] {
            let (a, b, ab) = (chow_form(&c, l).unwrap(), chow_form(&c, m).unwrap(), chow_form(&c, l + m).unwrap());
            assert!(chow_multiplicativity_check(&g, l, m, &a, &b, &ab).unwrap());
        }
        let mut psi = omega.psi().to_vec();
        psi[0] = &psi[0] + &q(1);
        let corrupted = PolyLaw::new(omega.carrier().clone(), 2, psi).unwrap();
        let omega2 = chow_form(&c, 2).unwrap();
        assert!(!chow_multiplicativity_check(&g, 1, 1, &corrupted, &omega, &omega2).unwrap());
    }

    #[test]
    fn repeated_point() {
        let g = line(1);
        let c = points(&g, &[(0, 1, 3)]);
        let omega = chow_form(&c, 1).unwrap();
        assert_eq!(omega.psi_at(&MultiIndex(vec![0, 3])), q(1));
        assert_eq!(omega.psi().iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn forms_separate_cycles() {
        let g = line(1);
        let a = points(&g, &[(0, 1, 1), (1, 0, 1)]);
        let b = points(&g, &[(0, 1, 2)]);
        let cmp = chow_determines_cycle(&a, &b, 1).unwrap();
        assert_eq!(cmp, ChowComparison::Compared { forms_equal: false, cycles_equivalent: false });
        let a2 = points(&g, &[(1, 0, 1), (0, 5, 1)]);
        let cmp = chow_determines_cycle(&a, &a2, 1).unwrap();
        assert_eq!(cmp, ChowComparison::Compared { forms_equal: true, cycles_equivalent: true });
        assert_eq!(chow_determines_cycle(&a, &points(&g, &[(1, 1, 1)]), 1).unwrap(), ChowComparison::DegreesDiffer);
    }

    #[test]
    fn bad_points() {
        let g = line(1);
        let r = Ring::Rationals;
        let zero = Point::rational(&[q(0), q(0)], r).unwrap();
        assert!(matches!(ProjectiveCycle::new(g, vec![(zero, 1)]), Err(Error::MalformedProjectivePoint(_))));
    }
}
