use std::collections::HashMap;

use rayon::prelude::*;

use super::basis::{basis_position, gamma_basis, MultiIndex};
use super::element::GammaElement;
use crate::algebra::finite::FiniteAlgebra;
use crate::algebra::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// `u × v ∈ Γ^{d+e}`, from `γ^α × γ^β = Π_i binom(α_i+β_i, α_i) γ^{α+β}`.
pub fn external_product(u: &GammaElement, v: &GammaElement) -> Result<GammaElement> {
    u.check_compatible(v)?;
    let ring = u.ring();
    let mut out = GammaElement::zero(ring, u.rank(), u.degree() + v.degree());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let c = monomial_product_coeff(ring, a, b);
            out.add_term(a.add(b), &(x * y) * &c);
        }
    }
    Ok(out)
}

fn monomial_product_coeff(ring: Ring, a: &MultiIndex, b: &MultiIndex) -> Scalar {
    let mut c = ring.one();
    for (&ai, &bi) in a.0.iter().zip(&b.0) {
        if ai > 0 && bi > 0 {
            c = &c * &ring.binomial((ai + bi) as u64, ai as u64);
        }
    }
    c
}

/// `γ^d(Σ c_i e_i) = Σ_{|α|=d} (Π c_i^{α_i}) γ^α`.
pub fn gamma_of_vector(ring: Ring, x: &[Scalar], d: usize) -> GammaElement {
    let n = x.len();
    let support: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
    let mut out = GammaElement::zero(ring, n, d);
    if support.is_empty() {
        if d == 0 {
            out.add_term(MultiIndex(vec![0; n]), ring.one());
        }
        return out;
    }
    for sub in gamma_basis(support.len(), d) {
        let mut alpha = vec![0u32; n];
        let mut c = ring.one();
        for (k, &i) in support.iter().enumerate() {
            alpha[i] = sub.0[k];
            c = &c * &x[i].pow(sub.0[k]);
        }
        out.add_term(MultiIndex(alpha), c);
    }
    out
}

/// Product in `Γ^d(B)` for a finite algebra `B`.
///
/// `(×_i γ^{a_i}(e_i)) · (×_j γ^{b_j}(e_j)) = Σ_C ×_{i,j} γ^{C_ij}(e_i e_j)`
/// over non-negative integer matrices `C` with row sums `a` and column sums
/// `b`.
pub fn internal_product(alg: &FiniteAlgebra, u: &GammaElement, v: &GammaElement) -> Result<GammaElement> {
    u.check_compatible(v)?;
    if u.rank() != alg.rank() || u.ring() != alg.ring() {
        return Err(Error::DimensionMismatch(format!(
            "Γ element of rank {} over {} against algebra of rank {} over {}",
            u.rank(),
            u.ring(),
            alg.rank(),
            alg.ring()
        )));
    }
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch(format!("{} vs {}", u.degree(), v.degree())));
    }
    let mut pows = PowerCache::new(alg);
    let mut out = GammaElement::zero(alg.ring(), alg.rank(), u.degree());
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let p = basis_product(&mut pows, a, b);
            let xy = x * y;
            for (g, c) in p.terms() {
                out.add_term(g.clone(), c * &xy);
            }
        }
    }
    Ok(out)
}

/// Memo of `γ^c(e_i e_j)`.
struct PowerCache<'a> {
    alg: &'a FiniteAlgebra,
    memo: HashMap<(usize, usize, u32), GammaElement>,
}

impl<'a> PowerCache<'a> {
    fn new(alg: &'a FiniteAlgebra) -> Self {
        PowerCache { alg, memo: HashMap::new() }
    }

    fn get(&mut self, i: usize, j: usize, c: u32) -> &GammaElement {
        let key = (i.min(j), i.max(j), c);
        let alg = self.alg;
        self.memo.entry(key).or_insert_with(|| {
            let prod = alg.mul_vec(&alg.basis_vector(i), &alg.basis_vector(j));
            gamma_of_vector(alg.ring(), &prod, c as usize)
        })
    }
}

fn basis_product(pows: &mut PowerCache<'_>, a: &MultiIndex, b: &MultiIndex) -> GammaElement {
    let alg = pows.alg;
    let ring = alg.ring();
    let n = alg.rank();
    let rows: Vec<(usize, u32)> = a.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect();
    let cols: Vec<(usize, u32)> = b.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect();
    let mut out = GammaElement::zero(ring, n, a.weight());
    if rows.is_empty() {
        out.add_term(MultiIndex(vec![0; n]), ring.one());
        return out;
    }
    let mut tables = Vec::new();
    let mut table = vec![vec![0u32; cols.len()]; rows.len()];
    let mut col_left: Vec<u32> = cols.iter().map(|c| c.1).collect();
    contingency_tables(&rows, 0, 0, rows[0].1, &mut col_left, &mut table, &mut tables);
    for t in tables {
        let mut acc = GammaElement::unit(ring, n);
        for (r, row) in t.iter().enumerate() {
            for (c, &k) in row.iter().enumerate() {
                if k > 0 {
                    let f = pows.get(rows[r].0, cols[c].0, k).clone();
                    acc = external_product(&acc, &f).expect("same rank");
                    if acc.is_zero() {
                        break;
                    }
                }
            }
        }
        for (g, c) in acc.terms() {
            out.add_term(g.clone(), c.clone());
        }
    }
    out
}

/// Enumerate matrices with prescribed row sums (`rows[r].1`) and column sums
/// (`col_left` initially), filling row-major with row-sum pruning.
fn contingency_tables(
    rows: &[(usize, u32)],
    r: usize,
    c: usize,
    row_left: u32,
    col_left: &mut [u32],
    table: &mut [Vec<u32>],
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    let ncols = col_left.len();
    if c + 1 == ncols {
        // last column takes whatever remains of the row
        if row_left > col_left[c] {
            return;
        }
        table[r][c] = row_left;
        col_left[c] -= row_left;
        if r + 1 == rows.len() {
            if col_left.iter().all(|&x| x == 0) {
                out.push(table.to_vec());
            }
        } else {
            contingency_tables(rows, r + 1, 0, rows[r + 1].1, col_left, table, out);
        }
        col_left[c] += row_left;
        table[r][c] = 0;
        return;
    }
    let remaining_cap: u32 = col_left[c + 1..].iter().sum();
    let lo = row_left.saturating_sub(remaining_cap);
    let hi = row_left.min(col_left[c]);
    for k in lo..=hi {
        table[r][c] = k;
        col_left[c] -= k;
        contingency_tables(rows, r, c + 1, row_left - k, col_left, table, out);
        col_left[c] += k;
    }
    table[r][c] = 0;
}

/// Structure constants of `Γ^d(B)` on its divided-monomial basis, computed
/// once (in parallel over basis rows).
#[derive(Clone, Debug)]
pub struct GammaMultTable {
    pub basis: Vec<MultiIndex>,
    /// `products[p][q]` lists `(position, coefficient)` of `γ^{α_p} · γ^{α_q}`.
    pub products: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl GammaMultTable {
    pub fn new(alg: &FiniteAlgebra, d: usize) -> Self {
        let basis = gamma_basis(alg.rank(), d);
        let products: Vec<Vec<Vec<(usize, Scalar)>>> = (0..basis.len())
            .into_par_iter()
            .map(|p| {
                let mut pows = PowerCache::new(alg);
                (0..basis.len())
                    .map(|q| {
                        if q < p {
                            return Vec::new();
                        }
                        basis_product(&mut pows, &basis[p], &basis[q])
                            .terms()
                            .iter()
                            .map(|(g, c)| (basis_position(&basis, g).expect("weight d"), c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut products = products;
        for p in 0..basis.len() {
            for q in 0..p {
                products[p][q] = products[q][p].clone();
            }
        }
        GammaMultTable { basis, products }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Ring;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn binomial_rule_for_external_product() {
        let q = Ring::Rationals;
        let e1 = GammaElement::monomial(q, mi(&[1, 0]), q.one());
        let e2 = GammaElement::monomial(q, mi(&[0, 1]), q.one());
        let sq = external_product(&e1, &e1).unwrap();
        assert_eq!(sq.coeff(&mi(&[2, 0])), q.from_i64(2));
        assert_eq!(sq.terms().len(), 1);
        let mixed = external_product(&e1, &e2).unwrap();
        assert_eq!(mixed.coeff(&mi(&[1, 1])), q.one());
        let unit = GammaElement::unit(q, 2);
        assert_eq!(external_product(&unit, &mixed).unwrap(), mixed);
    }

    #[test]
    fn gamma_of_vector_examples() {
        let q = Ring::Rationals;
        let g = gamma_of_vector(q, &[q.one(), q.zero(), q.zero()], 3);
        assert_eq!(g, GammaElement::monomial(q, mi(&[3, 0, 0]), q.one()));
        let g = gamma_of_vector(q, &[q.from_i64(2), q.zero()], 2);
        assert_eq!(g, GammaElement::monomial(q, mi(&[2, 0]), q.from_i64(4)));
        let g = gamma_of_vector(q, &[q.one(), q.one()], 2);
        assert_eq!(g.to_dense(), vec![q.one(), q.one(), q.one()]);
        assert!(gamma_of_vector(q, &[q.zero()], 2).is_zero());
    }

    #[test]
    fn contingency_table_count() {
        // 2x2 tables with margins (2,1),(1,2): [[1,1],[0,1]] and [[0,2],[1,0]]
        let mut out = Vec::new();
        let rows = [(0, 2), (1, 1)];
        let mut cols = vec![1, 2];
        let mut t = vec![vec![0; 2]; 2];
        contingency_tables(&rows, 0, 0, 2, &mut cols, &mut t, &mut out);
        assert_eq!(out.len(), 2);
        // 3x3 with all margins 1: the 6 permutation matrices
        let rows = [(0, 1), (1, 1), (2, 1)];
        let mut cols = vec![1, 1, 1];
        let mut t = vec![vec![0; 3]; 3];
        out.clear();
        contingency_tables(&rows, 0, 0, 1, &mut cols, &mut t, &mut out);
        assert_eq!(out.len(), 6);
    }

    #[test]
    fn internal_product_examples() {
        let q = Ring::Rationals;
        // B = Q[x]/(x^3): γ^2(x)·γ^2(x) = γ^2(x^2)
        let alg = FiniteAlgebra::univariate_quotient(q, "x", &[q.zero(), q.zero(), q.zero(), q.one()]).unwrap();
        let x = alg.basis_vector(1);
        let gx = gamma_of_vector(q, &x, 2);
        let prod = internal_product(&alg, &gx, &gx).unwrap();
        assert_eq!(prod, gamma_of_vector(q, &alg.mul_vec(&x, &x), 2));
        // unit law
        let unit = gamma_of_vector(q, alg.one(), 2);
        let u = GammaElement::from_dense(q, 3, 2, &(1..=6).map(|i| q.from_i64(i)).collect::<Vec<_>>()).unwrap();
        assert_eq!(internal_product(&alg, &unit, &u).unwrap(), u);
    }

    #[test]
    fn mixed_product_matches_two_matchings() {
        let q = Ring::Rationals;
        // B = Q^4 with idempotents: x=e0, y=e1, u=e0+e2, v=e1+e3
        let b = FiniteAlgebra::base(q);
        let alg = FiniteAlgebra::product(&[&b, &b, &b, &b]).unwrap();
        let v = |c: [i64; 4]| c.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let (x, y, u, w) = (v([1, 0, 0, 0]), v([0, 1, 0, 0]), v([1, 0, 1, 0]), v([0, 1, 0, 1]));
        let g1 = |a: &[Scalar]| gamma_of_vector(q, a, 1);
        let lhs = internal_product(
            &alg,
            &external_product(&g1(&x), &g1(&y)).unwrap(),
            &external_product(&g1(&u), &g1(&w)).unwrap(),
        )
        .unwrap();
        let rhs = external_product(&g1(&alg.mul_vec(&x, &u)), &g1(&alg.mul_vec(&y, &w)))
            .unwrap()
            .add(&external_product(&g1(&alg.mul_vec(&x, &w)), &g1(&alg.mul_vec(&y, &u))).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mult_table_matches_direct_products() {
        let q = Ring::Rationals;
        let alg = FiniteAlgebra::truncated_polynomial(q, &["x", "y"], 1);
        let t = GammaMultTable::new(&alg, 2);
        for (p, a) in t.basis.iter().enumerate() {
            for (r, b) in t.basis.iter().enumerate() {
                let direct = internal_product(
                    &alg,
                    &GammaElement::monomial(q, a.clone(), q.one()),
                    &GammaElement::monomial(q, b.clone(), q.one()),
                )
                .unwrap();
                let mut dense = vec![q.zero(); t.basis.len()];
                for (k, c) in &t.products[p][r] {
                    dense[*k] = c.clone();
                }
                assert_eq!(direct.to_dense(), dense);
            }
        }
    }
}
