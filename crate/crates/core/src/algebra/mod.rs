//! Graded algebras truncated at a cutoff degree, held as explicit bases and
//! multiplication tables.
//!
//! Every algebra is a quotient of an ambient algebra with a monomial basis:
//! words in the generators (free algebras and monomial quotients, where a
//! word containing a forbidden subword is zero) or ordered PBW monomials of
//! a quantum affine space `x_j x_i = p_ij x_i x_j`. Quotients by a sequence
//! of normal elements are computed degree by degree by row reduction in the
//! ambient basis.

mod betti;
mod presentation;
mod trace;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::Zero;

pub use betti::{
    betti_numbers, euler_check, growth_estimate, tor_inequality_check, BettiTable, GrowthHint, TorInequality,
};
pub use presentation::{AlgebraKind, AlgebraPresentation, Monomial, NormalElement};
pub use trace::{brute_force_trace, degree_actions, invariant_dims};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Sparse vector: `(index, coefficient)` pairs with nonzero coefficients.
pub type Sparse<F> = Vec<(usize, F)>;

/// How an ambient monomial of one degree reduces into the quotient basis.
#[derive(Clone, Debug)]
struct DegreeData<F> {
    ambient: Vec<Monomial>,
    ambient_index: HashMap<Monomial, usize>,
    /// Ambient indices of the standard monomials, in basis order.
    standard: Vec<usize>,
    /// Normal form of each ambient monomial in the quotient basis.
    normal_forms: Vec<Sparse<F>>,
}

/// Multiplication of basis elements `A_i × A_j → A_{i+j}`; entry
/// `u * dim_j + v` is the product of the `u`-th and `v`-th basis elements.
type Table<F> = Vec<Sparse<F>>;

/// Bases and multiplication tables of `A_0, …, A_N`.
#[derive(Debug)]
pub struct GradedAlgebraTruncation<F> {
    presentation: AlgebraPresentation<F>,
    cutoff: usize,
    degrees: Vec<DegreeData<F>>,
    tables: Vec<Vec<OnceLock<Table<F>>>>,
}

fn add_scaled<F: Field>(acc: &mut [F], v: &Sparse<F>, c: &F) {
    for (i, x) in v {
        acc[*i] = acc[*i].clone() + x.clone() * c.clone();
    }
}

fn to_sparse<F: Field>(v: Vec<F>) -> Sparse<F> {
    v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Incrementally maintained row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - c.clone() * r.clone();
                    }
                }
            }
        }
        v
    }

    /// Add `v`; returns whether the span grew.
    pub(crate) fn insert(&mut self, v: Vec<F>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().unwrap();
        let v: Vec<F> = v.into_iter().map(|x| x * inv.clone()).collect();
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = x.clone() - c.clone() * r.clone();
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Whether `v` lies in the row space of `rows`.
fn in_span<F: Field>(rows: &[Vec<F>], v: &[F], width: usize) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let base = Matrix::from_rows(rows.to_vec()).rank();
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    debug_assert!(ext.iter().all(|r| r.len() == width));
    Matrix::from_rows(ext).rank() == base
}

impl<F: Field> GradedAlgebraTruncation<F> {
    /// Build bases and reductions through degree `cutoff`, verifying
    /// normality and regularity of each normal element up to the cutoff.
    pub fn build(presentation: &AlgebraPresentation<F>, cutoff: usize) -> Result<Self> {
        presentation.validate()?;
        let p = presentation;
        let mut ambient: Vec<Vec<Monomial>> = (0..=cutoff).map(|d| p.ambient_monomials(d)).collect();
        for m in &mut ambient {
            m.sort();
        }
        let index: Vec<HashMap<Monomial, usize>> = ambient
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        // Row-reduced spanning rows of the ideal in each degree.
        let mut ideal: Vec<Vec<Vec<F>>> = vec![Vec::new(); cutoff + 1];
        let amb_vec = |d: usize, terms: Vec<(F, Monomial)>| -> Vec<F> {
            let mut v = vec![F::zero(); ambient[d].len()];
            for (c, m) in terms {
                let i = index[d][&m];
                v[i] = v[i].clone() + c;
            }
            v
        };
        for (k, omega) in p.relations().iter().enumerate() {
            let e = omega.degree(p.degrees());
            let mut next = ideal.clone();
            for d in e..=cutoff {
                let mut rows = ideal[d].clone();
                for m in &ambient[d - e] {
                    rows.push(amb_vec(d, p.ambient_mul_sum(&omega.terms, &[(F::one(), m.clone())])));
                }
                let reduced = reduce_rows(rows);
                let prev_rank = ideal[d].len();
                let source_dim = ambient[d - e].len() - ideal[d - e].len();
                if reduced.len() - prev_rank != source_dim {
                    return Err(Error::NotRegular { index: k, degree: d });
                }
                next[d] = reduced;
            }
            // x_i Ω ∈ Ω C + I_{k-1} and Ω x_i ∈ C Ω + I_{k-1}
            for (i, &di) in p.degrees().iter().enumerate() {
                let d = e + di;
                if d > cutoff {
                    continue;
                }
                let xi = vec![(F::one(), p.generator_monomial(i))];
                let left = amb_vec(d, p.ambient_mul_sum(&xi, &omega.terms));
                if !in_span(&next[d], &left, ambient[d].len()) {
                    return Err(Error::NotNormal {
                        index: k,
                        detail: format!("{} * Ω not in Ω·C at degree {d}", p.generator_name(i)),
                    });
                }
                let mut rows = ideal[d].clone();
                for m in &ambient[di] {
                    rows.push(amb_vec(d, p.ambient_mul_sum(&[(F::one(), m.clone())], &omega.terms)));
                }
                let right = amb_vec(d, p.ambient_mul_sum(&omega.terms, &xi));
                if !in_span(&rows, &right, ambient[d].len()) {
                    return Err(Error::NotNormal {
                        index: k,
                        detail: format!("Ω * {} not in C·Ω at degree {d}", p.generator_name(i)),
                    });
                }
            }
            ideal = next;
        }
        let degrees = ambient
            .into_iter()
            .zip(index)
            .zip(ideal)
            .map(|((amb, idx), rows)| degree_data(amb, idx, rows))
            .collect::<Vec<_>>();
        let tables = (0..=cutoff).map(|i| (0..=cutoff - i).map(|_| OnceLock::new()).collect()).collect();
        Ok(GradedAlgebraTruncation { presentation: presentation.clone(), cutoff, degrees, tables })
    }

    pub fn presentation(&self) -> &AlgebraPresentation<F> {
        &self.presentation
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self, d: usize) -> usize {
        self.degrees[d].standard.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.cutoff).map(|d| self.dim(d)).collect()
    }

    /// Monomials spanning `A_d`.
    pub fn basis(&self, d: usize) -> Vec<&Monomial> {
        let data = &self.degrees[d];
        data.standard.iter().map(|&i| &data.ambient[i]).collect()
    }

    pub fn basis_labels(&self, d: usize) -> Vec<String> {
        self.basis(d).into_iter().map(|m| self.presentation.label(m)).collect()
    }

    /// Normal form of an ambient monomial of degree `d`.
    pub fn reduce_monomial(&self, d: usize, m: &Monomial) -> Sparse<F> {
        match self.degrees[d].ambient_index.get(m) {
            Some(&i) => self.degrees[d].normal_forms[i].clone(),
            None => Vec::new(),
        }
    }

    /// Normal form of a combination of ambient monomials of degree `d`.
    pub fn reduce(&self, d: usize, terms: &[(F, Monomial)]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim(d)];
        for (c, m) in terms {
            add_scaled(&mut out, &self.reduce_monomial(d, m), c);
        }
        out
    }

    fn table(&self, i: usize, j: usize) -> &Table<F> {
        self.tables[i][j].get_or_init(|| {
            let (bi, bj) = (self.basis(i), self.basis(j));
            let mut out = Vec::with_capacity(bi.len() * bj.len());
            for u in &bi {
                for v in &bj {
                    out.push(match self.presentation.ambient_mul(u, v) {
                        Some((c, w)) => self.reduce_monomial(i + j, &w).into_iter().map(|(k, x)| (k, x * c.clone())).collect(),
                        None => Vec::new(),
                    });
                }
            }
            out
        })
    }

    /// Product of basis elements `u ∈ A_i`, `v ∈ A_j`.
    pub fn basis_product(&self, i: usize, u: usize, j: usize, v: usize) -> &Sparse<F> {
        &self.table(i, j)[u * self.dim(j) + v]
    }

    /// Product of `a ∈ A_i` and `b ∈ A_j` in coordinates; `i + j` must not
    /// exceed the cutoff.
    pub fn mul(&self, i: usize, a: &[F], j: usize, b: &[F]) -> Vec<F> {
        assert!(i + j <= self.cutoff, "product degree {} exceeds cutoff {}", i + j, self.cutoff);
        let table = self.table(i, j);
        let dj = self.dim(j);
        let mut out = vec![F::zero(); self.dim(i + j)];
        for (u, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (v, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    add_scaled(&mut out, &table[u * dj + v], &(x.clone() * y.clone()));
                }
            }
        }
        out
    }

    /// Product of sparse elements `a ∈ A_i`, `b ∈ A_j`.
    pub fn mul_sparse(&self, i: usize, a: &Sparse<F>, j: usize, b: &Sparse<F>) -> Sparse<F> {
        assert!(i + j <= self.cutoff, "product degree {} exceeds cutoff {}", i + j, self.cutoff);
        let table = self.table(i, j);
        let dj = self.dim(j);
        let mut out = vec![F::zero(); self.dim(i + j)];
        for (u, x) in a {
            for (v, y) in b {
                add_scaled(&mut out, &table[u * dj + v], &(x.clone() * y.clone()));
            }
        }
        to_sparse(out)
    }

    /// `(a b) c = a (b c)` on all basis triples of the given degrees.
    pub fn check_associativity(&self, i: usize, j: usize, k: usize) -> bool {
        if i + j + k > self.cutoff {
            return true;
        }
        let unit = |d: usize, u: usize| {
            let mut v = vec![F::zero(); self.dim(d)];
            v[u] = F::one();
            v
        };
        for a in 0..self.dim(i) {
            for b in 0..self.dim(j) {
                let ab = self.mul(i, &unit(i, a), j, &unit(j, b));
                for c in 0..self.dim(k) {
                    let left = self.mul(i + j, &ab, k, &unit(k, c));
                    let bc = self.mul(j, &unit(j, b), k, &unit(k, c));
                    if left != self.mul(i, &unit(i, a), j + k, &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn reduce_rows<F: Field>(rows: Vec<Vec<F>>) -> Vec<Vec<F>> {
    if rows.is_empty() {
        return rows;
    }
    let r = Matrix::from_rows(rows).rref();
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Standard monomials are the non-pivot columns of the reduced ideal rows;
/// a pivot monomial equals minus the rest of its row.
fn degree_data<F: Field>(ambient: Vec<Monomial>, ambient_index: HashMap<Monomial, usize>, rows: Vec<Vec<F>>) -> DegreeData<F> {
    let n = ambient.len();
    let mut pivot_row = vec![None; n];
    for (r, row) in rows.iter().enumerate() {
        let p = row.iter().position(|x| !x.is_zero()).expect("reduced rows are nonzero");
        pivot_row[p] = Some(r);
    }
    let standard: Vec<usize> = (0..n).filter(|&i| pivot_row[i].is_none()).collect();
    let mut position = vec![usize::MAX; n];
    for (k, &i) in standard.iter().enumerate() {
        position[i] = k;
    }
    let normal_forms = (0..n)
        .map(|i| match pivot_row[i] {
            None => vec![(position[i], F::one())],
            Some(r) => to_sparse(standard.iter().map(|&s| -rows[r][s].clone()).collect()),
        })
        .collect();
    DegreeData { ambient, ambient_index, standard, normal_forms }
}

#[cfg(test)]
mod tests;
