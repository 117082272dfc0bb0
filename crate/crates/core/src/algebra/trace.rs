//! Graded automorphisms induced by a linear map on the generators: the
//! induced matrices on each `A_d`, their traces and joint fixed spaces.

use std::collections::HashMap;

use super::{GradedAlgebraTruncation, Monomial, Sparse};
use crate::error::{Error, Result};
use crate::exact::Series;
use crate::linalg::Matrix;
use crate::scalar::Field;

/// The multiplicative extension of `g` (column `j` is the image of `x_j`)
/// to a truncation.
struct Action<'a, F> {
    algebra: &'a GradedAlgebraTruncation<F>,
    gx: Vec<Sparse<F>>,
    memo: Vec<HashMap<Monomial, Sparse<F>>>,
}

impl<'a, F: Field> Action<'a, F> {
    fn new(g: &Matrix<F>, algebra: &'a GradedAlgebraTruncation<F>) -> Result<Self> {
        let p = algebra.presentation();
        let n = p.num_generators();
        if !g.is_square() || g.rows() != n {
            return Err(Error::DimensionMismatch(format!("map is {}x{}, algebra has {n} generators", g.rows(), g.cols())));
        }
        if p.degrees().iter().any(|&d| d != 1) {
            return Err(Error::DimensionMismatch("linear maps act on algebras generated in degree 1".into()));
        }
        if algebra.cutoff() == 0 {
            return Err(Error::Invalid("truncation must reach degree 1".into()));
        }
        let gx = (0..n)
            .map(|j| {
                let terms: Vec<(F, Monomial)> = (0..n)
                    .filter(|&i| !g[(i, j)].is_zero())
                    .map(|i| (g[(i, j)].clone(), p.generator_monomial(i)))
                    .collect();
                super::to_sparse(algebra.reduce(1, &terms))
            })
            .collect();
        let action = Action { algebra, gx, memo: vec![HashMap::new(); algebra.cutoff() + 1] };
        action.check_relations(g)?;
        Ok(action)
    }

    /// Image of an arbitrary word in the generators.
    fn image_of_word(&self, letters: &[usize]) -> Sparse<F> {
        let mut acc: Sparse<F> = vec![(0, F::one())];
        for (k, &l) in letters.iter().enumerate().rev() {
            let deg = letters.len() - 1 - k;
            acc = self.algebra.mul_sparse(1, &self.gx[l], deg, &acc);
        }
        acc
    }

    /// `g` must respect the defining relations, checked through the cutoff.
    fn check_relations(&self, g: &Matrix<F>) -> Result<()> {
        let p = self.algebra.presentation();
        let n = p.num_generators();
        let cutoff = self.algebra.cutoff();
        if !p.q().is_empty() && cutoff >= 2 {
            let image = |j: usize| -> Vec<(F, Monomial)> {
                (0..n)
                    .filter(|&i| !g[(i, j)].is_zero())
                    .map(|i| (g[(i, j)].clone(), p.generator_monomial(i)))
                    .collect()
            };
            for i in 0..n {
                for j in i + 1..n {
                    // g(x_j) g(x_i) - p_ij g(x_i) g(x_j) = 0 in A_2
                    let mut lhs = p.ambient_mul_sum(&image(j), &image(i));
                    for (c, m) in p.ambient_mul_sum(&image(i), &image(j)) {
                        lhs.push((-(p.q()[i][j].clone() * c), m));
                    }
                    if self.algebra.reduce(2, &lhs).iter().any(|c| !c.is_zero()) {
                        return Err(Error::NotAnAutomorphism(format!(
                            "relation {} {} = p {} {} is not preserved",
                            p.generator_name(j),
                            p.generator_name(i),
                            p.generator_name(i),
                            p.generator_name(j)
                        )));
                    }
                }
            }
        }
        for w in p.forbidden() {
            if w.len() <= cutoff && !self.image_of_word(w).is_empty() {
                let label: Vec<&str> = w.iter().map(|&l| p.generator_name(l)).collect();
                return Err(Error::NotAnAutomorphism(format!("image of {} is nonzero", label.join("*"))));
            }
        }
        for (k, omega) in p.relations().iter().enumerate() {
            let e = omega.degree(p.degrees());
            if e > cutoff {
                continue;
            }
            let mut acc = vec![F::zero(); self.algebra.dim(e)];
            for (c, m) in &omega.terms {
                super::add_scaled(&mut acc, &self.image_of_word(&p.letters(m)), c);
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return Err(Error::NotAnAutomorphism(format!("image of normal element {k} is not in the ideal")));
            }
        }
        Ok(())
    }

    fn image(&mut self, d: usize, m: &Monomial) -> Sparse<F> {
        if d == 0 {
            return vec![(0, F::one())];
        }
        if let Some(v) = self.memo[d].get(m) {
            return v.clone();
        }
        let p = self.algebra.presentation();
        let (i, rest) = p.split_first(m).expect("positive-degree monomial");
        let tail = self.image(d - 1, &rest);
        let v = self.algebra.mul_sparse(1, &self.gx[i].clone(), d - 1, &tail);
        self.memo[d].insert(m.clone(), v.clone());
        v
    }

    /// Images of the basis of `A_d`, as sparse columns.
    fn columns(&mut self, d: usize) -> Vec<Sparse<F>> {
        let basis: Vec<Monomial> = self.algebra.basis(d).into_iter().cloned().collect();
        basis.iter().map(|m| self.image(d, m)).collect()
    }
}

/// `Σ_d tr(g|A_d) t^d` through degree `order`.
pub fn brute_force_trace<F: Field>(g: &Matrix<F>, algebra: &GradedAlgebraTruncation<F>, order: usize) -> Result<Series<F>> {
    if order > algebra.cutoff() {
        return Err(Error::Invalid(format!("order {order} exceeds the cutoff {}", algebra.cutoff())));
    }
    let mut action = Action::new(g, algebra)?;
    let coeffs = (0..=order)
        .map(|d| {
            action
                .columns(d)
                .iter()
                .enumerate()
                .fold(F::zero(), |acc, (s, col)| {
                    acc + col.iter().find(|(k, _)| *k == s).map_or(F::zero(), |(_, c)| c.clone())
                })
        })
        .collect();
    Ok(Series::new(coeffs))
}

/// Matrices of `g` on `A_0, …, A_order`.
pub fn degree_actions<F: Field>(g: &Matrix<F>, algebra: &GradedAlgebraTruncation<F>, order: usize) -> Result<Vec<Matrix<F>>> {
    if order > algebra.cutoff() {
        return Err(Error::Invalid(format!("order {order} exceeds the cutoff {}", algebra.cutoff())));
    }
    let mut action = Action::new(g, algebra)?;
    Ok((0..=order)
        .map(|d| {
            let cols = action.columns(d);
            let n = algebra.dim(d);
            let mut m = Matrix::zeros(n, n);
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col {
                    m[(*i, j)] = c.clone();
                }
            }
            m
        })
        .collect())
}

/// Dimension of the subspace of `A_d` fixed by every map in `gens`, for
/// `d = 0..=order`.
pub fn invariant_dims<F: Field>(gens: &[Matrix<F>], algebra: &GradedAlgebraTruncation<F>, order: usize) -> Result<Vec<usize>> {
    let actions: Vec<Vec<Matrix<F>>> = gens.iter().map(|g| degree_actions(g, algebra, order)).collect::<Result<_>>()?;
    Ok((0..=order)
        .map(|d| {
            let n = algebra.dim(d);
            if actions.is_empty() || n == 0 {
                return n;
            }
            let id = Matrix::identity(n);
            let rows: Vec<Vec<F>> = actions
                .iter()
                .flat_map(|a| {
                    let diff = &a[d] - &id;
                    (0..n).map(move |i| diff.row(i).to_vec()).collect::<Vec<_>>()
                })
                .collect();
            n - Matrix::from_rows(rows).rank()
        })
        .collect())
}
