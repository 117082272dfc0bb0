//! Rational reconstruction: recover `P/Q` from a truncated power series
//! given degree bounds, by solving the Padé linear system exactly.

use num_rational::BigRational;

use super::poly::Poly;
use super::ratfunc::{RatFunc, RationalFunction};
use super::series::Series;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// Smallest truncation order accepted for the given bounds.
pub fn required_order(num_bound: usize, den_bound: usize) -> usize {
    num_bound + 2 * den_bound + 2
}

/// The rational function with `deg P <= num_bound`, `deg Q <= den_bound`
/// whose expansion agrees with `s` through `s.order()`.
///
/// Any two solutions agree as rational functions once the order exceeds
/// `num_bound + den_bound`, so an underdetermined system (the true degrees
/// are below the bounds) still yields the unique function. Orders below
/// [`required_order`] are rejected with [`Error::AmbiguousData`].
pub fn reconstruct_field<F: Field>(
    s: &Series<F>,
    num_bound: usize,
    den_bound: usize,
) -> Result<RatFunc<F>> {
    let order = s.order();
    let needed = required_order(num_bound, den_bound);
    if order < needed {
        return Err(Error::AmbiguousData { order, num_bound, den_bound, needed });
    }
    let a = |i: isize| -> F {
        if i < 0 {
            F::zero()
        } else {
            s.coeff(i as usize).clone()
        }
    };
    // Unknowns Q_1..Q_q (Q_0 = 1); equations for k = p+1..=order:
    //   Σ_{j=1..q} Q_j a_{k-j} = -a_k
    let eqs: Vec<usize> = (num_bound + 1..=order).collect();
    let system = Matrix::from_fn(eqs.len(), den_bound, |r, j| {
        a(eqs[r] as isize - (j as isize + 1))
    });
    let rhs: Vec<F> = eqs.iter().map(|&k| -a(k as isize)).collect();
    let q_tail = if den_bound == 0 {
        if rhs.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        system.solve(&rhs)
    };
    let Some(q_tail) = q_tail else {
        return Err(Error::NoSolution { num_bound, den_bound });
    };
    let mut q = vec![F::one()];
    q.extend(q_tail);
    let p: Vec<F> = (0..=num_bound)
        .map(|k| {
            (0..=k.min(den_bound)).fold(F::zero(), |acc, j| {
                acc + q[j].clone() * a(k as isize - j as isize)
            })
        })
        .collect();
    let f = RatFunc::new(Poly::new(p), Poly::new(q))?;
    debug_assert!(f.expand(order) == *s);
    Ok(f)
}

/// [`reconstruct_field`] over ℚ, returned in integer canonical form.
pub fn reconstruct(
    s: &Series<BigRational>,
    num_bound: usize,
    den_bound: usize,
) -> Result<RationalFunction> {
    reconstruct_field(s, num_bound, den_bound).map(|f| RationalFunction::from_rational(&f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPolynomial;
    use crate::exact::SeriesTruncation;

    #[test]
    fn geometric_series() {
        let s = SeriesTruncation::from_i64(&[1; 9]);
        let f = reconstruct(&s, 0, 1).unwrap();
        assert_eq!(f, RationalFunction::binomial_ratio(&[(1, -1)]));
    }

    #[test]
    fn twisted_trace_closed_form() {
        let target = RationalFunction::normalize(
            &IntPolynomial::one(),
            &(&IntPolynomial::from_i64(&[1, 1]) * &IntPolynomial::one_minus_t_pow(2)),
        )
        .unwrap();
        let s = target.expand(12);
        assert_eq!(reconstruct(&s, 0, 3).unwrap(), target);
    }

    #[test]
    fn loose_bounds_still_unique() {
        let target = RationalFunction::binomial_ratio(&[(1, -1)]);
        let s = target.expand(20);
        assert_eq!(reconstruct(&s, 4, 5).unwrap(), target);
    }

    #[test]
    fn insufficient_order_is_an_error() {
        let s = SeriesTruncation::from_i64(&[1, 1, 1]);
        assert!(matches!(reconstruct(&s, 0, 1), Err(Error::AmbiguousData { .. })));
    }

    #[test]
    fn no_solution_within_bounds() {
        let s = RationalFunction::binomial_ratio(&[(1, -3)]).expand(12);
        assert!(matches!(reconstruct(&s, 0, 2), Err(Error::NoSolution { .. })));
    }
}
