//! Exact univariate arithmetic: integer and field polynomials, rational
//! functions, truncated power series and rational reconstruction.

mod intpoly;
mod parse;
mod poly;
mod ratfunc;
mod reconstruct;
mod series;

pub use intpoly::IntPolynomial;
pub(crate) use intpoly::write_field_terms;
pub use parse::{parse_in, parse_int_polynomial, parse_rational_function, parse_rational_poly};
pub use poly::Poly;
pub use ratfunc::{RatFunc, RationalFunction};
pub use reconstruct::{reconstruct, reconstruct_field, required_order};
pub use series::{Series, SeriesTruncation};

use crate::error::Result;

/// Canonical coprime form of `p / q`.
pub fn normalize(p: &IntPolynomial, q: &IntPolynomial) -> Result<RationalFunction> {
    RationalFunction::normalize(p, q)
}

/// Coefficients `0..=order` of the expansion of `f` at `t = 0`.
pub fn expand(f: &RationalFunction, order: usize) -> SeriesTruncation {
    f.expand(order)
}
