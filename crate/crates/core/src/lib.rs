//! Exact computation and classification of Hilbert series of graded
//! algebras and their invariant subrings.
//!
//! * [`exact`]: integer/field polynomials, rational functions, truncated
//!   series, rational reconstruction.
//! * [`cyclo`]: cyclotomic factorization, the binomial (`cyc`) number and
//!   palindromic symmetry.
//! * [`hilbert`]: Veronese sections, partition numbers, quotient series.
//! * [`grp`]: finite matrix groups over cyclotomic fields, subgroups,
//!   trace series, Molien sums, pole classification.
//! * [`algebra`]: truncated graded algebras, brute-force traces, minimal
//!   resolutions and Betti numbers.
//!
//! Linear algebra and algebra truncations are generic over a [`Field`];
//! the aliases below fix the two fields in use.

pub mod algebra;
pub mod cyclo;
mod cyclotomic;
mod error;
pub mod exact;
pub mod grp;
pub mod hilbert;
pub mod linalg;
mod scalar;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use exact::{IntPolynomial, RatFunc, RationalFunction, Series, SeriesTruncation};
pub use linalg::Matrix;
pub use scalar::{int, rat, Field};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Elements of ℚ(ζ_N).
pub type CyclotomicNumber = Cyclotomic;
/// Square matrices over a cyclotomic field.
pub type CyclotomicMatrix = Matrix<Cyclotomic>;
/// Matrices over ℚ.
pub type RationalMatrix = Matrix<BigRational>;
/// Trace series whose coefficients may be irrational roots of unity.
pub type CyclotomicRatFunc = RatFunc<Cyclotomic>;
/// Polynomials over ℚ.
pub type RationalPoly = exact::Poly<BigRational>;
/// Algebra truncation over ℚ.
pub type RationalAlgebra = algebra::GradedAlgebraTruncation<BigRational>;
/// Algebra truncation over a cyclotomic field.
pub type CyclotomicAlgebra = algebra::GradedAlgebraTruncation<Cyclotomic>;
