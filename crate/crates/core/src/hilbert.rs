//! Hilbert-series constructors: partition numbers, Veronese sections and
//! quotients by regular sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exact::{reconstruct, IntPolynomial, Poly, RationalFunction};
use crate::scalar::Field;

/// Number of `b`-tuples of integers in `[0, a]` summing to `c`.
pub fn partition_number(a: usize, b: usize, c: usize) -> BigInt {
    let mut ways = vec![BigInt::zero(); c + 1];
    ways[0] = BigInt::one();
    for _ in 0..b {
        let mut next = vec![BigInt::zero(); c + 1];
        // sliding window of width a + 1 over the previous row
        let mut window = BigInt::zero();
        for s in 0..=c {
            window += &ways[s];
            if s > a {
                window -= &ways[s - a - 1];
            }
            next[s] = window.clone();
        }
        ways = next;
    }
    ways.swap_remove(c)
}

/// Brenti–Welker transform: the `r`-section of `h(t) / (1 - t)^d` as
/// `(Σ_i h_i^(r) t^i) / (1 - t)^d` with
/// `h_i^(r) = Σ_j C(r - 1, d, i r - j) h_j`, `0 <= i <= max(deg h, d)`.
pub fn veronese_bw(h: &IntPolynomial, d: usize, r: usize) -> RationalFunction {
    assert!(r >= 1, "Veronese stride must be positive");
    let s = h.degree().unwrap_or(0);
    let m = s.max(d);
    let coeffs = (0..=m)
        .map(|i| {
            (0..=s)
                .filter(|&j| j <= i * r)
                .map(|j| partition_number(r - 1, d, i * r - j) * h.coeff(j))
                .sum()
        })
        .collect();
    let den = IntPolynomial::one_minus_t_pow(1).pow(d as u32);
    RationalFunction::normalize(&IntPolynomial::new(coeffs), &den).expect("(1 - t)^d is a unit at 0")
}

/// `Π_{k < r} q(ζ_r^k t)`, which is a polynomial in `t^r`; returned as a
/// polynomial in `u = t^r`.
fn conjugate_norm(q: &IntPolynomial, r: usize) -> IntPolynomial {
    if r == 1 {
        return q.clone();
    }
    let mut acc = Poly::<Cyclotomic>::one();
    for k in 0..r {
        let twisted = Poly::new(
            q.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| Cyclotomic::zeta(r, (k * j) as i64) * Cyclotomic::rational(BigRational::from_integer(c.clone())))
                .collect(),
        );
        acc = &acc * &twisted;
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(i, _)| i % r == 0)
        .map(|(_, c)| {
            let q = c.to_rational().expect("norm of an integer polynomial is rational");
            debug_assert!(q.is_integer());
            q.to_integer()
        })
        .collect();
    debug_assert!(acc
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| i % r == 0 || c.is_zero()));
    IntPolynomial::new(coeffs)
}

/// Every `r`-th coefficient of a polynomial, as a polynomial in `t^r`.
fn poly_section(p: &IntPolynomial, r: usize) -> IntPolynomial {
    IntPolynomial::new(p.coeffs().iter().step_by(r).cloned().collect())
}

/// Closed form of the `r`-section `Σ_n a_{rn} t^n` of `f`.
///
/// The denominator `Q(t^r) = Π_k q(ζ_r^k t)` is a multiple of `q`, so
/// `f = p Q(t^r)/q / Q(t^r)` and the section is taken termwise on the
/// numerator. The result is then cross-checked by reconstruction from the
/// strided expansion of `f`, using `bounds = (num, den)` when given and
/// the degrees of the exact form otherwise.
pub fn veronese_section(f: &RationalFunction, r: usize, bounds: Option<(usize, usize)>) -> Result<RationalFunction> {
    if r == 0 {
        return Err(Error::Invalid("Veronese stride must be positive".into()));
    }
    let norm = conjugate_norm(f.den(), r);
    let cofactor = norm.inflate(r).div_exact(f.den()).expect("q divides its conjugate norm");
    let lifted = f.num() * &cofactor;
    let exact = RationalFunction::normalize(&poly_section(&lifted, r), &norm)?;
    let (nb, db) = bounds.unwrap_or_else(|| {
        (exact.num().degree().unwrap_or(0), exact.den().degree().unwrap_or(0))
    });
    let order = crate::exact::required_order(nb, db);
    let strided = f.expand(r * order).section(r);
    let rebuilt = reconstruct(&strided, nb, db)?;
    if rebuilt != exact {
        return Err(Error::NoSolution { num_bound: nb, den_bound: db });
    }
    Ok(exact)
}

/// Generator degrees and the degrees of a regular normal sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingDescriptor {
    pub generator_degrees: Vec<usize>,
    pub relation_degrees: Vec<usize>,
}

impl GradedRingDescriptor {
    pub fn new(generator_degrees: Vec<usize>, relation_degrees: Vec<usize>) -> Result<Self> {
        if generator_degrees.is_empty() {
            return Err(Error::Invalid("at least one generator is required".into()));
        }
        if generator_degrees.iter().chain(&relation_degrees).any(|&d| d == 0) {
            return Err(Error::Invalid("degrees must be positive".into()));
        }
        Ok(GradedRingDescriptor { generator_degrees, relation_degrees })
    }
}

/// `Π_j (1 - t^{e_j}) / Π_i (1 - t^{d_i})`.
pub fn quotient_series(desc: &GradedRingDescriptor) -> RationalFunction {
    let factors: Vec<(usize, i64)> = desc
        .relation_degrees
        .iter()
        .map(|&e| (e, 1))
        .chain(desc.generator_degrees.iter().map(|&d| (d, -1)))
        .collect();
    RationalFunction::binomial_ratio(&factors)
}
