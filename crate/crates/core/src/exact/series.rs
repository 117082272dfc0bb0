use std::fmt;

use num_rational::BigRational;

use crate::scalar::Field;

/// Coefficients `a_0..=a_N` of a power series in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<F> {
    coeffs: Vec<F>,
}

/// Rational-coefficient truncation, the form every Hilbert series comparison uses.
pub type SeriesTruncation = Series<BigRational>;

impl<F: Field> Series<F> {
    /// Panics on an empty coefficient list: a truncation has order >= 0.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a series truncation needs at least a_0");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![F::zero(); order + 1] }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// `Σ a_{rn} t^n` for `rn <= N`.
    pub fn section(&self, r: usize) -> Self {
        assert!(r >= 1);
        Series { coeffs: self.coeffs.iter().step_by(r).cloned().collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - other.coeffs[i].clone())
                .collect(),
        }
    }

    /// Truncated Cauchy product, to the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(F::zero(), |acc, i| {
                    acc + self.coeffs[i].clone() * other.coeffs[k - i].clone()
                })
            })
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, c: &F) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Series<G> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<F: Field> fmt::Display for Series<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
