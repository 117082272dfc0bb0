//! Dense univariate polynomials in `t` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `t^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `1 - t^a`
    pub fn one_minus_t_pow(a: usize) -> Self {
        if a == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); a + 1];
        coeffs[0] = BigInt::one();
        coeffs[a] = -BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Number of leading zero coefficients (the power of `t` dividing `self`).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Substitute `t -> t^k`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients in reverse order (`t^deg · p(1/t)`).
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact quotient `self / d` in ℤ[t], or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.degree().unwrap();
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let dd = d.degree().unwrap();
        let mut r = self.clone();
        let lead = d.leading();
        let Some(sd) = r.degree() else {
            return r;
        };
        if sd < dd {
            return r;
        }
        let mut e = sd - dd + 1;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading();
            let term = Self::monomial(lr, rd - dd);
            r = &r.scale(&lead) - &(&term * d);
            e -= 1;
        }
        r.scale(&num_traits::pow(lead, e))
    }

    /// Greatest common divisor in ℤ[t] (subresultant PRS), normalized to a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        if b.is_zero() {
            return a.primitive_part().scale(&a.content());
        }
        let d = a.content().gcd(&b.content());
        a = a.primitive_part();
        b = b.primitive_part();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == Some(0) {
                b = Self::one();
                break;
            }
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = Self::new(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.leading();
            // h = g^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
            };
        }
        b.primitive_part().scale(&d)
    }

    /// Coefficient list equals its reverse up to a global sign; returns the
    /// sign (`+1` palindromic, `-1` antipalindromic).
    pub fn palindromic_sign(&self) -> Option<i32> {
        if self.is_zero() {
            return None;
        }
        let rev: Vec<&BigInt> = self.coeffs.iter().rev().collect();
        if self.coeffs.iter().zip(&rev).all(|(a, b)| a == *b) {
            Some(1)
        } else if self.coeffs.iter().zip(&rev).all(|(a, b)| *a == -(*b).clone()) {
            Some(-1)
        } else {
            None
        }
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Writes one signed term list in ascending powers: `1 - 2*t + t^2`.
/// Unit coefficients are omitted except on the constant term.
pub(crate) fn write_terms<I, C>(f: &mut fmt::Formatter<'_>, terms: I, var: &str) -> fmt::Result
where
    I: IntoIterator<Item = (usize, C)>,
    C: TermCoeff,
{
    let mut first = true;
    for (k, c) in terms {
        if c.is_zero_coeff() {
            continue;
        }
        let negative = c.is_negative_coeff();
        let mag = c.magnitude_string();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        let unit = mag == "1";
        let needs_parens = mag.contains(['+', '-', '/']) && !c.is_plain();
        match (k, unit) {
            (0, _) => write!(f, "{mag}")?,
            (_, true) => {}
            (_, false) if needs_parens => write!(f, "({mag})*")?,
            (_, false) => write!(f, "{mag}*")?,
        }
        match k {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) trait TermCoeff {
    fn is_zero_coeff(&self) -> bool;
    fn is_negative_coeff(&self) -> bool;
    fn magnitude_string(&self) -> String;
    /// A single number (no internal `+`/`-` structure that needs grouping).
    fn is_plain(&self) -> bool {
        true
    }
}

impl TermCoeff for &BigInt {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn magnitude_string(&self) -> String {
        self.abs().to_string()
    }
}

impl TermCoeff for &num_rational::BigRational {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn magnitude_string(&self) -> String {
        self.abs().to_string()
    }
}

pub(crate) fn write_field_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[num_rational::BigRational],
    var: &str,
) -> fmt::Result {
    write_terms(f, coeffs.iter().enumerate(), var)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate(), "t")
    }
}
