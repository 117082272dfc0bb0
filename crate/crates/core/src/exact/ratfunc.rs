//! Rational functions in `t`: the integer-coefficient canonical form used for
//! Hilbert series, and a field-coefficient form used for trace series whose
//! coefficients live in a cyclotomic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPolynomial;
use super::poly::Poly;
use super::series::{Series, SeriesTruncation};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `num / den` with integer coefficients.
///
/// Canonical form: `gcd(num, den) = 1` in ℤ[t], `den(0) > 0`, and the
/// integer content of the pair is 1. When the series has integer
/// coefficients (every Hilbert series) this forces `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    /// Canonical form of `p / q`.
    pub fn normalize(p: &IntPolynomial, q: &IntPolynomial) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if q.constant_term().is_zero() {
            return Err(Error::NonUnitConstant);
        }
        if p.is_zero() {
            return Ok(Self::zero());
        }
        let g = p.gcd(q);
        let mut num = p.div_exact(&g).expect("gcd divides numerator");
        let mut den = q.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact(&IntPolynomial::constant(c.clone())).unwrap();
            den = den.div_exact(&IntPolynomial::constant(c)).unwrap();
        }
        if den.constant_term().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction { num: IntPolynomial::zero(), den: IntPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::polynomial(IntPolynomial::one())
    }

    pub fn polynomial(p: IntPolynomial) -> Self {
        Self::normalize(&p, &IntPolynomial::one()).unwrap()
    }

    /// `Π (1 - t^a)^e` over the given `(a, e)` pairs.
    pub fn binomial_ratio(factors: &[(usize, i64)]) -> Self {
        let mut num = IntPolynomial::one();
        let mut den = IntPolynomial::one();
        for &(a, e) in factors {
            let b = IntPolynomial::one_minus_t_pow(a).pow(e.unsigned_abs() as u32);
            if e >= 0 {
                num = &num * &b;
            } else {
                den = &den * &b;
            }
        }
        Self::normalize(&num, &den).expect("binomial denominators are units at 0")
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::normalize(&self.den, &self.num)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::normalize(&(&self.num * &rhs.den), &(&self.den * &rhs.num))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Self::normalize(&base.num.pow(k), &base.den.pow(k))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalize(&self.num.scale(c.numer()), &self.den.scale(c.denom())).unwrap()
    }

    /// Substitute `t -> t^k`.
    pub fn inflate(&self, k: usize) -> Self {
        Self::normalize(&self.num.inflate(k), &self.den.inflate(k)).unwrap()
    }

    /// Power-series coefficients `0..=order` by long division.
    pub fn expand(&self, order: usize) -> SeriesTruncation {
        self.to_field::<BigRational>().expand(order)
    }

    pub fn to_field<F: Field>(&self) -> RatFunc<F> {
        RatFunc::new(Poly::from_int_poly(&self.num), Poly::from_int_poly(&self.den))
            .expect("canonical rational functions have den(0) != 0")
    }

    /// Clears denominators of a rational-coefficient function.
    pub fn from_rational(f: &RatFunc<BigRational>) -> Self {
        let lcm = f
            .num
            .coeffs()
            .iter()
            .chain(f.den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let clear = |p: &Poly<BigRational>| {
            IntPolynomial::new(
                p.coeffs()
                    .iter()
                    .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                    .collect(),
            )
        };
        Self::normalize(&clear(&f.num), &clear(&f.den)).expect("den(0) = 1")
    }

    /// Order of the pole at `t = 1`; negative for a zero.
    pub fn pole_order_at_one(&self) -> i64 {
        self.to_field::<BigRational>().pole_order_at_one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(
            &(&(&self.num * &rhs.den) + &(&rhs.num * &self.den)),
            &(&self.den * &rhs.den),
        )
        .unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&(&self.num * &rhs.num), &(&self.den * &rhs.den)).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

/// `num / den` over a field, normalized to `gcd = 1` and `den(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NonUnitConstant);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let s = den.coeff(0).inv().unwrap();
        Ok(RatFunc { num: num.scale(&s), den: den.scale(&s) })
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    /// `1 / den`
    pub fn reciprocal_of(den: Poly<F>) -> Result<Self> {
        Self::new(Poly::one(), den)
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn expand(&self, order: usize) -> Series<F> {
        let inv0 = self.den.coeff(0).inv().expect("den(0) != 0");
        let dcoeffs = self.den.coeffs();
        let mut out: Vec<F> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut c = self.num.coeff(k);
            for (j, dj) in dcoeffs.iter().enumerate().skip(1).take(k) {
                if !dj.is_zero() {
                    c = c - dj.clone() * out[k - j].clone();
                }
            }
            out.push(c * inv0.clone());
        }
        Series::new(out)
    }

    /// Multiplicity of `t = 1` in `den` minus its multiplicity in `num`.
    pub fn pole_order_at_one(&self) -> i64 {
        if self.num.is_zero() {
            return i64::MIN;
        }
        let one = F::one();
        self.den.root_multiplicity(&one) as i64 - self.num.root_multiplicity(&one) as i64
    }

    /// The integer canonical form, if every coefficient is rational.
    pub fn to_rational_function(&self) -> Option<RationalFunction> {
        let num = self.num.to_rational()?;
        let den = self.den.to_rational()?;
        Some(RationalFunction::from_rational(&RatFunc { num, den }))
    }
}

impl<'a, F: Field> Add<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl<'a, F: Field> Sub<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &RatFunc { num: -&rhs.num, den: rhs.den.clone() }
    }
}

impl<'a, F: Field> Mul<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
