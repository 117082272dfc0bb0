//! Cyclotomic polynomials, Kronecker-style detection of series whose zeros
//! and poles are all roots of unity, the binomial ("cyc") number, and the
//! palindromic symmetry test for Gorenstein Hilbert series.

pub mod arith;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exact::{IntPolynomial, RationalFunction};

static PHI_CACHE: OnceLock<RwLock<HashMap<usize, Arc<IntPolynomial>>>> = OnceLock::new();

/// The `n`-th cyclotomic polynomial Φ_n, from `t^n - 1` divided by Φ_d for
/// every proper divisor `d`. Memoized; safe to call from many threads.
pub fn cyclotomic_polynomial(n: usize) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let cache = PHI_CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let phi = if n == 1 {
        IntPolynomial::from_i64(&[-1, 1])
    } else {
        let mut acc = -IntPolynomial::one_minus_t_pow(n);
        for d in arith::divisors(n) {
            if d < n {
                acc = acc
                    .div_exact(&cyclotomic_polynomial(d))
                    .expect("Φ_d divides t^n - 1");
            }
        }
        acc
    };
    let phi = Arc::new(phi);
    cache.write().unwrap().entry(n).or_insert(phi).clone()
}

/// `p = unit_scalar · t^t_power · Π Φ_n^{e_n} · remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclotomicFactorization {
    pub exponents: BTreeMap<usize, u32>,
    /// Non-cyclotomic part with positive leading coefficient and nonzero
    /// constant term.
    pub remainder: IntPolynomial,
    pub unit_scalar: i32,
    pub t_power: usize,
}

impl CyclotomicFactorization {
    /// All roots of the input are roots of unity (or zero).
    pub fn is_cyclotomic(&self) -> bool {
        self.remainder.degree() == Some(0)
    }

    pub fn product(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::monomial(BigInt::from(self.unit_scalar), self.t_power);
        for (&n, &e) in &self.exponents {
            acc = &acc * &cyclotomic_polynomial(n).pow(e);
        }
        &acc * &self.remainder
    }
}

/// Extract every cyclotomic factor of `p` by trial division over all `n`
/// with `φ(n) <= deg p`.
pub fn factor_cyclotomic(p: &IntPolynomial) -> CyclotomicFactorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let t_power = p.t_valuation();
    let mut rem = IntPolynomial::new(p.coeffs()[t_power..].to_vec());
    let deg = rem.degree().unwrap();
    let mut exponents = BTreeMap::new();
    if deg > 0 {
        // φ(n) >= sqrt(n/2), so φ(n) <= deg forces n <= 2 deg^2.
        let limit = (2 * deg * deg).max(2);
        let phi = arith::totient_sieve(limit);
        for n in 1..=limit {
            if phi[n] > rem.degree().unwrap_or(0) {
                continue;
            }
            let cyc = cyclotomic_polynomial(n);
            let mut e = 0;
            while let Some(q) = rem.div_exact(&cyc) {
                rem = q;
                e += 1;
            }
            if e > 0 {
                exponents.insert(n, e);
            }
        }
    }
    let unit_scalar = if rem.leading().is_negative() { -1 } else { 1 };
    if unit_scalar < 0 {
        rem = -rem;
    }
    let f = CyclotomicFactorization { exponents, remainder: rem, unit_scalar, t_power };
    assert_eq!(&f.product(), p, "cyclotomic factorization must reassemble its input");
    f
}

/// Numerator and denominator have only roots of unity as roots.
pub fn is_cyclotomic(f: &RationalFunction) -> bool {
    if f.is_zero() {
        return false;
    }
    factor_cyclotomic(f.num()).is_cyclotomic() && factor_cyclotomic(f.den()).is_cyclotomic()
}

/// Signed exponents `f(a)` with `Π_a (1 - t^a)^{f(a)}` equal to the input.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BinomialProfile {
    pub exponents: BTreeMap<usize, i64>,
    pub feasible: bool,
}

impl BinomialProfile {
    pub fn to_rational_function(&self) -> RationalFunction {
        let factors: Vec<(usize, i64)> = self.exponents.iter().map(|(&a, &e)| (a, e)).collect();
        RationalFunction::binomial_ratio(&factors)
    }
}

/// Result of [`cyc_number`]; `value` is `None` when the series has no
/// presentation as a ratio of binomials `(1 - t^a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycNumber {
    pub value: Option<u64>,
    pub profile: BinomialProfile,
}

/// Minimal number of numerator binomials in a presentation
/// `Π_i (1 - t^{a_i}) / Π_j (1 - t^{b_j})`.
///
/// `1 - t^a = -Π_{d | a} Φ_d`, so the Φ_n exponent of such a product is
/// `E_n = Σ_{n | a} f(a)`; Möbius inversion recovers the unique `f` supported
/// on orders up to the largest `n` with `E_n != 0`.
pub fn cyc_number(f: &RationalFunction) -> CycNumber {
    let undefined = |exponents| CycNumber { value: None, profile: BinomialProfile { exponents, feasible: false } };
    if f.is_zero() {
        return undefined(BTreeMap::new());
    }
    let num = factor_cyclotomic(f.num());
    let den = factor_cyclotomic(f.den());
    if !num.is_cyclotomic() || !den.is_cyclotomic() || num.t_power > 0 || den.t_power > 0 {
        return undefined(BTreeMap::new());
    }
    let mut e: BTreeMap<usize, i64> = BTreeMap::new();
    for (&n, &k) in &num.exponents {
        *e.entry(n).or_default() += k as i64;
    }
    for (&n, &k) in &den.exponents {
        *e.entry(n).or_default() -= k as i64;
    }
    e.retain(|_, v| *v != 0);
    let top = e.keys().next_back().copied().unwrap_or(0);
    let mut exponents = BTreeMap::new();
    for a in 1..=top {
        let fa: i64 = (1..=top / a)
            .map(|k| arith::mobius(k) * e.get(&(a * k)).copied().unwrap_or(0))
            .sum();
        if fa != 0 {
            exponents.insert(a, fa);
        }
    }
    let profile = BinomialProfile { exponents, feasible: true };
    if &profile.to_rational_function() != f {
        return undefined(profile.exponents);
    }
    let m = profile.exponents.values().filter(|&&v| v > 0).map(|&v| v as u64).sum();
    CycNumber { value: Some(m), profile }
}

/// Outcome of the palindromic test `p(1/t) = ± t^{-d} p(t)` on numerator
/// and denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinSymmetry {
    pub symmetric: bool,
    pub num_sign: Option<i32>,
    pub den_sign: Option<i32>,
}

pub fn gorenstein_symmetry(f: &RationalFunction) -> GorensteinSymmetry {
    let sign = |p: &IntPolynomial| {
        if p.is_zero() {
            return None;
        }
        let v = p.t_valuation();
        IntPolynomial::new(p.coeffs()[v..].to_vec()).palindromic_sign()
    };
    let num_sign = sign(f.num());
    let den_sign = sign(f.den());
    GorensteinSymmetry { symmetric: num_sign.is_some() && den_sign.is_some(), num_sign, den_sign }
}

/// Cyclotomic and Gorenstein-symmetric.
pub fn is_cyclotomic_gorenstein(f: &RationalFunction) -> bool {
    is_cyclotomic(f) && gorenstein_symmetry(f).symmetric
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational_function;
    use num_traits::One;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), p(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), p(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(6), p(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(12), p(&[1, 0, -1, 0, 1]));
        assert!((2..40).all(|n| cyclotomic_polynomial(n).constant_term().is_one()));
    }

    #[test]
    fn factor_stanley_numerator() {
        let f = factor_cyclotomic(&p(&[1, 3, 3, 1]));
        assert_eq!(f.exponents, BTreeMap::from([(2, 3)]));
        assert!(f.remainder.is_one());
    }

    #[test]
    fn non_cyclotomic_numerators() {
        assert!(!factor_cyclotomic(&p(&[1, 0, 0, 0, 6, 0, 0, 0, 1])).is_cyclotomic());
        assert!(!factor_cyclotomic(&p(&[1, -2, 4, -2, 1])).is_cyclotomic());
    }

    #[test]
    fn unit_and_t_power() {
        let q = p(&[0, 0, -1, 1]); // t^2 (t - 1)
        let f = factor_cyclotomic(&q);
        assert_eq!(f.t_power, 2);
        assert_eq!(f.exponents, BTreeMap::from([(1, 1)]));
        let r = factor_cyclotomic(&p(&[1, -1])); // 1 - t = -Φ_1
        assert_eq!(r.unit_scalar, -1);
        assert!(r.remainder.is_one());
    }

    #[test]
    fn cyc_numbers() {
        let a = parse_rational_function("1/(1-t)^2").unwrap();
        assert_eq!(cyc_number(&a).value, Some(0));
        let stanley = parse_rational_function("(1+t)^3/(1-t)^4").unwrap();
        let c = cyc_number(&stanley);
        assert_eq!(c.value, Some(3));
        assert_eq!(c.profile.exponents, BTreeMap::from([(1, -7), (2, 3)]));
        let ex62 = parse_rational_function("1 + 2t + t^2").unwrap();
        assert_eq!(cyc_number(&ex62).value, Some(2));
        let nope = parse_rational_function("(1+t+t^2)/(1-t)").unwrap();
        // Φ_3/Φ_1 = (1 - t^3)/(1 - t)^2 is binomial; (1 + 2t)/(1 - t) is not
        assert_eq!(cyc_number(&nope).value, Some(1));
        let bad = parse_rational_function("(1+2t)/(1-t)").unwrap();
        assert_eq!(cyc_number(&bad).value, None);
    }

    #[test]
    fn sign_mismatch_is_undefined() {
        let f = parse_rational_function("-1/(1-t)").unwrap();
        let c = cyc_number(&f);
        assert_eq!(c.value, None);
        assert!(!c.profile.feasible);
    }

    #[test]
    fn symmetry() {
        let stanley = parse_rational_function("(1+t)^3/(1-t)^4").unwrap();
        assert!(gorenstein_symmetry(&stanley).symmetric);
        let ex67 = parse_rational_function("(1-2t+4t^2-2t^3+t^4)/((1-t)^4(1+t^2)^2)").unwrap();
        assert!(gorenstein_symmetry(&ex67).symmetric);
        assert!(!is_cyclotomic(&ex67));
        let s = gorenstein_symmetry(&parse_rational_function("(1+2t)/(1-t)^2").unwrap());
        assert!(!s.symmetric);
        assert_eq!(s.num_sign, None);
        assert_eq!(s.den_sign, Some(1));
    }

    #[test]
    fn constant_one_is_cyclotomic() {
        assert!(is_cyclotomic(&RationalFunction::one()));
        assert_eq!(cyc_number(&RationalFunction::one()).value, Some(0));
    }
}
