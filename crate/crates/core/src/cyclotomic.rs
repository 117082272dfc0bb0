//! Elements of cyclotomic fields ℚ(ζ_N).
//!
//! An element carries its own `N` and its coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`. Binary operations lift both operands to
//! `lcm(N, M)` via `ζ_N = ζ_L^{L/N}`; results that are rational drop back to
//! order 1, so ℚ is represented cheaply.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::cyclotomic_polynomial;
use crate::exact::Poly;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coords: Vec<BigRational>,
}

fn phi_monic(n: usize) -> Vec<BigRational> {
    cyclotomic_polynomial(n)
        .coeffs()
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

/// Reduce a coefficient list modulo the monic Φ_n, padded to length φ(n).
fn reduce_mod_phi(mut c: Vec<BigRational>, n: usize) -> Vec<BigRational> {
    let phi = phi_monic(n);
    let deg = phi.len() - 1;
    for i in (deg..c.len()).rev() {
        if c[i].is_zero() {
            continue;
        }
        let lead = c[i].clone();
        for (j, pj) in phi.iter().enumerate() {
            if !pj.is_zero() {
                c[i - deg + j] = c[i - deg + j].clone() - lead.clone() * pj.clone();
            }
        }
    }
    c.resize(deg, BigRational::zero());
    c
}

impl Cyclotomic {
    /// `Σ c_k ζ_N^k` for arbitrary `k`.
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Self {
        assert!(order >= 1);
        let mut c = coeffs;
        // ζ^N = 1: fold exponents >= N before reducing.
        if c.len() > order {
            let mut folded = vec![BigRational::zero(); order];
            for (k, v) in c.into_iter().enumerate() {
                folded[k % order] = folded[k % order].clone() + v;
            }
            c = folded;
        }
        Cyclotomic { order, coords: reduce_mod_phi(c, order) }.shrink()
    }

    pub fn rational(q: BigRational) -> Self {
        Cyclotomic { order: 1, coords: vec![q] }
    }

    /// `ζ_N^k`.
    pub fn zeta(order: usize, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_coeffs(order, c)
    }

    /// Evaluate a rational polynomial at ζ_N.
    pub fn from_poly(order: usize, p: &Poly<BigRational>) -> Self {
        Self::from_coeffs(order, p.coeffs().to_vec())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Coordinates after lifting into ℚ(ζ_m); `order` must divide `m`.
    pub fn coords_in(&self, m: usize) -> Vec<BigRational> {
        self.lift(m).coords
    }

    pub fn lift(&self, m: usize) -> Self {
        assert!(m % self.order == 0, "cannot lift ζ_{} into ℚ(ζ_{m})", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = m / self.order;
        let mut c = vec![BigRational::zero(); (self.coords.len().max(1) - 1) * step + 1];
        for (k, v) in self.coords.iter().enumerate() {
            c[k * step] = v.clone();
        }
        Cyclotomic { order: m, coords: reduce_mod_phi(c, m) }
    }

    fn shrink(self) -> Self {
        if self.order > 1 && self.coords.iter().skip(1).all(Zero::is_zero) {
            let q = self.coords.into_iter().next().unwrap_or_else(BigRational::zero);
            return Cyclotomic { order: 1, coords: vec![q] };
        }
        self
    }

    fn common(&self, other: &Self) -> (usize, Vec<BigRational>, Vec<BigRational>) {
        let m = self.order.lcm(&other.order);
        (m, self.coords_in(m), other.coords_in(m))
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    /// Complex conjugate (ζ -> ζ^{-1}).
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut c = vec![BigRational::zero(); n];
        for (k, v) in self.coords.iter().enumerate() {
            c[(n - k) % n] = v.clone();
        }
        Self::from_coeffs(n, c)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::rational(BigRational::one())
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        if self.order == 1 && rhs.order == 1 {
            return Self::rational(self.coords[0].clone() + rhs.coords[0].clone());
        }
        let (m, a, b) = self.common(&rhs);
        Cyclotomic { order: m, coords: a.into_iter().zip(b).map(|(x, y)| x + y).collect() }.shrink()
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            let q = &self.coords[0];
            return Cyclotomic { order: rhs.order, coords: rhs.coords.iter().map(|c| c * q).collect() }
                .shrink();
        }
        if rhs.order == 1 {
            return rhs * self;
        }
        let (m, a, b) = self.common(&rhs);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = prod[i + j].clone() + x * y;
                }
            }
        }
        Cyclotomic { order: m, coords: reduce_mod_phi(prod, m) }.shrink()
    }
}

impl Div for Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: Cyclotomic) -> Cyclotomic {
        self * rhs.inv().expect("division by zero in cyclotomic field")
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::rational(self.coords[0].recip()));
        }
        let a = Poly::new(self.coords.clone());
        let phi = Poly::new(phi_monic(self.order));
        let (g, s, _) = a.ext_gcd(&phi);
        debug_assert!(g == Poly::one(), "Φ_N is irreducible");
        Some(Self::from_poly(self.order, &s))
    }

    fn from_rational(q: BigRational) -> Self {
        Self::rational(q)
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coords[0].clone())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let var = format!("z{}", self.order);
        crate::exact::write_field_terms(f, &self.coords, &var)
    }
}
