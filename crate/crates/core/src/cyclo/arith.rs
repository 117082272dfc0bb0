//! Small number-theoretic helpers.

use num_integer::Integer;

/// Euler's totient for every `n <= limit` (index 0 unused).
pub fn totient_sieve(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for p in 2..=limit {
        if phi[p] == p {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p;
            }
        }
    }
    phi
}

pub fn totient(n: usize) -> usize {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm_all(values: impl IntoIterator<Item = usize>) -> usize {
    values.into_iter().fold(1, |acc, v| acc.lcm(&v))
}
