//! Bigraded Betti numbers of the trivial module from a minimal free right
//! resolution, built one internal degree at a time.

use std::collections::BTreeMap;

use super::{Echelon, GradedAlgebraTruncation};
use crate::error::{Error, Result};
use crate::exact::{RationalFunction, SeriesTruncation};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `b(i, j) = dim Tor_i(k, k)_j` for internal degrees `j <= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    cutoff: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn from_entries(cutoff: usize, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let entries = entries.into_iter().filter(|&(_, b)| b > 0).collect();
        BettiTable { cutoff, entries }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, &b)| b).sum()
    }

    /// `[b_0, …, b_cutoff]`.
    pub fn row_sums(&self) -> Vec<u64> {
        (0..=self.cutoff).map(|i| self.row_sum(i)).collect()
    }

    /// Largest homological index with a nonzero entry.
    pub fn max_index(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }
}

/// Free module `⊕ e_h A(-g_h)` together with the images of its generators.
struct Level<F> {
    degrees: Vec<usize>,
    /// Image of `e_h` in the previous module, in degree `g_h`.
    images: Vec<Vec<F>>,
}

/// Offsets of each generator block in degree `j` of `⊕ e_h A(-g_h)`.
fn layout<F: Field>(a: &GradedAlgebraTruncation<F>, degrees: &[usize], j: usize) -> (Vec<Option<usize>>, usize) {
    let mut offsets = Vec::with_capacity(degrees.len());
    let mut total = 0;
    for &g in degrees {
        if g <= j {
            offsets.push(Some(total));
            total += a.dim(j - g);
        } else {
            offsets.push(None);
        }
    }
    (offsets, total)
}

/// `w · u` for `w` in degree `g` of the module with generator degrees
/// `degrees` and `u` the `u`-th basis element of `A_e`.
fn times_basis<F: Field>(a: &GradedAlgebraTruncation<F>, degrees: &[usize], w: &[F], g: usize, u: usize, e: usize) -> Vec<F> {
    let (from, _) = layout(a, degrees, g);
    let (to, len) = layout(a, degrees, g + e);
    let mut out = vec![F::zero(); len];
    for (h, &gh) in degrees.iter().enumerate() {
        let (Some(src), Some(dst)) = (from[h], to[h]) else { continue };
        let s = g - gh;
        for k in 0..a.dim(s) {
            let x = &w[src + k];
            if x.is_zero() {
                continue;
            }
            for (idx, c) in a.basis_product(s, k, e, u) {
                out[dst + idx] = out[dst + idx].clone() + x.clone() * c.clone();
            }
        }
    }
    out
}

/// Images of the degree-`j` basis of a level's module under its differential.
fn differential_columns<F: Field>(a: &GradedAlgebraTruncation<F>, level: &Level<F>, target: &[usize], j: usize) -> Vec<Vec<F>> {
    let mut cols = Vec::new();
    for (h, &g) in level.degrees.iter().enumerate() {
        if g > j {
            continue;
        }
        for u in 0..a.dim(j - g) {
            cols.push(times_basis(a, target, &level.images[h], g, u, j - g));
        }
    }
    cols
}

fn units<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n)
        .map(|i| {
            let mut v = vec![F::zero(); n];
            v[i] = F::one();
            v
        })
        .collect()
}

/// Betti numbers `b(i, j)` for `j <= n` of the trivial right module.
pub fn betti_numbers<F: Field>(a: &GradedAlgebraTruncation<F>, n: usize) -> Result<BettiTable> {
    if n > a.cutoff() {
        return Err(Error::Invalid(format!("Betti cutoff {n} exceeds the truncation cutoff {}", a.cutoff())));
    }
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    let mut levels: Vec<Level<F>> = vec![Level { degrees: vec![0], images: vec![Vec::new()] }];
    for i in 1..=n {
        let mut next = Level { degrees: Vec::new(), images: Vec::new() };
        for j in i..=n {
            let prev = &levels[i - 1];
            let kernel = if i == 1 {
                units(a.dim(j))
            } else {
                let cols = differential_columns(a, prev, &levels[i - 2].degrees, j);
                let (_, rows) = layout(a, &levels[i - 2].degrees, j);
                if rows == 0 {
                    units(cols.len())
                } else {
                    Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone()).nullspace()
                }
            };
            if kernel.is_empty() {
                continue;
            }
            let mut span = Echelon::new();
            for (h, &g) in next.degrees.iter().enumerate() {
                for u in 0..a.dim(j - g) {
                    span.insert(times_basis(a, &prev.degrees, &next.images[h], g, u, j - g));
                }
            }
            for v in kernel {
                if span.insert(v.clone()) {
                    next.degrees.push(j);
                    next.images.push(v);
                    *entries.entry((i, j)).or_insert(0) += 1;
                }
            }
        }
        if next.degrees.is_empty() {
            break;
        }
        levels.push(next);
    }
    Ok(BettiTable { cutoff: n, entries })
}

/// `(Σ (-1)^i b(i,j) t^j) · H(t) - 1` through degree `n`.
pub fn euler_check(table: &BettiTable, h: &RationalFunction, n: usize) -> SeriesTruncation {
    let mut coeffs = SeriesTruncation::zero(n).coeffs().to_vec();
    for ((i, j), b) in table.entries() {
        if j <= n {
            let b = crate::int(b as i64);
            coeffs[j] = if i % 2 == 0 { coeffs[j].clone() + b } else { coeffs[j].clone() - b };
        }
    }
    let mut residual = SeriesTruncation::new(coeffs).mul(&h.expand(n)).coeffs().to_vec();
    residual[0] = residual[0].clone() - crate::int(1);
    SeriesTruncation::new(residual)
}

/// Both inequalities relating `a_n = dim Tor^A_n` and `b_n = dim Tor^B_n`
/// for `B = A/(Ω)`, at one homological index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorInequality {
    pub n: usize,
    /// `a_n <= b_n + b_{n-1}`.
    pub upper: bool,
    /// `|b_{n+2} - b_n| <= a_{n+2} + a_n`.
    pub difference: bool,
}

impl TorInequality {
    pub fn holds(&self) -> bool {
        self.upper && self.difference
    }
}

/// Checks for `n + 2 <= min(cutoffs)`.
pub fn tor_inequality_check(a: &BettiTable, b: &BettiTable, omega_degree: usize) -> Result<Vec<TorInequality>> {
    if omega_degree == 0 {
        return Err(Error::Invalid("the normal element must have positive degree".into()));
    }
    let top = a.cutoff().min(b.cutoff());
    if top < 2 {
        return Err(Error::Invalid("Betti tables need cutoff at least 2".into()));
    }
    let (ra, rb) = (a.row_sums(), b.row_sums());
    Ok((0..=top - 2)
        .map(|n| {
            let below = if n == 0 { 0 } else { rb[n - 1] };
            TorInequality {
                n,
                upper: ra[n] <= rb[n] + below,
                difference: rb[n + 2].abs_diff(rb[n]) <= ra[n + 2] + ra[n],
            }
        })
        .collect())
}

/// Heuristic growth of `Tor(k, k)` from a finite table.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthHint {
    /// Rows vanish beyond `last_nonzero`.
    Zero { last_nonzero: usize },
    /// Row sums grow at least geometrically over the window.
    Divergent { window: (usize, usize) },
    /// Least-squares slope of `ln Σ_{i<=n} b_i` against `ln (n+1)`.
    Slope { value: f64, window: (usize, usize) },
}

pub fn growth_estimate(table: &BettiTable) -> Result<GrowthHint> {
    let n = table.cutoff();
    if n < 6 {
        return Err(Error::Invalid(format!("growth estimate needs cutoff at least 6, got {n}")));
    }
    let last = table.max_index();
    if last + 1 < n {
        return Ok(GrowthHint::Zero { last_nonzero: last });
    }
    let rows = table.row_sums();
    let window = (n / 2, n);
    let geometric = (window.0..window.1).all(|i| rows[i] > 0 && rows[i + 1] as f64 >= 1.5 * rows[i] as f64);
    if geometric {
        return Ok(GrowthHint::Divergent { window });
    }
    let partial: Vec<f64> = rows
        .iter()
        .scan(0u64, |s, &b| {
            *s += b;
            Some(*s as f64)
        })
        .collect();
    let pts: Vec<(f64, f64)> = (window.0..=window.1).map(|i| (((i + 1) as f64).ln(), partial[i].ln())).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let cov: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Ok(GrowthHint::Slope { value: cov / var, window })
}
