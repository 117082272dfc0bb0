#![allow(dead_code)]

use std::collections::BTreeMap;

use gradinv::algebra::{betti_numbers, euler_check, AlgebraPresentation, GradedAlgebraTruncation, Monomial, NormalElement};
use gradinv::cyclo::{cyc_number, cyclotomic_polynomial, factor_cyclotomic};
use gradinv::exact::{parse_rational_function, reconstruct, required_order};
use gradinv::grp::{
    classical_bireflection_rank, classify_pole, closure, molien, subgroups, trace_char_poly, PoleVerdict, Provenance,
    TraceAssignment, SUBGROUP_LIMIT,
};
use gradinv::{int, BigRational, Cyclotomic, CyclotomicMatrix, Field, IntPolynomial, Matrix, RationalFunction};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}


pub fn rf(s: &str) -> RationalFunction {
    parse_rational_function(s).unwrap()
}

pub fn c(n: i64) -> Cyclotomic {
    Cyclotomic::from_i64(n)
}

pub fn z3(k: i64) -> Cyclotomic {
    Cyclotomic::zeta(3, k)
}

/// `g1(1, ω)`, `g2(1, 1)` and `g3(1, 1)`.
pub fn sklyanin_generators() -> Vec<CyclotomicMatrix> {
    let g1 = Matrix::diagonal(&[z3(1), z3(2), c(1)]);
    let g2 = Matrix::from_rows(vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)]]);
    let g3 = Matrix::from_rows(vec![vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)], vec![c(0), c(1), c(0)]]);
    vec![g1, g2, g3]
}

pub fn to_rational_matrix(m: &CyclotomicMatrix) -> Matrix<BigRational> {
    m.map(|x| x.to_rational().expect("rational entry"))
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(coeffs)
}

/// Canonical form: coprime, content one, positive constant denominator,
/// and the same function as the input.
pub fn check_normal_form(num: &[i64], den: &[i64]) -> Check {
    let (p, q) = (poly(num), poly(den));
    let Ok(f) = RationalFunction::normalize(&p, &q) else {
        ensure!(q.is_zero() || q.constant_term().is_zero(), "normalize rejected a valid denominator");
        return Ok(());
    };
    if f.is_zero() {
        ensure!(p.is_zero(), "nonzero input normalized to zero");
        return Ok(());
    }
    ensure!(f.num().gcd(f.den()).degree() == Some(0), "numerator and denominator share a factor: {f:?}");
    ensure!(f.den().constant_term().is_positive(), "denominator constant term not positive");
    ensure!(f.num().content().gcd(&f.den().content()).is_one(), "common content remains");
    ensure!(&(f.num() * &q) == &(&p * f.den()), "normal form changed the function");
    Ok(())
}

/// Reconstruction of an expansion at the exact and at looser bounds.
pub fn check_reconstruct_expand(num: &[i64], den: &[i64]) -> Check {
    let Ok(f) = RationalFunction::normalize(&poly(num), &poly(den)) else { return Ok(()) };
    let nb = f.num().degree().unwrap_or(0);
    let db = f.den().degree().unwrap_or(0);
    for slack in 0..2 {
        let (a, b) = (nb + slack, db + slack);
        let s = f.expand(required_order(a, b));
        let g = reconstruct(&s, a, b).map_err(|e| format!("reconstruct failed at ({a}, {b}): {e}"))?;
        ensure!(g == f, "reconstructed {g:?} from {f:?}");
    }
    Ok(())
}

/// `Π Φ_n · extra` factors back into itself with at least the planted
/// cyclotomic exponents.
pub fn check_cyclotomic_reassembly(indices: &[usize], extra: &[i64]) -> Check {
    let mut p = poly(extra);
    if p.is_zero() {
        return Ok(());
    }
    let mut planted: BTreeMap<usize, u32> = BTreeMap::new();
    for &n in indices {
        p = &p * &cyclotomic_polynomial(n);
        *planted.entry(n).or_default() += 1;
    }
    let f = factor_cyclotomic(&p);
    ensure!(f.product() == p, "factorization does not reassemble");
    for (n, e) in planted {
        ensure!(f.exponents.get(&n).copied().unwrap_or(0) >= e, "lost planted factor Φ_{n}");
    }
    let rem = factor_cyclotomic(&f.remainder);
    ensure!(rem.exponents.is_empty(), "remainder still has cyclotomic factors");
    Ok(())
}

/// A product of binomials `(1 - t^a)^{e_a}` has exactly that profile.
pub fn check_mobius_profile(exponents: &[(usize, i64)]) -> Check {
    let mut want: BTreeMap<usize, i64> = BTreeMap::new();
    for &(a, e) in exponents {
        *want.entry(a).or_default() += e;
    }
    want.retain(|_, e| *e != 0);
    let factors: Vec<(usize, i64)> = want.iter().map(|(&a, &e)| (a, e)).collect();
    let f = RationalFunction::binomial_ratio(&factors);
    let n = cyc_number(&f);
    ensure!(n.profile.feasible, "profile of {f:?} not found");
    ensure!(n.profile.exponents == want, "profile {:?}, planted {want:?}", n.profile.exponents);
    ensure!(n.profile.to_rational_function() == f, "profile does not reproduce the function");
    let m: i64 = want.values().filter(|&&e| e > 0).sum();
    ensure!(n.value == Some(m as u64), "cyc number {:?}, expected {m}", n.value);
    Ok(())
}

/// Diagonal generator `diag(ζ_m^{k_1}, ζ_m^{k_2})`, optionally followed by
/// the coordinate swap.
pub fn small_group_generators(m: usize, exps: &[(i64, i64)], swap: bool) -> Vec<CyclotomicMatrix> {
    let mut gens: Vec<CyclotomicMatrix> = exps
        .iter()
        .map(|&(a, b)| Matrix::diagonal(&[Cyclotomic::zeta(m, a), Cyclotomic::zeta(m, b)]))
        .collect();
    if swap {
        gens.push(Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(1), c(0)]]));
    }
    gens
}

/// Subgroup and element orders divide the group order.
pub fn check_lagrange(gens: &[CyclotomicMatrix], dim: usize) -> Check {
    let g = closure(gens, dim, 1000).map_err(|e| e.to_string())?;
    let n = g.order();
    for i in 0..n {
        ensure!(n % g.element_order(i) == 0, "element order {} does not divide {n}", g.element_order(i));
    }
    if n <= SUBGROUP_LIMIT {
        for h in subgroups(&g).map_err(|e| e.to_string())? {
            ensure!(n % h.order() == 0, "subgroup of order {} in a group of order {n}", h.order());
        }
    }
    Ok(())
}

/// The Molien series has nonnegative integer coefficients.
pub fn check_molien_nonnegative(gens: &[CyclotomicMatrix], dim: usize, order: usize) -> Check {
    let g = closure(gens, dim, 1000).map_err(|e| e.to_string())?;
    let h = molien(&g, &TraceAssignment::char_poly(&g)).map_err(|e| e.to_string())?;
    for (i, a) in h.expand(order).coeffs().iter().enumerate() {
        ensure!(a.is_integer() && !a.is_negative(), "coefficient {i} of the Molien series is {a}");
    }
    ensure!(h.expand(0).coeffs()[0] == int(1), "Molien series does not start with 1");
    Ok(())
}

/// Quantum affine space with `q[i][j]` from `choices`, optionally modulo a
/// power of one generator.
pub fn quantum_presentation(n: usize, choices: &[(i64, i64)], power: Option<(usize, usize)>) -> AlgebraPresentation<BigRational> {
    let mut q = vec![vec![int(1); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = choices[k % choices.len()];
            k += 1;
            let v = BigRational::new(a.into(), b.into());
            q[j][i] = v.recip();
            q[i][j] = v;
        }
    }
    let p = AlgebraPresentation::quantum_affine(vec![1; n], q);
    match power {
        Some((i, e)) => {
            let mut exps = vec![0; n];
            exps[i % n] = e;
            p.with_relations(vec![NormalElement::new(vec![(int(1), Monomial(exps))])])
        }
        None => p,
    }
}

/// The Euler characteristic of the Betti table inverts the Hilbert series.
pub fn check_euler(p: &AlgebraPresentation<BigRational>, n: usize) -> Check {
    let t = GradedAlgebraTruncation::build(p, n).map_err(|e| e.to_string())?;
    let b = betti_numbers(&t, n).map_err(|e| e.to_string())?;
    ensure!(b.get(0, 0) == 1, "b(0,0) = {}", b.get(0, 0));
    for ((i, j), _) in b.entries() {
        ensure!(j >= i, "b({i},{j}) nonzero below the diagonal");
    }
    ensure!(b.get(1, 1) == t.dim(1) as u64, "b(1,1) = {} but dim A_1 = {}", b.get(1, 1), t.dim(1));
    ensure!(b.row_sum(1) == b.get(1, 1), "generators found above degree 1");
    let dims: Vec<i64> = t.dims().iter().map(|&d| d as i64).collect();
    let h = RationalFunction::polynomial(IntPolynomial::from_i64(&dims));
    let r = euler_check(&b, &h, n);
    ensure!(r.is_zero(), "nonzero Euler residual {r:?}");
    Ok(())
}

/// Monomial algebra on `letters` generators with the given length-two
/// words removed.
pub fn monomial_presentation(letters: usize, words: &[(usize, usize)]) -> AlgebraPresentation<BigRational> {
    let forbidden = words.iter().map(|&(a, b)| vec![a % letters, b % letters]).collect();
    AlgebraPresentation::monomial_quotient(vec![1; letters], forbidden)
}

/// Closed subsets containing the identity, found by include/exclude
/// backtracking with a closure prune.
pub fn brute_force_closed_subsets(table: &[Vec<usize>]) -> std::collections::BTreeSet<u64> {
    fn go(table: &[Vec<usize>], pos: usize, inc: u64, exc: u64, out: &mut std::collections::BTreeSet<u64>) {
        let n = table.len();
        for a in (0..n).filter(|a| inc >> a & 1 == 1) {
            for b in (0..n).filter(|b| inc >> b & 1 == 1) {
                if exc >> table[a][b] & 1 == 1 {
                    return;
                }
            }
        }
        if pos == n {
            out.insert(inc);
            return;
        }
        go(table, pos + 1, inc | 1 << pos, exc, out);
        go(table, pos + 1, inc, exc | 1 << pos, out);
    }
    let mut out = std::collections::BTreeSet::new();
    go(table, 1, 1, 0, &mut out);
    out
}

fn to_q(p: &IntPolynomial) -> Vec<BigRational> {
    p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// `expand(p/q)` times `q` is `p` to the truncation order, the normal form
/// is idempotent, and sums and products commute with expansion.
pub fn check_expansion(num: &[i64], den: &[i64], other: (&[i64], &[i64]), order: usize) -> Check {
    let (p, q) = (poly(num), poly(den));
    let Ok(f) = RationalFunction::normalize(&p, &q) else { return Ok(()) };
    let s = f.expand(order);
    let (pq, qq) = (to_q(&p), to_q(&q));
    for k in 0..=order {
        let conv = (0..=k).fold(BigRational::zero(), |acc, i| {
            acc + s.coeff(i).clone() * qq.get(k - i).cloned().unwrap_or_else(BigRational::zero)
        });
        ensure!(conv == pq.get(k).cloned().unwrap_or_else(BigRational::zero), "convolution differs at t^{k}");
    }
    let again = RationalFunction::normalize(f.num(), f.den()).map_err(|e| e.to_string())?;
    ensure!(again == f, "normalize is not idempotent");
    let Ok(g) = RationalFunction::normalize(&poly(other.0), &poly(other.1)) else { return Ok(()) };
    ensure!((&f + &g).expand(order) == f.expand(order).add(&g.expand(order)), "sum does not commute with expand");
    ensure!((&f * &g).expand(order) == f.expand(order).mul(&g.expand(order)), "product does not commute with expand");
    Ok(())
}

fn derivative(p: &IntPolynomial) -> IntPolynomial {
    IntPolynomial::new(p.coeffs().iter().enumerate().skip(1).map(|(i, c)| c * gradinv::BigInt::from(i)).collect())
}

/// The squarefree part of a cyclotomic polynomial divides `t^L - 1`.
pub fn check_squarefree_divides(indices: &[usize], sign: i64) -> Check {
    let mut p = IntPolynomial::from_i64(&[sign]);
    for &n in indices {
        p = &p * &cyclotomic_polynomial(n);
    }
    let f = factor_cyclotomic(&p);
    ensure!(f.is_cyclotomic(), "product of cyclotomic polynomials not recognized");
    if p.degree() == Some(0) {
        return Ok(());
    }
    let g = p.gcd(&derivative(&p));
    let squarefree = p.div_exact(&g).ok_or("gcd does not divide")?;
    let l = f.exponents.keys().fold(1usize, |acc, &n| acc.lcm(&n));
    let mut target = vec![0i64; l + 1];
    target[0] = -1;
    target[l] = 1;
    ensure!(poly(&target).div_exact(&squarefree).is_some(), "squarefree part does not divide t^{l} - 1");
    Ok(())
}

/// No other profile on orders `<= max order` with exponents in `-3..=3`
/// gives the same function.
pub fn check_profile_unique(exponents: &[(usize, i64)]) -> Check {
    let f = RationalFunction::binomial_ratio(exponents);
    let top = exponents.iter().map(|&(a, _)| a).max().unwrap_or(1);
    let mut want: BTreeMap<usize, i64> = BTreeMap::new();
    for &(a, e) in exponents {
        *want.entry(a).or_default() += e;
    }
    want.retain(|_, e| *e != 0);
    let mut hits = Vec::new();
    let mut e = vec![-3i64; top];
    loop {
        let factors: Vec<(usize, i64)> = e.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i + 1, x)).collect();
        if RationalFunction::binomial_ratio(&factors) == f {
            hits.push(factors.into_iter().collect::<BTreeMap<_, _>>());
        }
        let Some(k) = e.iter().position(|&x| x < 3) else { break };
        e[k] += 1;
        for x in &mut e[..k] {
            *x = -3;
        }
    }
    ensure!(hits == vec![want.clone()], "profiles {hits:?}, planted {want:?}");
    ensure!(cyc_number(&f).profile.exponents == want, "Möbius profile differs from the unique solution");
    Ok(())
}

/// Symmetry is unchanged by a common palindromic factor.
pub fn check_gorenstein_invariance(num: &[i64], den: &[i64], half: &[i64]) -> Check {
    let Ok(f) = RationalFunction::normalize(&poly(num), &poly(den)) else { return Ok(()) };
    let mut pal = half.to_vec();
    pal.extend(half.iter().rev());
    let pal = poly(&pal);
    if pal.is_zero() || pal.constant_term().is_zero() {
        return Ok(());
    }
    let g = RationalFunction::normalize(&(&poly(num) * &pal), &(&poly(den) * &pal)).map_err(|e| e.to_string())?;
    ensure!(gradinv::cyclo::gorenstein_symmetry(&f) == gradinv::cyclo::gorenstein_symmetry(&g), "symmetry changed");
    Ok(())
}

/// Section and Brenti–Welker transform agree on `h / (1 - t)^d`.
pub fn check_bw_section(h: &[i64], d: usize, r: usize) -> Check {
    let h = poly(h);
    if h.is_zero() {
        return Ok(());
    }
    let f = RationalFunction::normalize(&h, &IntPolynomial::one_minus_t_pow(1).pow(d as u32)).unwrap();
    let section = gradinv::hilbert::veronese_section(&f, r, None).map_err(|e| e.to_string())?;
    let bw = gradinv::hilbert::veronese_bw(&h, d, r);
    ensure!(section == bw, "section {section:?} vs transform {bw:?}");
    Ok(())
}

/// The section expands to the strided expansion of the input.
pub fn check_section_oracle(num: &[i64], den: &[i64], r: usize, order: usize) -> Check {
    let Ok(f) = RationalFunction::normalize(&poly(num), &poly(den)) else { return Ok(()) };
    let v = gradinv::hilbert::veronese_section(&f, r, None).map_err(|e| e.to_string())?;
    ensure!(v.expand(order) == f.expand(r * order).section(r), "section expansion differs");
    Ok(())
}

fn binomial(n: i64, k: i64) -> gradinv::BigInt {
    if k < 0 || n < k {
        return gradinv::BigInt::zero();
    }
    (0..k).fold(gradinv::BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Symmetry and inclusion–exclusion for bounded compositions.
pub fn check_partition_identities(a: usize, b: usize, c: usize) -> Check {
    use gradinv::hilbert::partition_number;
    let n = partition_number(a, b, c);
    if c <= a * b {
        ensure!(n == partition_number(a, b, a * b - c), "symmetry fails at ({a}, {b}, {c})");
    }
    let (ai, bi, ci) = (a as i64, b as i64, c as i64);
    let sum: gradinv::BigInt = (0..=bi)
        .map(|k| {
            let term = binomial(bi, k) * binomial(ci - k * (ai + 1) + bi - 1, bi - 1);
            if k % 2 == 0 { term } else { -term }
        })
        .sum();
    ensure!(n == sum, "inclusion-exclusion fails at ({a}, {b}, {c}): {n} vs {sum}");
    Ok(())
}

/// Multiplying a trace by a unit at `t = 1` leaves its pole class alone.
pub fn check_pole_invariance(den_roots: &[i64], unit: (&[i64], &[i64]), n: usize) -> Check {
    let den = den_roots.iter().fold(IntPolynomial::one(), |acc, &r| &acc * &poly(&[1, -r]));
    let f = RationalFunction::normalize(&IntPolynomial::one(), &den).unwrap();
    let (u, v) = (poly(unit.0), poly(unit.1));
    let one = gradinv::BigInt::one();
    if u.eval(&one).is_zero() || v.eval(&one).is_zero() || u.constant_term().is_zero() || v.constant_term().is_zero() {
        return Ok(());
    }
    let m = RationalFunction::normalize(&u, &v).unwrap();
    let a = classify_pole(&f.to_field::<BigRational>(), n);
    let b = classify_pole(&(&f * &m).to_field::<BigRational>(), n);
    ensure!(a == b, "pole class changed: {a:?} vs {b:?}");
    Ok(())
}

/// For diagonal maps the pole order is the multiplicity of eigenvalue one.
pub fn check_diagonal_verdict(lambdas: &[Cyclotomic]) -> Check {
    let g = Matrix::diagonal(lambdas);
    let n = lambdas.len();
    let pc = classify_pole(&trace_char_poly(&g), n);
    let (rank, bireflection) = classical_bireflection_rank(&g);
    ensure!(pc.pole_order == (n - rank) as i64, "pole order {} vs rank {rank}", pc.pole_order);
    ensure!(pc.verdict.is_quasi_bireflection() == (rank == 1 || rank == 2), "quasi-bireflection verdict disagrees with rank {rank}");
    ensure!((pc.verdict != PoleVerdict::Neither) == bireflection, "bireflection flag disagrees with the verdict");
    Ok(())
}

/// Char-poly trace equals the brute-force trace on a twisted space.
pub fn check_char_poly_trace(lambdas: &[Cyclotomic], q: Vec<Vec<Cyclotomic>>, order: usize) -> Check {
    let n = lambdas.len();
    let t = GradedAlgebraTruncation::build(&AlgebraPresentation::quantum_affine(vec![1; n], q), order).map_err(|e| e.to_string())?;
    let g = Matrix::diagonal(lambdas);
    let s = gradinv::algebra::brute_force_trace(&g, &t, order).map_err(|e| e.to_string())?;
    ensure!(s == trace_char_poly(&g).expand(order), "brute-force trace differs from the char-poly trace");
    Ok(())
}

/// Molien series of brute-force traces counts joint fixed vectors.
pub fn check_molien_invariants(gens: &[CyclotomicMatrix], sign: i64, order: usize) -> Check {
    let dim = gens[0].rows();
    let g = closure(gens, dim, 100).map_err(|e| e.to_string())?;
    let t = GradedAlgebraTruncation::build(&AlgebraPresentation::uniform_quantum(dim, int(sign)), order).map_err(|e| e.to_string())?;
    let mut traces = Vec::new();
    for m in g.elements() {
        let s = gradinv::algebra::brute_force_trace(&to_rational_matrix(m), &t, order).map_err(|e| e.to_string())?;
        traces.push(reconstruct(&s, dim, dim).map_err(|e| e.to_string())?.to_field::<Cyclotomic>());
    }
    let h = molien(&g, &TraceAssignment::from_traces(traces, Provenance::BruteForce)).map_err(|e| e.to_string())?;
    let rational: Vec<Matrix<BigRational>> = gens.iter().map(to_rational_matrix).collect();
    let counts = gradinv::algebra::invariant_dims(&rational, &t, order).map_err(|e| e.to_string())?;
    let want: Vec<BigRational> = counts.iter().map(|&d| int(d as i64)).collect();
    ensure!(h.expand(order).coeffs() == want.as_slice(), "Molien {:?} vs counts {counts:?}", h.expand(order));
    Ok(())
}

/// Signed permutation matrix from a permutation and sign pattern.
pub fn signed_permutation(perm: &[usize], signs: &[bool]) -> CyclotomicMatrix {
    let n = perm.len();
    Matrix::from_fn(n, n, |i, j| if perm[j] == i { c(if signs[j] { -1 } else { 1 }) } else { c(0) })
}

/// Dimensions of a weighted quantum affine space, optionally modulo
/// powers of distinct generators, match the product formula.
pub fn check_quotient_dims(degrees: &[usize], choices: &[(i64, i64)], powers: &[(usize, usize)], order: usize) -> Check {
    let n = degrees.len();
    let mut p = quantum_presentation(n, choices, None);
    p = AlgebraPresentation::quantum_affine(degrees.to_vec(), p.q().to_vec());
    let mut used = vec![false; n];
    let mut rel_degrees = Vec::new();
    let mut rels = Vec::new();
    for &(i, e) in powers {
        let i = i % n;
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut exps = vec![0; n];
        exps[i] = e;
        rels.push(NormalElement::new(vec![(int(1), Monomial(exps))]));
        rel_degrees.push(degrees[i] * e);
    }
    if !rels.is_empty() {
        p = p.with_relations(rels);
    }
    let t = GradedAlgebraTruncation::build(&p, order).map_err(|e| e.to_string())?;
    let desc = gradinv::hilbert::GradedRingDescriptor::new(degrees.to_vec(), rel_degrees).map_err(|e| e.to_string())?;
    let want = gradinv::hilbert::quotient_series(&desc).expand(order);
    let got: Vec<BigRational> = t.dims().iter().map(|&d| int(d as i64)).collect();
    ensure!(got.as_slice() == want.coeffs(), "dims {:?} vs series {want:?}", t.dims());
    Ok(())
}

/// `b(1, j)` counts generators of degree `j`.
pub fn check_first_betti_row(degrees: &[usize], order: usize) -> Check {
    let n = degrees.len();
    let p = AlgebraPresentation::quantum_affine(degrees.to_vec(), quantum_presentation(n, &[(-1, 1)], None).q().to_vec());
    let t = GradedAlgebraTruncation::build(&p, order).map_err(|e| e.to_string())?;
    let b = betti_numbers(&t, order).map_err(|e| e.to_string())?;
    for j in 1..=order {
        let gens = degrees.iter().filter(|&&d| d == j).count() as u64;
        ensure!(b.get(1, j) == gens, "b(1,{j}) = {} but {gens} generators", b.get(1, j));
    }
    Ok(())
}
