use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{IntPolynomial, RationalFunction};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Free,
    MonomialQuotient,
    QuantumAffine,
    NormalQuotient,
}

impl AlgebraKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::Free => "free",
            AlgebraKind::MonomialQuotient => "monomial_quotient",
            AlgebraKind::QuantumAffine => "quantum_affine",
            AlgebraKind::NormalQuotient => "normal_quotient",
        }
    }

    fn is_pbw(self) -> bool {
        matches!(self, AlgebraKind::QuantumAffine | AlgebraKind::NormalQuotient)
    }
}

/// A word in the generators (free ambient) or a PBW exponent vector
/// (quantum affine ambient), depending on the presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<usize>);

/// A homogeneous element of a quantum affine space, as PBW terms.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalElement<F> {
    pub terms: Vec<(F, Monomial)>,
}

impl<F: Field> NormalElement<F> {
    pub fn new(terms: Vec<(F, Monomial)>) -> Self {
        NormalElement { terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect() }
    }

    pub fn degree(&self, degrees: &[usize]) -> usize {
        self.terms.first().map_or(0, |(_, m)| pbw_degree(m, degrees))
    }
}

fn pbw_degree(m: &Monomial, degrees: &[usize]) -> usize {
    m.0.iter().zip(degrees).map(|(a, d)| a * d).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation<F> {
    kind: AlgebraKind,
    degrees: Vec<usize>,
    names: Vec<String>,
    q: Vec<Vec<F>>,
    forbidden: Vec<Vec<usize>>,
    relations: Vec<NormalElement<F>>,
}

fn default_names(n: usize) -> Vec<String> {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl<F: Field> AlgebraPresentation<F> {
    fn base(kind: AlgebraKind, degrees: Vec<usize>) -> Self {
        let names = default_names(degrees.len());
        AlgebraPresentation { kind, degrees, names, q: Vec::new(), forbidden: Vec::new(), relations: Vec::new() }
    }

    /// The free algebra `k<x_1, …, x_n>`.
    pub fn free(degrees: Vec<usize>) -> Self {
        Self::base(AlgebraKind::Free, degrees)
    }

    /// The free algebra modulo the given monomials (words as letter indices).
    pub fn monomial_quotient(degrees: Vec<usize>, forbidden: Vec<Vec<usize>>) -> Self {
        AlgebraPresentation { forbidden, ..Self::base(AlgebraKind::MonomialQuotient, degrees) }
    }

    /// `k_{p_ij}[x_1, …, x_n]` with `x_j x_i = q[i][j] x_i x_j` for `i < j`.
    pub fn quantum_affine(degrees: Vec<usize>, q: Vec<Vec<F>>) -> Self {
        AlgebraPresentation { q, ..Self::base(AlgebraKind::QuantumAffine, degrees) }
    }

    /// A quantum affine space modulo a sequence of normal elements.
    pub fn normal_quotient(degrees: Vec<usize>, q: Vec<Vec<F>>, relations: Vec<NormalElement<F>>) -> Self {
        AlgebraPresentation { q, relations, ..Self::base(AlgebraKind::NormalQuotient, degrees) }
    }

    /// `k[x_1, …, x_n]` with every generator in degree 1, all `p_ij = c`.
    pub fn uniform_quantum(n: usize, c: F) -> Self {
        let q = (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { c.clone() }).collect()).collect();
        Self::quantum_affine(vec![1; n], q)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        self.names = names;
        self
    }

    /// Same presentation with normal elements appended (the kind becomes a
    /// normal quotient).
    pub fn with_relations(&self, relations: Vec<NormalElement<F>>) -> Self {
        let mut out = self.clone();
        out.kind = AlgebraKind::NormalQuotient;
        out.relations.extend(relations);
        out
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn q(&self) -> &[Vec<F>] {
        &self.q
    }

    pub fn forbidden(&self) -> &[Vec<usize>] {
        &self.forbidden
    }

    pub fn relations(&self) -> &[NormalElement<F>] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn generator_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.degrees.len();
        if n == 0 {
            return Err(Error::Invalid("an algebra needs at least one generator".into()));
        }
        if self.degrees.contains(&0) {
            return Err(Error::Invalid("generator degrees must be positive".into()));
        }
        if self.names.len() != n {
            return Err(Error::DimensionMismatch(format!("{} names for {n} generators", self.names.len())));
        }
        if self.kind.is_pbw() {
            if self.q.len() != n || self.q.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch(format!("q must be {n}x{n}")));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && (self.q[i][j].clone() * self.q[j][i].clone()) != F::one() {
                        return Err(Error::Invalid(format!("q[{i}][{j}] · q[{j}][{i}] must be 1")));
                    }
                }
            }
        }
        for w in &self.forbidden {
            if w.is_empty() || w.iter().any(|&l| l >= n) {
                return Err(Error::Invalid("forbidden words must be nonempty words in the generators".into()));
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if r.terms.is_empty() {
                return Err(Error::Invalid(format!("normal element {k} is zero")));
            }
            if r.terms.iter().any(|(_, m)| m.0.len() != n) {
                return Err(Error::DimensionMismatch(format!("normal element {k} has exponent vectors of the wrong length")));
            }
            let e = r.degree(&self.degrees);
            if e == 0 {
                return Err(Error::Invalid(format!("normal element {k} has degree 0")));
            }
            if r.terms.iter().any(|(_, m)| pbw_degree(m, &self.degrees) != e) {
                return Err(Error::Invalid(format!("normal element {k} is not homogeneous")));
            }
        }
        Ok(())
    }

    /// Hilbert series implied by the presentation, when it is a closed
    /// formula (not for monomial quotients).
    pub fn hilbert_series(&self) -> Option<RationalFunction> {
        let binom = |a: usize| IntPolynomial::one_minus_t_pow(a);
        match self.kind {
            AlgebraKind::Free => {
                let mut den = IntPolynomial::one();
                for &d in &self.degrees {
                    den = &den - &IntPolynomial::monomial(1.into(), d);
                }
                RationalFunction::normalize(&IntPolynomial::one(), &den).ok()
            }
            AlgebraKind::MonomialQuotient => None,
            AlgebraKind::QuantumAffine | AlgebraKind::NormalQuotient => {
                let num = self.relations.iter().fold(IntPolynomial::one(), |acc, r| &acc * &binom(r.degree(&self.degrees)));
                let den = self.degrees.iter().fold(IntPolynomial::one(), |acc, &d| &acc * &binom(d));
                RationalFunction::normalize(&num, &den).ok()
            }
        }
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        if self.kind.is_pbw() {
            let mut e = vec![0; self.degrees.len()];
            e[i] = 1;
            Monomial(e)
        } else {
            Monomial(vec![i])
        }
    }

    /// The monomial as a word in the generators.
    pub fn letters(&self, m: &Monomial) -> Vec<usize> {
        if self.kind.is_pbw() {
            m.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i).take(a)).collect()
        } else {
            m.0.clone()
        }
    }

    /// `m = x_i · rest` with coefficient 1.
    pub fn split_first(&self, m: &Monomial) -> Option<(usize, Monomial)> {
        if self.kind.is_pbw() {
            let i = m.0.iter().position(|&a| a > 0)?;
            let mut rest = m.0.clone();
            rest[i] -= 1;
            Some((i, Monomial(rest)))
        } else {
            let (&first, rest) = m.0.split_first()?;
            Some((first, Monomial(rest.to_vec())))
        }
    }

    pub fn degree_of(&self, m: &Monomial) -> usize {
        if self.kind.is_pbw() {
            pbw_degree(m, &self.degrees)
        } else {
            m.0.iter().map(|&l| self.degrees[l]).sum()
        }
    }

    fn contains_forbidden(&self, w: &[usize]) -> bool {
        self.forbidden.iter().any(|f| w.windows(f.len()).any(|s| s == f.as_slice()))
    }

    /// Ambient monomials of degree `d`.
    pub fn ambient_monomials(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        if self.kind.is_pbw() {
            let mut cur = vec![0; self.degrees.len()];
            self.pbw_rec(0, d, &mut cur, &mut out);
        } else {
            let mut cur = Vec::new();
            self.word_rec(d, &mut cur, &mut out);
        }
        out
    }

    fn pbw_rec(&self, i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if i == self.degrees.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let d = self.degrees[i];
        for a in 0..=left / d {
            cur[i] = a;
            self.pbw_rec(i + 1, left - a * d, cur, out);
        }
        cur[i] = 0;
    }

    fn word_rec(&self, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for (l, &d) in self.degrees.iter().enumerate() {
            if d <= left {
                cur.push(l);
                let bad = self.forbidden.iter().any(|f| cur.ends_with(f));
                if !bad {
                    self.word_rec(left - d, cur, out);
                }
                cur.pop();
            }
        }
    }

    /// Product of ambient monomials: `c · w`, or `None` when it vanishes.
    pub fn ambient_mul(&self, a: &Monomial, b: &Monomial) -> Option<(F, Monomial)> {
        if self.kind.is_pbw() {
            // x^a x^b: each x_j of a passes each x_i of b with i < j.
            let n = self.degrees.len();
            let mut c = F::one();
            for i in 0..n {
                if b.0[i] == 0 {
                    continue;
                }
                for j in i + 1..n {
                    let e = (a.0[j] * b.0[i]) as u64;
                    if e > 0 {
                        c = c * self.q[i][j].pow(e);
                    }
                }
            }
            let w = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
            Some((c, Monomial(w)))
        } else {
            let mut w = a.0.clone();
            w.extend_from_slice(&b.0);
            if self.contains_forbidden(&w) {
                None
            } else {
                Some((F::one(), Monomial(w)))
            }
        }
    }

    /// Product of two ambient combinations, with like terms collected.
    pub fn ambient_mul_sum(&self, a: &[(F, Monomial)], b: &[(F, Monomial)]) -> Vec<(F, Monomial)> {
        let mut out: Vec<(F, Monomial)> = Vec::new();
        for (x, u) in a {
            for (y, v) in b {
                if let Some((c, w)) = self.ambient_mul(u, v) {
                    let term = x.clone() * y.clone() * c;
                    match out.iter_mut().find(|(_, m)| *m == w) {
                        Some((acc, _)) => *acc = acc.clone() + term,
                        None => out.push((term, w)),
                    }
                }
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        out
    }

    pub fn label(&self, m: &Monomial) -> String {
        let letters = self.letters(m);
        if letters.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let run = letters[i..].iter().take_while(|&&x| x == l).count();
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.names[l]);
            if run > 1 {
                let _ = write!(s, "^{run}");
            }
            i += run;
        }
        s
    }

    /// The same presentation over another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> AlgebraPresentation<G> {
        AlgebraPresentation {
            kind: self.kind,
            degrees: self.degrees.clone(),
            names: self.names.clone(),
            q: self.q.iter().map(|r| r.iter().map(&f).collect()).collect(),
            forbidden: self.forbidden.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| NormalElement { terms: r.terms.iter().map(|(c, m)| (f(c), m.clone())).collect() })
                .collect(),
        }
    }
}
