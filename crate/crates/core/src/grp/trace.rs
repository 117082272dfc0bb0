//! Trace series of group elements, Molien sums, homological determinants
//! and the pole-order classification of automorphisms.

use num_rational::BigRational;

use super::{CyclotomicMatrix, FiniteMatrixGroup};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::exact::{RatFunc, RationalFunction};
use crate::scalar::Field;

/// `1 / det(I - t·g)`.
pub fn trace_char_poly(g: &CyclotomicMatrix) -> RatFunc<Cyclotomic> {
    RatFunc::reciprocal_of(g.reciprocal_char_poly()).expect("det(I - t g) is 1 at t = 0")
}

/// Where a trace series came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    CharPoly,
    BruteForce,
    UserSupplied,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::CharPoly => "charpoly",
            Provenance::BruteForce => "brute-force",
            Provenance::UserSupplied => "user-supplied",
        }
    }
}

/// A trace series for every element of a group, indexed like
/// [`FiniteMatrixGroup::elements`].
#[derive(Clone, Debug)]
pub struct TraceAssignment {
    traces: Vec<RatFunc<Cyclotomic>>,
    provenance: Vec<Provenance>,
}

impl TraceAssignment {
    /// `1 / det(I - t·g)` for every element.
    pub fn char_poly(group: &FiniteMatrixGroup) -> Self {
        let traces: Vec<_> = group.elements().iter().map(trace_char_poly).collect();
        let provenance = vec![Provenance::CharPoly; traces.len()];
        TraceAssignment { traces, provenance }
    }

    pub fn from_traces(traces: Vec<RatFunc<Cyclotomic>>, provenance: Provenance) -> Self {
        let provenance = vec![provenance; traces.len()];
        TraceAssignment { traces, provenance }
    }

    pub fn set(&mut self, i: usize, trace: RatFunc<Cyclotomic>, provenance: Provenance) {
        self.traces[i] = trace;
        self.provenance[i] = provenance;
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn trace(&self, i: usize) -> &RatFunc<Cyclotomic> {
        &self.traces[i]
    }

    pub fn provenance(&self, i: usize) -> Provenance {
        self.provenance[i]
    }

    /// The identity's trace (index 0) must be the ambient Hilbert series.
    pub fn check_identity(&self, hilbert: &RationalFunction) -> bool {
        self.traces.first() == Some(&hilbert.to_field())
    }
}

/// `(1/|G|) Σ_g Tr(g, t)`, which must have rational coefficients.
pub fn molien(group: &FiniteMatrixGroup, traces: &TraceAssignment) -> Result<RationalFunction> {
    if traces.len() != group.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} traces for a group of order {}",
            traces.len(),
            group.order()
        )));
    }
    // Equal traces are summed once with multiplicity.
    let mut distinct: Vec<(&RatFunc<Cyclotomic>, i64)> = Vec::new();
    for t in &traces.traces {
        match distinct.iter_mut().find(|(u, _)| *u == t) {
            Some((_, k)) => *k += 1,
            None => distinct.push((t, 1)),
        }
    }
    let mut sum = RatFunc::<Cyclotomic>::zero();
    for (t, k) in distinct {
        sum = &sum + &t.scale(&Cyclotomic::from_i64(k));
    }
    let avg = sum.scale(&Cyclotomic::rational(BigRational::new(1.into(), (group.order() as i64).into())));
    avg.to_rational_function().ok_or_else(|| Error::NonRationalResult(avg.to_string()))
}

/// Homological determinant from the behaviour at `t = ∞`: a trace of AS
/// index `ell` on an algebra of global dimension `n` behaves like
/// `(-1)^n h^{-1} t^{-ell}`.
pub fn hdet<F: Field>(trace: &RatFunc<F>, n: usize, ell: usize) -> Result<F> {
    let dn = trace.num().degree().map_or(i64::MIN, |d| d as i64);
    let dd = trace.den().degree().unwrap_or(0) as i64;
    let found = dd - dn;
    if trace.is_zero() || found != ell as i64 {
        return Err(Error::IndexMismatch { expected: ell as i64, found });
    }
    let h = trace.den().leading() / trace.num().leading();
    Ok(if n % 2 == 1 { -h } else { h })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoleVerdict {
    Full,
    QuasiReflection,
    QuasiBireflection,
    Neither,
}

impl PoleVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            PoleVerdict::Full => "full",
            PoleVerdict::QuasiReflection => "quasi-reflection",
            PoleVerdict::QuasiBireflection => "quasi-bireflection",
            PoleVerdict::Neither => "neither",
        }
    }

    /// Quasi-reflections count as quasi-bireflections.
    pub fn is_quasi_bireflection(self) -> bool {
        matches!(self, PoleVerdict::QuasiReflection | PoleVerdict::QuasiBireflection)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleClass {
    pub pole_order: i64,
    pub verdict: PoleVerdict,
}

/// Classify by the order `k` of the pole at `t = 1` against the
/// GK dimension `n`: `n` full, `n - 1` quasi-reflection, `n - 2`
/// quasi-bireflection.
pub fn classify_pole<F: Field>(trace: &RatFunc<F>, n: usize) -> PoleClass {
    let k = trace.pole_order_at_one();
    let n = n as i64;
    let verdict = if k == n {
        PoleVerdict::Full
    } else if k == n - 1 {
        PoleVerdict::QuasiReflection
    } else if k == n - 2 {
        PoleVerdict::QuasiBireflection
    } else {
        PoleVerdict::Neither
    };
    PoleClass { pole_order: k, verdict }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QbGeneration {
    pub verdict: bool,
    /// Element indices of a generating set drawn from the quasi-bireflections.
    pub witnesses: Vec<usize>,
    pub pole_orders: Vec<i64>,
    pub verdicts: Vec<PoleVerdict>,
}

/// Whether the quasi-bireflections (with the identity) generate `group`.
pub fn generated_by_quasi_bireflections(group: &FiniteMatrixGroup, traces: &TraceAssignment, n: usize) -> QbGeneration {
    let classes: Vec<PoleClass> = (0..group.order()).map(|i| classify_pole(traces.trace(i), n)).collect();
    let mut witnesses = Vec::new();
    let mut span = vec![0];
    for (i, c) in classes.iter().enumerate().skip(1) {
        if c.verdict != PoleVerdict::Neither && span.binary_search(&i).is_err() {
            witnesses.push(i);
            span = group.generated_indices(&witnesses);
        }
    }
    QbGeneration {
        verdict: span.len() == group.order(),
        witnesses,
        pole_orders: classes.iter().map(|c| c.pole_order).collect(),
        verdicts: classes.iter().map(|c| c.verdict).collect(),
    }
}

/// `rank(g - I)` and whether it is at most 2.
pub fn classical_bireflection_rank<F: Field>(g: &crate::linalg::Matrix<F>) -> (usize, bool) {
    let n = g.rows();
    let diff = g - &crate::linalg::Matrix::identity(n);
    let rank = diff.rank();
    (rank, rank <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational_function, Poly};
    use crate::grp::closure;
    use crate::linalg::Matrix;
    use num_traits::One;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    fn z(k: i64) -> Cyclotomic {
        Cyclotomic::zeta(3, k)
    }

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_i64(n)
    }

    fn g2(alpha: Cyclotomic, omega: Cyclotomic) -> Matrix<Cyclotomic> {
        let a = alpha;
        Matrix::from_rows(vec![
            vec![c(0), a.clone() * omega.clone(), c(0)],
            vec![c(0), c(0), a.clone() * omega.clone() * omega],
            vec![a, c(0), c(0)],
        ])
    }

    #[test]
    fn char_poly_traces() {
        let id = Matrix::<Cyclotomic>::identity(3);
        assert_eq!(trace_char_poly(&id).to_rational_function().unwrap(), rf("1/(1-t)^3"));
        let t = trace_char_poly(&g2(z(1), z(2)));
        assert_eq!(t.to_rational_function().unwrap(), rf("1/(1-t^3)"));
        let scalar = Matrix::diagonal(&[z(1), z(1), z(1)]);
        let t = trace_char_poly(&scalar);
        assert!(t.to_rational_function().is_none());
        let lin = Poly::new(vec![c(1), -z(1)]);
        assert_eq!(t, RatFunc::reciprocal_of(lin.pow(3)).unwrap());
    }

    #[test]
    fn molien_order_three() {
        let g = closure(&[g2(c(1), c(1))], 3, 10).unwrap();
        let h = molien(&g, &TraceAssignment::char_poly(&g)).unwrap();
        assert_eq!(h, rf("(1-t^6)/((1-t)(1-t^2)(1-t^3)^2)"));
        assert_eq!(h, rf("(1-t+t^2)/((1-t)^2(1-t^3))"));
    }

    #[test]
    fn molien_trivial_group_is_identity_trace() {
        let g = closure(&[], 3, 1).unwrap();
        let traces = TraceAssignment::char_poly(&g);
        assert!(traces.check_identity(&rf("1/(1-t)^3")));
        assert_eq!(molien(&g, &traces).unwrap(), rf("1/(1-t)^3"));
    }

    #[test]
    fn non_rational_molien_is_an_error() {
        let g = closure(&[Matrix::diagonal(&[z(1), z(1), z(1)])], 3, 10).unwrap();
        let mut traces = TraceAssignment::char_poly(&g);
        traces.set(1, RatFunc::one(), Provenance::UserSupplied);
        assert!(matches!(molien(&g, &traces), Err(Error::NonRationalResult(_))));
        assert!(matches!(
            molien(&g, &TraceAssignment::from_traces(vec![], Provenance::UserSupplied)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn homological_determinants() {
        let t = rf("1/((1+t)(1-t^2))").to_field::<BigRational>();
        assert_eq!(hdet(&t, 3, 3).unwrap(), BigRational::one());
        for d in 1..6 {
            let id = RationalFunction::binomial_ratio(&[(1, -(d as i64))]).to_field::<BigRational>();
            assert_eq!(hdet(&id, d, d).unwrap(), BigRational::one());
        }
        let diag = Matrix::diagonal(&[z(1), c(-1), z(1)]);
        assert_eq!(hdet(&trace_char_poly(&diag), 3, 3).unwrap(), -z(2));
        assert_eq!(hdet(&t, 3, 2).unwrap_err(), Error::IndexMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn pole_classes() {
        let p = |s: &str, n| classify_pole(&rf(s).to_field::<BigRational>(), n);
        assert_eq!(p("1/((1+t)(1-t^2))", 3), PoleClass { pole_order: 1, verdict: PoleVerdict::QuasiBireflection });
        assert_eq!(p("1/(1+t^2)^2", 4), PoleClass { pole_order: 0, verdict: PoleVerdict::Neither });
        assert_eq!(p("1/(1-t)^3", 3).verdict, PoleVerdict::Full);
        assert_eq!(p("1/((1-t)^2(1+t))", 3).verdict, PoleVerdict::QuasiReflection);
        let scalar = trace_char_poly(&Matrix::diagonal(&[z(1), z(1), z(1)]));
        assert_eq!(classify_pole(&scalar, 3).pole_order, 0);
    }

    #[test]
    fn center_is_not_qb_generated() {
        let g = closure(&[Matrix::diagonal(&[z(1), z(1), z(1)])], 3, 10).unwrap();
        let r = generated_by_quasi_bireflections(&g, &TraceAssignment::char_poly(&g), 3);
        assert!(!r.verdict);
        assert!(r.witnesses.is_empty());
        let trivial = closure(&[], 3, 1).unwrap();
        assert!(generated_by_quasi_bireflections(&trivial, &TraceAssignment::char_poly(&trivial), 3).verdict);
    }

    #[test]
    fn bireflection_ranks() {
        let swap = Matrix::from_rows(vec![
            vec![c(0), c(1), c(0), c(0)],
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
            vec![c(0), c(0), c(1), c(0)],
        ]);
        assert_eq!(classical_bireflection_rank(&swap), (2, true));
        let g = Matrix::from_rows(vec![vec![c(0), c(-1), c(0)], vec![c(1), c(0), c(0)], vec![c(0), c(0), c(-1)]]);
        assert_eq!(classical_bireflection_rank(&g), (3, false));
        assert_eq!(classical_bireflection_rank(&Matrix::<Cyclotomic>::identity(3)), (0, true));
    }
}
