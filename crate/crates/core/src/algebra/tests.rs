use num_rational::BigRational;

use super::*;
use crate::cyclotomic::Cyclotomic;
use crate::exact::{reconstruct, RationalFunction, SeriesTruncation};
use crate::{int, IntPolynomial};

type Q = BigRational;

fn quantum(n: usize, c: i64) -> AlgebraPresentation<Q> {
    AlgebraPresentation::uniform_quantum(n, int(c))
}

fn plane_mod_x2() -> AlgebraPresentation<Q> {
    quantum(2, -1).with_relations(vec![NormalElement::new(vec![(int(1), Monomial(vec![2, 0]))])])
}

fn square_zero() -> AlgebraPresentation<Q> {
    AlgebraPresentation::monomial_quotient(vec![1, 1], vec![vec![0, 0], vec![0, 1], vec![1, 1]])
}

fn build(p: &AlgebraPresentation<Q>, n: usize) -> GradedAlgebraTruncation<Q> {
    GradedAlgebraTruncation::build(p, n).unwrap()
}

#[test]
fn quantum_affine_dims() {
    assert_eq!(build(&quantum(3, -1), 3).dims(), vec![1, 3, 6, 10]);
    let t = GradedAlgebraTruncation::build(&AlgebraPresentation::quantum_affine(vec![1, 2], vec![vec![int(1), int(3)], vec![Q::new(1.into(), 3.into()), int(1)]]), 6).unwrap();
    assert_eq!(t.dims(), vec![1, 1, 2, 2, 3, 3, 4]);
}

#[test]
fn monomial_quotient_dims() {
    assert_eq!(build(&square_zero(), 3).dims(), vec![1, 2, 1, 0]);
    assert_eq!(build(&AlgebraPresentation::free(vec![1, 1]), 4).dims(), vec![1, 2, 4, 8, 16]);
    let yx = AlgebraPresentation::<Q>::monomial_quotient(vec![1, 1], vec![vec![1, 0]]);
    assert_eq!(build(&yx, 5).dims(), vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn normal_quotient_dims() {
    assert_eq!(build(&plane_mod_x2(), 4).dims(), vec![1, 2, 2, 2, 2]);
}

#[test]
fn basis_labels_and_products() {
    let t = build(&quantum(2, -1), 2);
    assert_eq!(t.basis_labels(2), vec!["y^2", "x*y", "x^2"]);
    // y x = -x y
    let y = vec![int(0), int(0)];
    let mut yv = y.clone();
    yv[t.basis_labels(1).iter().position(|l| l == "y").unwrap()] = int(1);
    let mut xv = y;
    xv[t.basis_labels(1).iter().position(|l| l == "x").unwrap()] = int(1);
    let yx = t.mul(1, &yv, 1, &xv);
    let xy = t.mul(1, &xv, 1, &yv);
    assert_eq!(yx, xy.iter().map(|c| -c.clone()).collect::<Vec<_>>());
}

#[test]
fn associativity_spot_checks() {
    for p in [quantum(3, -1), plane_mod_x2(), square_zero()] {
        let t = build(&p, 4);
        for (i, j, k) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2)] {
            assert!(t.check_associativity(i, j, k));
        }
    }
}

#[test]
fn central_quotient_matches_hilbert_series() {
    let p = quantum(2, 1).with_relations(vec![NormalElement::new(vec![(int(1), Monomial(vec![2, 0])), (int(1), Monomial(vec![0, 2]))])]);
    let t = build(&p, 8);
    let h = p.hilbert_series().unwrap().expand(8);
    assert_eq!(t.dims().iter().map(|&d| int(d as i64)).collect::<Vec<_>>(), h.coeffs());
}

#[test]
fn non_normal_and_non_regular_rejected() {
    let p2 = AlgebraPresentation::quantum_affine(vec![1, 1], vec![vec![int(1), int(2)], vec![Q::new(1.into(), 2.into()), int(1)]]);
    let bad = p2.with_relations(vec![NormalElement::new(vec![(int(1), Monomial(vec![1, 0])), (int(1), Monomial(vec![0, 1]))])]);
    let r = GradedAlgebraTruncation::build(&bad, 3);
    assert!(matches!(r, Err(Error::NotNormal { index: 0, .. })), "{r:?}");
    let twice = quantum(2, -1).with_relations(vec![
        NormalElement::new(vec![(int(1), Monomial(vec![2, 0]))]),
        NormalElement::new(vec![(int(1), Monomial(vec![3, 0]))]),
    ]);
    let r = GradedAlgebraTruncation::build(&twice, 4);
    assert!(matches!(r, Err(Error::NotRegular { index: 1, degree: 3 })), "{r:?}");
}

#[test]
fn identity_trace_is_hilbert_series() {
    let t = build(&plane_mod_x2(), 6);
    let s = brute_force_trace(&Matrix::identity(2), &t, 6).unwrap();
    assert_eq!(s, SeriesTruncation::from_i64(&[1, 2, 2, 2, 2, 2, 2]));
}

#[test]
fn diagonal_trace_matches_eigenvalues() {
    let t = build(&quantum(2, -1), 6);
    let g = Matrix::diagonal(&[int(2), int(-1)]);
    let s = brute_force_trace(&g, &t, 6).unwrap();
    let expected = RationalFunction::normalize(&IntPolynomial::from_i64(&[1]), &IntPolynomial::from_i64(&[1, -1, -2])).unwrap();
    assert_eq!(s, expected.expand(6));
}

#[test]
fn rotation_trace() {
    let t = build(&quantum(3, -1), 12);
    let g = Matrix::from_rows(vec![vec![int(0), int(-1), int(0)], vec![int(1), int(0), int(0)], vec![int(0), int(0), int(-1)]]);
    let s = brute_force_trace(&g, &t, 12).unwrap();
    let f = reconstruct(&s, 0, 3).unwrap();
    assert_eq!(f, RationalFunction::normalize(&IntPolynomial::from_i64(&[1]), &IntPolynomial::from_i64(&[1, 1, -1, -1])).unwrap());
}

#[test]
fn double_swap_trace_over_cyclotomics() {
    let p = AlgebraPresentation::<Cyclotomic>::uniform_quantum(4, Cyclotomic::from_i64(-1));
    let t = GradedAlgebraTruncation::build(&p, 12).unwrap();
    let z = |i: i64| Cyclotomic::from_i64(i);
    let g = Matrix::from_rows(vec![
        vec![z(0), z(1), z(0), z(0)],
        vec![z(1), z(0), z(0), z(0)],
        vec![z(0), z(0), z(0), z(1)],
        vec![z(0), z(0), z(1), z(0)],
    ]);
    let s = brute_force_trace(&g, &t, 12).unwrap();
    let s = s.map(|c| c.to_rational().unwrap());
    let f = reconstruct(&s, 0, 4).unwrap();
    assert_eq!(f, RationalFunction::normalize(&IntPolynomial::from_i64(&[1]), &IntPolynomial::from_i64(&[1, 0, 2, 0, 1])).unwrap());
}

#[test]
fn non_automorphism_rejected() {
    let t = build(&quantum(2, -1), 3);
    let g = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
    assert!(matches!(brute_force_trace(&g, &t, 3), Err(Error::NotAnAutomorphism(_))));
    let t = build(&square_zero(), 3);
    let swap = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    assert!(matches!(brute_force_trace(&swap, &t, 3), Err(Error::NotAnAutomorphism(_))));
}

#[test]
fn invariants_of_sign_change() {
    let t = build(&quantum(2, -1), 6);
    let g = Matrix::diagonal(&[int(-1), int(-1)]);
    assert_eq!(invariant_dims(&[g], &t, 6).unwrap(), vec![1, 0, 3, 0, 5, 0, 7]);
}

#[test]
fn betti_examples() {
    let t = build(&square_zero(), 8);
    let b = betti_numbers(&t, 8).unwrap();
    assert_eq!(b.row_sums(), vec![1, 2, 3, 4, 5, 6, 7, 8, 9]);
    for i in 0..=8 {
        assert_eq!(b.get(i, i), i as u64 + 1);
    }
    let comm = betti_numbers(&build(&quantum(2, 1), 8), 8).unwrap();
    assert_eq!(comm.row_sums()[..4], [1, 2, 1, 0]);
    assert_eq!(comm.get(2, 2), 1);
    let skew = betti_numbers(&build(&quantum(2, -1), 8), 8).unwrap();
    assert_eq!(skew.row_sums()[..4], [1, 2, 1, 0]);
    let free = betti_numbers(&build(&AlgebraPresentation::free(vec![1, 1]), 6), 6).unwrap();
    assert_eq!(free.row_sums(), vec![1, 2, 0, 0, 0, 0, 0]);
}

#[test]
fn euler_residuals_vanish() {
    let cases: Vec<(AlgebraPresentation<Q>, RationalFunction)> = vec![
        (square_zero(), RationalFunction::polynomial(IntPolynomial::from_i64(&[1, 2, 1]))),
        (AlgebraPresentation::free(vec![1, 1]), RationalFunction::normalize(&IntPolynomial::from_i64(&[1]), &IntPolynomial::from_i64(&[1, -2])).unwrap()),
        (plane_mod_x2(), plane_mod_x2().hilbert_series().unwrap()),
    ];
    for (p, h) in cases {
        let b = betti_numbers(&build(&p, 8), 8).unwrap();
        assert!(euler_check(&b, &h, 8).is_zero());
    }
}

#[test]
fn tor_inequalities() {
    let a = betti_numbers(&build(&quantum(2, -1), 10), 10).unwrap();
    let b = betti_numbers(&build(&plane_mod_x2(), 10), 10).unwrap();
    assert_eq!(b.row_sums()[..5], [1, 2, 2, 2, 2]);
    let checks = tor_inequality_check(&a, &b, 2).unwrap();
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(TorInequality::holds));
    let c = quantum(2, 1).with_relations(vec![NormalElement::new(vec![(int(1), Monomial(vec![2, 0])), (int(1), Monomial(vec![0, 2]))])]);
    let a = betti_numbers(&build(&quantum(2, 1), 10), 10).unwrap();
    let bc = betti_numbers(&build(&c, 10), 10).unwrap();
    assert_eq!(bc.row_sums()[..5], [1, 2, 2, 2, 2]);
    assert!(tor_inequality_check(&a, &bc, 2).unwrap().iter().all(TorInequality::holds));
    assert!(tor_inequality_check(&a, &a, 0).is_err());
}

#[test]
fn growth_hints() {
    let b = betti_numbers(&build(&plane_mod_x2(), 10), 10).unwrap();
    match growth_estimate(&b).unwrap() {
        GrowthHint::Slope { value, .. } => assert!((value - 1.0).abs() < 0.2, "{value}"),
        other => panic!("{other:?}"),
    }
    let e = betti_numbers(&build(&square_zero(), 10), 10).unwrap();
    match growth_estimate(&e).unwrap() {
        GrowthHint::Slope { value, .. } => assert!((value - 2.0).abs() < 0.2, "{value}"),
        other => panic!("{other:?}"),
    }
    let k = betti_numbers(&build(&quantum(2, 1), 8), 8).unwrap();
    assert_eq!(growth_estimate(&k).unwrap(), GrowthHint::Zero { last_nonzero: 2 });
    assert!(growth_estimate(&betti_numbers(&build(&quantum(2, 1), 4), 4).unwrap()).is_err());
}
