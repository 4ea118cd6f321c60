mod common;

use common::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qswitch::gates;
use qswitch::linalg::hs_inner;
use qswitch::process::{devectorize, distill_orthogonal, overlap, superpose, vectorize, ProcessVector};
use qswitch::{random, Error, Operator};

fn complex() -> impl Strategy<Value = C64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| C64::new(re, im))
}

fn matrix(dim: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec(complex(), dim * dim).prop_map(move |v| Operator::new(dim, v).unwrap())
}

#[test]
fn round_trip_is_exact() {
    let mut rng = rng(1);
    for d in [2, 3] {
        for _ in 0..50 {
            let u = random::unitary(&mut rng, d);
            assert_eq!(devectorize(&vectorize(&u, "U")), u);
        }
    }
}

#[test]
fn isometry_against_trace() {
    let mut rng = rng(2);
    for d in [2, 3, 4] {
        for _ in 0..30 {
            let (x, y) = (random::matrix(&mut rng, d), random::matrix(&mut rng, d));
            let ov = overlap(&vectorize(&x, "x"), &vectorize(&y, "y")).unwrap();
            assert!((ov - hs_trace(&grid(&x), &grid(&y))).norm() < 1e-12);
            assert!((ov - hs_inner(&x, &y).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn orthogonality_test_agrees_with_trace_test() {
    let mut rng = rng(3);
    let paulis = [gates::id(), gates::x(), gates::y(), gates::z()];
    let mut pairs: Vec<(Operator, Operator)> = Vec::new();
    for p in &paulis {
        for q in &paulis {
            pairs.push((p.clone(), q.clone()));
        }
    }
    for _ in 0..100 {
        pairs.push((random::unitary(&mut rng, 2), random::unitary(&mut rng, 2)));
    }
    // a few exactly orthogonal random pairs: U and U·Z
    for _ in 0..10 {
        let u = random::unitary(&mut rng, 2);
        pairs.push((u.clone(), &u * &gates::z()));
    }
    let mut orthogonal = 0;
    for (a, b) in &pairs {
        let by_vectors = overlap(&vectorize(a, "A"), &vectorize(b, "B")).unwrap().norm() < 1e-10;
        let by_trace = hs_trace(&grid(a), &grid(b)).norm() < 1e-10;
        assert_eq!(by_vectors, by_trace);
        orthogonal += by_vectors as usize;
    }
    assert_eq!(orthogonal, 12 + 10);
}

#[test]
fn superposed_orthogonal_norm() {
    let x = vectorize(&gates::x(), "X").normalized().unwrap();
    let z = vectorize(&gates::z(), "Z").normalized().unwrap();
    let mut rng = rng(4);
    for _ in 0..20 {
        let (a, b) = (random::gaussian(&mut rng), random::gaussian(&mut rng));
        let s = superpose(a, &x, b, &z).unwrap();
        assert!((s.norm() - (a.norm_sqr() + b.norm_sqr()).sqrt()).abs() < 1e-12);
    }
}

fn reconstruct_residual(target: &ProcessVector, v: &ProcessVector, w: &ProcessVector) -> f64 {
    // least squares in span{v, w} through the 2x2 Gram system
    let g = [[overlap(v, v).unwrap(), overlap(v, w).unwrap()], [overlap(w, v).unwrap(), overlap(w, w).unwrap()]];
    let rhs = [overlap(v, target).unwrap(), overlap(w, target).unwrap()];
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let c0 = (rhs[0] * g[1][1] - g[0][1] * rhs[1]) / det;
    let c1 = (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det;
    target
        .coeffs()
        .iter()
        .zip(v.coeffs().iter().zip(w.coeffs()))
        .map(|(t, (a, b))| (t - c0 * a - c1 * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #[test]
    fn devectorize_is_linear(x in matrix(2), y in matrix(2), a in complex(), b in complex()) {
        let (vx, vy) = (vectorize(&x, "x"), vectorize(&y, "y"));
        let lhs = devectorize(&superpose(a, &vx, b, &vy).unwrap());
        let rhs = to_op(&add(&scale(&grid(&x), a), &scale(&grid(&y), b)));
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn distilled_pair_is_orthonormal_and_spans(x in matrix(3), y in matrix(3)) {
        let (v, w) = (vectorize(&x, "V"), vectorize(&y, "W"));
        prop_assume!(v.norm() > 1e-3 && w.norm() > 1e-3);
        match distill_orthogonal(&v, &w) {
            Ok(pair) => {
                prop_assert!(overlap(&pair.first, &pair.second).unwrap().norm() < 1e-12);
                prop_assert!((pair.first.norm() - 1.0).abs() < 1e-12);
                prop_assert!((pair.second.norm() - 1.0).abs() < 1e-12);
                prop_assert!(reconstruct_residual(&pair.first, &v, &w) < 1e-10);
                prop_assert!(reconstruct_residual(&pair.second, &v, &w) < 1e-10);
                prop_assert!(reconstruct_residual(&v, &pair.first, &pair.second) < 1e-10);
                prop_assert!(reconstruct_residual(&w, &pair.first, &pair.second) < 1e-10);
                let first_nonzero = pair.second.coeffs().iter().find(|z| z.norm() > 1e-12).unwrap();
                prop_assert!(first_nonzero.im == 0.0 && first_nonzero.re > 0.0);
            }
            Err(e) => prop_assert!(matches!(e, Error::OrderUndefined { .. }), "unexpected error {:?}", e),
        }
    }

    #[test]
    fn phase_multiples_are_parallel(x in matrix(2), theta in 0.0f64..std::f64::consts::TAU, r in 0.1f64..10.0) {
        let v = vectorize(&x, "V");
        prop_assume!(v.norm() > 1e-3);
        let w = v.scale(C64::from_polar(r, theta));
        prop_assert!(
            matches!(distill_orthogonal(&v, &w), Err(Error::OrderUndefined { .. })),
            "parallel pair was distilled"
        );
    }
}

#[test]
fn nearly_parallel_pair_still_orthogonal() {
    let v = vectorize(&gates::h(), "V");
    let eps = C64::new(1e-4, 0.0);
    let w = superpose(C64::new(1.0, 0.0), &v, eps, &vectorize(&gates::y(), "Y")).unwrap();
    let pair = distill_orthogonal(&v, &w).unwrap();
    assert!(overlap(&pair.first, &pair.second).unwrap().norm() < 1e-12);
}
