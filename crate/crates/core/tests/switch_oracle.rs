mod common;

use common::*;
use num_complex::Complex64 as C64;
use qswitch::switch::{conditional_operator, measure_control, run_switch, switch_unitary};
use qswitch::{gates, random, ControlBasis, Operator, StateVector, SwitchCircuit};

fn random_basis(rng: &mut rand_chacha::ChaCha8Rng) -> ControlBasis {
    ControlBasis::completing(&random::state(rng, 2)).unwrap()
}

#[test]
fn switch_matches_brute_force_construction() {
    let mut rng = rng(21);
    for d in [1, 2, 3] {
        for _ in 0..30 {
            let (a, b) = (random::unitary(&mut rng, d), random::unitary(&mut rng, d));
            let c = SwitchCircuit::new(a.clone(), b.clone()).unwrap();
            let s = switch_unitary(&c);
            let brute = brute_switch(&grid(&a), &grid(&b));
            assert!(max_diff(&grid(&s), &brute) < 1e-12);
            assert!(s.unitarity_defect() < 1e-10);

            let (control, target) = (random::state(&mut rng, 2), random::state(&mut rng, d));
            let out = run_switch(&c, &control, &target).unwrap();
            let expected = apply(&brute, &kron_vec(control.amplitudes(), target.amplitudes()));
            assert!(vec_max_diff(out.amplitudes(), &expected) < 1e-12);
            assert!(out.is_normalized(1e-10));
        }
    }
}

#[test]
fn definite_controls_are_exact() {
    let mut rng = rng(22);
    for _ in 0..20 {
        let (a, b) = (random::unitary(&mut rng, 2), random::unitary(&mut rng, 2));
        let c = SwitchCircuit::new(a.clone(), b.clone()).unwrap();
        let t = random::state(&mut rng, 2);
        let on_a = run_switch(&c, &StateVector::basis(2, 0), &t).unwrap();
        let on_b = run_switch(&c, &StateVector::basis(2, 1), &t).unwrap();
        let ba_t = (&b * &a).apply(&t).unwrap();
        let ab_t = (&a * &b).apply(&t).unwrap();
        assert_eq!(on_a, StateVector::basis(2, 0).tensor(&ba_t));
        assert_eq!(on_b, StateVector::basis(2, 1).tensor(&ab_t));
    }
}

#[test]
fn measurement_statistics_match_full_expansion() {
    let mut rng = rng(23);
    for d in [2, 3] {
        for _ in 0..30 {
            let c = SwitchCircuit::new(random::unitary(&mut rng, d), random::unitary(&mut rng, d)).unwrap();
            let control = random::state(&mut rng, 2);
            let target = random::state(&mut rng, d);
            let joint = run_switch(&c, &control, &target).unwrap();
            let basis = random_basis(&mut rng);
            let outcomes = measure_control(&joint, &basis).unwrap();
            let mut total = 0.0;
            for (o, chi) in outcomes.iter().zip(basis.states()) {
                let brute = brute_probability(joint.amplitudes(), chi.amplitudes(), d);
                assert!((o.probability - brute).abs() < 1e-12);
                total += o.probability;

                // composes with the conditional operator
                let k = conditional_operator(&c, &control, chi).unwrap();
                let kt = k.apply(&target).unwrap();
                assert!((kt.norm().powi(2) - o.probability).abs() < 1e-12);
                if let Some(cond) = &o.conditional_target {
                    assert!(cond.approx_eq_up_to_phase(&kt.normalized().unwrap(), 1e-10).unwrap());
                }
            }
            assert!((total - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn conditional_operators_are_complete() {
    let mut rng = rng(24);
    for d in [2, 3] {
        for _ in 0..30 {
            let c = SwitchCircuit::new(random::unitary(&mut rng, d), random::unitary(&mut rng, d)).unwrap();
            let control = random::state(&mut rng, 2);
            let basis = random_basis(&mut rng);
            let [k0, k1] = basis.states().map(|chi| grid(&conditional_operator(&c, &control, chi).unwrap()));
            let sum = add(&mul(&adjoint(&k0), &k0), &mul(&adjoint(&k1), &k1));
            assert!(max_diff(&sum, &grid(&Operator::identity(d))) < 1e-10);
        }
    }
}

#[test]
fn plus_control_conditionals_are_anticommutator_and_commutator() {
    let mut rng = rng(25);
    let half = C64::new(0.5, 0.0);
    for _ in 0..20 {
        let (a, b) = (random::unitary(&mut rng, 2), random::unitary(&mut rng, 2));
        let c = SwitchCircuit::new(a.clone(), b.clone()).unwrap();
        let (ga, gb) = (grid(&a), grid(&b));
        let (ba, ab) = (mul(&gb, &ga), mul(&ga, &gb));
        let plus = gates::state_by_name("+", 2).unwrap();
        let minus = gates::state_by_name("-", 2).unwrap();
        let kp = conditional_operator(&c, &plus, &plus).unwrap();
        let km = conditional_operator(&c, &plus, &minus).unwrap();
        assert!(max_diff(&grid(&kp), &scale(&add(&ba, &ab), half)) < 1e-12);
        assert!(max_diff(&grid(&km), &scale(&add(&ba, &scale(&ab, C64::new(-1.0, 0.0))), half)) < 1e-12);
    }
}

#[test]
fn commuting_gates_never_give_minus() {
    let mut rng = rng(26);
    for _ in 0..20 {
        // diagonal unitaries commute
        let phase = |rng: &mut rand_chacha::ChaCha8Rng| C64::from_polar(1.0, random::gaussian(rng).re);
        let a =
            Operator::new(2, vec![phase(&mut rng), C64::new(0.0, 0.0), C64::new(0.0, 0.0), phase(&mut rng)]).unwrap();
        let b =
            Operator::new(2, vec![phase(&mut rng), C64::new(0.0, 0.0), C64::new(0.0, 0.0), phase(&mut rng)]).unwrap();
        let c = SwitchCircuit::new(a, b).unwrap();
        let plus = gates::state_by_name("+", 2).unwrap();
        let joint = run_switch(&c, &plus, &random::state(&mut rng, 2)).unwrap();
        let [p, m] = measure_control(&joint, &ControlBasis::plus_minus()).unwrap();
        assert!(m.probability < 1e-20);
        assert!(!m.is_defined());
        assert!((p.probability - 1.0).abs() < 1e-12);
    }
}
