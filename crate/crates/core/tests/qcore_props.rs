mod common;

use proptest::prelude::*;
use tritangle::observables::{named, pauli, NamedOp};
use tritangle::qcore::{apply_local, kron, partial_trace, tensor3, CMat, Reduced};
use tritangle::random::{haar_state, haar_unitary2, random_density, random_local_unitary, rng};
use tritangle::{Axis, LocalUnitaryTriple, Mat2, Mat8, PureState};

use common::{psi_c, re, state};

/// `a ⊗ b ⊗ c` entry by entry from the bit decomposition of the indices.
fn kron3_by_bits(a: &Mat2, b: &Mat2, c: &Mat2) -> Mat8 {
    CMat::from_fn(|i, j| {
        let bit = |x: usize, q: usize| (x >> (2 - q)) & 1;
        a.0[bit(i, 0)][bit(j, 0)] * b.0[bit(i, 1)][bit(j, 1)] * c.0[bit(i, 2)][bit(j, 2)]
    })
}

proptest! {
    #![proptest_config(common::fixed(1000))]

    #[test]
    fn local_unitaries_preserve_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s: PureState = haar_state(&mut r);
        let u: LocalUnitaryTriple = random_local_unitary(&mut r);
        prop_assert!((apply_local(&u, &s).norm_sq() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn apply_local_matches_full_operator(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s: PureState = haar_state(&mut r);
        let u: LocalUnitaryTriple = random_local_unitary(&mut r);
        let direct = u.full().mul_vec(s.amps());
        let fast = apply_local(&u, &s);
        for (x, y) in direct.iter().zip(fast.amps()) {
            prop_assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn single_qubit_marginals_have_unit_trace(seed in any::<u64>()) {
        let rho = random_density::<f64, _>(&mut rng(seed));
        for q in 1..=3 {
            let Reduced::One(m) = partial_trace(&rho, &[q]).unwrap() else { unreachable!() };
            prop_assert!((m.trace().re - 1.0).abs() < 1e-12);
            prop_assert!(m.is_hermitian(1e-12));
        }
        let Reduced::Two(m) = partial_trace(&rho, &[1, 3]).unwrap() else { unreachable!() };
        prop_assert!((m.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_and_density_expectations_agree(seed in any::<u64>(), k in 0usize..6) {
        let s: PureState = haar_state(&mut rng(seed));
        let o = named::<f64>(NamedOp::ALL[k]);
        let a = o.expectation(&s).unwrap();
        let b = o.expectation(&s.density()).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn tensor3_matches_bitwise_kron(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c): (Mat2, Mat2, Mat2) = (haar_unitary2(&mut r), haar_unitary2(&mut r), haar_unitary2(&mut r));
        let t = tensor3(&a, &b, &c);
        prop_assert!(t.max_abs_diff(&kron3_by_bits(&a, &b, &c)) < 1e-14);
        let nested: Mat8 = kron(&kron::<f64, 2, 2, 4>(&a, &b), &c);
        prop_assert!(t.max_abs_diff(&nested) < 1e-14);
    }
}

#[test]
fn tensor3_examples() {
    let i = Mat2::identity();
    assert_eq!(tensor3(&i, &i, &i), Mat8::identity());
    let x = pauli::<f64>(Axis::X);
    let flipped = tensor3(&x, &x, &x).mul_vec(PureState::basis_state(0).amps());
    assert_eq!(flipped[7], re(1.0));
    let z = tensor3(&pauli::<f64>(Axis::Z), &i, &i);
    let diag: Vec<f64> = (0..8).map(|k| z.0[k][k].re).collect();
    assert_eq!(diag, vec![1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
}

#[test]
fn apply_local_worked_examples() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u1 = CMat([[re(-h), re(h)], [re(h), re(h)]]);
    let u = LocalUnitaryTriple::new(u1, Mat2::identity(), Mat2::identity()).unwrap();
    let out = apply_local(&u, &psi_c());
    let want = state(&[(4, re(1.0)), (7, re(1.0))]);
    assert!(out.distance_up_to_phase(&want) < 1e-15);

    let x = LocalUnitaryTriple::new(pauli(Axis::X), Mat2::identity(), Mat2::identity()).unwrap();
    let w = state(&[(1, re(1.0)), (2, re(1.0)), (4, re(1.0))]);
    let want = state(&[(5, re(1.0)), (6, re(1.0)), (0, re(1.0))]);
    assert!(apply_local(&x, &w).distance_up_to_phase(&want) < 1e-15);

    let s: PureState = haar_state(&mut rng(1));
    assert_eq!(apply_local(&LocalUnitaryTriple::identity(), &s), s);
}

#[test]
fn non_unitary_factor_is_rejected() {
    let bad = CMat([[re(1.0), re(1.0)], [re(0.0), re(1.0)]]);
    let err = LocalUnitaryTriple::new(Mat2::identity(), bad, Mat2::identity()).unwrap_err();
    assert!(matches!(err, tritangle::Error::NonUnitary { qubit: 2, .. }));
}

#[test]
fn expectation_examples() {
    let o = named::<f64>(NamedOp::O);
    assert_eq!(o.expectation(&PureState::basis_state(0)).unwrap(), 0.0);
    let ghz = state(&[(0, re(1.0)), (7, re(1.0))]);
    assert!((o.expectation(&ghz).unwrap() - 2.0).abs() < 1e-15);
    let bisep = state(&[(4, re(1.0)), (7, re(1.0))]);
    assert!((named::<f64>(NamedOp::O3).expectation(&bisep).unwrap() + 2.0).abs() < 1e-15);
}
