//! Reference formulas shared by the integration tests. Nothing here calls
//! into the canonical-form or classifier code.
#![allow(dead_code)]

use num_complex::Complex64;
use tritangle::{CanonicalParams, PureState};

/// Three-tangle from the Cayley hyperdeterminant of the amplitude cube.
pub fn hyperdet_tangle(s: &PureState) -> f64 {
    let a = |i: usize, j: usize, k: usize| s.amps()[4 * i + 2 * j + k];
    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
}

/// `[⟨O⟩, ⟨O1⟩, ⟨O2⟩, ⟨O3⟩, ⟨O4⟩, ⟨O5⟩]` on the canonical state for `p`.
pub fn closed_expectations(p: &CanonicalParams) -> [f64; 6] {
    let [l0, l1, l2, l3, l4] = p.lambda();
    let (c, s) = (p.theta().cos(), p.theta().sin());
    [
        4.0 * l0 * l4,
        4.0 * l0 * l3,
        4.0 * l0 * l2,
        -4.0 * (l2 * l3 + l1 * l4 * c),
        -4.0 * (l2 * l3 - l1 * l4 * c),
        4.0 * l1 * l4 * s,
    ]
}

/// Pauli-string expectation `2⟨P1⊗P2⊗P3⟩` by summing over basis pairs,
/// without building any 8×8 matrix.
pub fn pauli_string_expectation(s: &PureState, pattern: [char; 3]) -> f64 {
    let act = |p: char, bit: usize| -> (usize, Complex64) {
        match p {
            'X' => (bit ^ 1, Complex64::new(1.0, 0.0)),
            'Y' => (
                bit ^ 1,
                if bit == 0 {
                    Complex64::new(0.0, 1.0)
                } else {
                    Complex64::new(0.0, -1.0)
                },
            ),
            'Z' => (bit, Complex64::new(if bit == 0 { 1.0 } else { -1.0 }, 0.0)),
            _ => panic!("not a Pauli"),
        }
    };
    let a = s.amps();
    let mut acc = Complex64::new(0.0, 0.0);
    for idx in 0..8 {
        let mut out = 0;
        let mut coeff = Complex64::new(1.0, 0.0);
        for (q, &p) in pattern.iter().enumerate() {
            let shift = 2 - q;
            let (b, c) = act(p, (idx >> shift) & 1);
            out |= b << shift;
            coeff *= c;
        }
        acc += a[out].conj() * coeff * a[idx];
    }
    2.0 * acc.re
}

pub fn state(entries: &[(usize, Complex64)]) -> PureState {
    let mut a = [Complex64::new(0.0, 0.0); 8];
    for &(i, z) in entries {
        a[i] = z;
    }
    PureState::normalized(a, Default::default()).unwrap()
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `½(|000⟩ + |011⟩ + |100⟩ + |111⟩)`.
pub fn psi_c() -> PureState {
    state(&[(0, re(1.0)), (3, re(1.0)), (4, re(1.0)), (7, re(1.0))])
}

/// `(e^{iθ}|000⟩ + |011⟩ − |100⟩)/√3`.
pub fn phi_c(theta: f64) -> PureState {
    state(&[
        (0, Complex64::from_polar(1.0, theta)),
        (3, re(1.0)),
        (4, re(-1.0)),
    ])
}

/// Proptest settings with a fixed seed, so every run draws the same cases.
/// `PROPTEST_RNG_SEED` selects a different fixed seed.
pub fn fixed(cases: u32) -> proptest::test_runner::Config {
    let seed = std::env::var("PROPTEST_RNG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x7472_6974);
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Default::default()
    }
}
