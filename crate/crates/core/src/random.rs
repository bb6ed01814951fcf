//! Seeded random states, unitaries and local operators.
//!
//! Every generator draws from a caller-supplied [`Rng`]; [`rng`] builds the
//! ChaCha20 stream used throughout the crate so seeded results reproduce on
//! every platform.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::canonical::CanonicalParams;
use crate::qcore::{CMat, DensityMatrix, LocalUnitaryTriple, Mat2, Mat8, PureState};
use crate::scalar::{Real, C};

/// ChaCha20 generator for `seed`.
pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn gauss<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Haar-random three-qubit pure state (normalized complex Gaussian amplitudes).
pub fn haar_state<T: Real, R: Rng + ?Sized>(rng: &mut R) -> PureState<T> {
    loop {
        let amps = std::array::from_fn(|_| gauss(rng));
        if let Ok(s) = PureState::normalized(amps, Default::default()) {
            return s;
        }
    }
}

/// Haar-random unit vector in `C^N`.
pub fn haar_vector<T: Real, R: Rng + ?Sized, const N: usize>(rng: &mut R) -> [C<T>; N] {
    loop {
        let v: [C<T>; N] = std::array::from_fn(|_| gauss(rng));
        let n = v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if n > T::epsilon() {
            return v.map(|z| z / n);
        }
    }
}

/// Haar-random 2×2 unitary.
pub fn haar_unitary2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    let [a, b] = haar_vector::<T, R, 2>(rng);
    let phase = Complex::from_polar(T::one(), T::lit(rng.gen_range(0.0..std::f64::consts::TAU)));
    CMat([[a, b], [-b.conj() * phase, a.conj() * phase]])
}

pub fn random_local_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R) -> LocalUnitaryTriple<T> {
    LocalUnitaryTriple::new(haar_unitary2(rng), haar_unitary2(rng), haar_unitary2(rng))
        .expect("Haar unitaries are unitary")
}

/// Invertible 2×2 operator `U·diag(1, s)·V` with `s` uniform in
/// `[min_ratio, 1]`, so its condition number is at most `1/min_ratio`.
pub fn conditioned_operator<T: Real, R: Rng + ?Sized>(rng: &mut R, min_ratio: f64) -> Mat2<T> {
    let s = T::lit(rng.gen_range(min_ratio..=1.0));
    let d = Mat2::diag([
        Complex::new(T::one(), T::zero()),
        Complex::new(s, T::zero()),
    ]);
    haar_unitary2(rng) * d * haar_unitary2(rng)
}

/// Canonical parameters uniform on the positive orthant of the unit sphere,
/// with `θ` uniform in `[0, π]`.
pub fn random_params<T: Real, R: Rng + ?Sized>(rng: &mut R) -> CanonicalParams<T> {
    loop {
        let raw: [f64; 5] = std::array::from_fn(|_| rng.sample::<f64, _>(StandardNormal).abs());
        let n = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        let theta = rng.gen_range(0.0..=std::f64::consts::PI);
        if n > 1e-6 {
            if let Ok(p) = CanonicalParams::new(raw.map(|x| T::lit(x / n)), T::lit(theta)) {
                return p;
            }
        }
    }
}

/// Random full-rank density matrix `G·G† / Tr(G·G†)` from a Ginibre `G`.
pub fn random_density<T: Real, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<T> {
    let g = Mat8::<T>::from_fn(|_, _| gauss(rng));
    let m = g * g.adjoint();
    let tr = m.trace().re;
    let half = T::lit(0.5) / tr;
    let m = Mat8::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * half);
    DensityMatrix::new(m).expect("Ginibre ensemble yields valid density matrices")
}
