//! Mixed-state tangle bounds and the two noisy families used for figure sweeps.
//!
//! The three-tangle of a mixed state is a convex-roof quantity; instead of
//! optimizing over decompositions we report the purity-based lower bound
//! `C²_{A(BC)} ≥ 2(Tr ρ² − Tr ρ_A²)` averaged over all orderings of the
//! three qubits, next to the pure-state observable measure `⟨O⟩²/4`.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::observables::{named, pauli, Axis, NamedOp};
use crate::qcore::{
    hermitian_eigen, kron, purity, reduce_to_pair, reduce_to_qubit, BasisTag, DensityMatrix, Mat4,
    PureState,
};
use crate::scalar::{Real, C};

/// Eigenvalues of a two-qubit marginal below this fraction of the largest
/// are treated as exactly zero.
const RANK_CUT: f64 = 1e-14;

/// Wootters concurrence of a two-qubit density matrix.
///
/// `C = max(0, s1 − s2 − s3 − s4)` where `s1 ≥ … ≥ s4` are the square roots
/// of the eigenvalues of `ρ·(σy⊗σy)·ρ*·(σy⊗σy)`. They are computed as the
/// singular values of `Wᵀ·(σy⊗σy)·W` with `ρ = W·W†`, which stays accurate
/// when `ρ` is rank-deficient.
pub fn concurrence2<T: Real>(rho2: &Mat4<T>) -> Result<T> {
    let tol = T::TOLERANCES;
    if !rho2.is_finite() || rho2.hermiticity_defect() > T::lit(tol.hermiticity) {
        return Err(Error::InvalidDensity(
            "two-qubit matrix is not Hermitian".into(),
        ));
    }
    if (rho2.trace().re - T::one()).abs() > T::lit(tol.normalization) {
        return Err(Error::InvalidDensity(
            "two-qubit trace differs from 1".into(),
        ));
    }
    let e = hermitian_eigen(rho2);
    if e.min_value() < -T::lit(tol.positivity) {
        return Err(Error::InvalidDensity(
            "two-qubit matrix has a negative eigenvalue".into(),
        ));
    }
    Ok(concurrence_from_eigen(&e.values, &e.vectors))
}

pub(crate) fn concurrence_unchecked<T: Real>(rho2: &Mat4<T>) -> T {
    let e = hermitian_eigen(rho2);
    concurrence_from_eigen(&e.values, &e.vectors)
}

fn concurrence_from_eigen<T: Real>(values: &[T; 4], vectors: &Mat4<T>) -> T {
    let cut = T::lit(RANK_CUT) * values[0].max(T::zero());
    let cols: Vec<usize> = (0..4).filter(|&k| values[k] > cut).collect();
    let r = cols.len();
    if r == 0 {
        return T::zero();
    }
    let yy: Mat4<T> = kron(&pauli(Axis::Y), &pauli(Axis::Y));
    // W has columns √pₖ·vₖ; S = Wᵀ·YY·W is complex symmetric, r×r.
    let w = |i: usize, k: usize| vectors.0[i][cols[k]] * values[cols[k]].sqrt();
    let mut s = vec![vec![C::<T>::zero(); r]; r];
    for a in 0..r {
        for b in 0..r {
            let mut acc = C::zero();
            for i in 0..4 {
                for j in 0..4 {
                    if !yy.0[i][j].is_zero() {
                        acc += w(i, a) * yy.0[i][j] * w(j, b);
                    }
                }
            }
            s[a][b] = acc;
        }
    }
    let sv = singular_values(&s);
    let c = sv[0] - sv[1..].iter().fold(T::zero(), |acc, x| acc + *x);
    c.max(T::zero()).min(T::one())
}

/// Descending singular values of a square matrix of size ≤ 4.
fn singular_values<T: Real>(s: &[Vec<C<T>>]) -> Vec<T> {
    match s.len() {
        1 => vec![s[0][0].norm()],
        2 => {
            // σ1² + σ2² = ‖S‖², σ1·σ2 = |det S|.
            let f = s
                .iter()
                .flatten()
                .fold(T::zero(), |acc, z| acc + z.norm_sqr());
            let det = (s[0][0] * s[1][1] - s[0][1] * s[1][0]).norm();
            let disc = (f * f - T::lit(4.0) * det * det).max(T::zero()).sqrt();
            let s1 = ((f + disc) * T::lit(0.5)).sqrt();
            let s2 = if s1 > T::zero() { det / s1 } else { T::zero() };
            vec![s1, s2]
        }
        n => {
            let mut m = Mat4::<T>::zeros();
            for i in 0..n {
                for j in 0..n {
                    m.0[i][j] = s[i][j];
                }
            }
            let g = m.adjoint() * m;
            hermitian_eigen(&g).values[..n]
                .iter()
                .map(|x| x.max(T::zero()).sqrt())
                .collect()
        }
    }
}

/// `2(Tr ρ² − Tr ρ_A²)` with `A` the given qubit; negative for very mixed states.
pub fn csq_lb<T: Real>(rho: &DensityMatrix<T>, cut_qubit: usize) -> Result<T> {
    if !(1..=3).contains(&cut_qubit) {
        return Err(Error::BadQubit(cut_qubit));
    }
    let ra = reduce_to_qubit(rho.matrix(), cut_qubit);
    Ok(T::lit(2.0) * (purity(rho) - ra.frobenius_sq()))
}

/// Pair marginal on `{a, b}` with qubits in increasing order.
fn pair<T: Real>(rho: &DensityMatrix<T>, a: usize, b: usize) -> Mat4<T> {
    reduce_to_pair(rho.matrix(), a.min(b), a.max(b))
}

/// Average over the six orderings `(A, B, C)` of
/// `C²_{A(BC)}|_LB − C²_AB − C²_AC`.
pub fn tangle_lower_bound<T: Real>(rho: &DensityMatrix<T>) -> T {
    let c2 = |a: usize, b: usize| concurrence_unchecked(&pair(rho, a, b)).powi(2);
    let pairs = [c2(1, 2), c2(1, 3), c2(2, 3)];
    let pc = |a: usize, b: usize| match (a.min(b), a.max(b)) {
        (1, 2) => pairs[0],
        (1, 3) => pairs[1],
        _ => pairs[2],
    };
    let lb: [T; 3] = std::array::from_fn(|k| csq_lb(rho, k + 1).expect("qubit index in range"));
    const PERMS: [[usize; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    let total = PERMS.iter().fold(T::zero(), |acc, &[a, b, c]| {
        acc + lb[a - 1] - pc(a, b) - pc(a, c)
    });
    total / T::lit(6.0)
}

fn check_unit<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v >= T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange {
            name,
            value: v.to_f64_lossy(),
        })
    }
}

fn from_amps<T: Real>(entries: &[(usize, T)]) -> PureState<T> {
    let mut a = [C::<T>::zero(); 8];
    for &(i, x) in entries {
        a[i] = Complex::new(x, T::zero());
    }
    PureState::normalized(a, BasisTag::Computational).expect("nonzero amplitudes")
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz_state<T: Real>() -> PureState<T> {
    from_amps(&[(0, T::one()), (7, T::one())])
}

/// `(|001⟩ + |010⟩ + |100⟩)/√3`.
pub fn w_state<T: Real>() -> PureState<T> {
    from_amps(&[(1, T::one()), (2, T::one()), (4, T::one())])
}

/// `p·|GHZ⟩⟨GHZ| + (1 − p)·|W⟩⟨W|`.
pub fn ghz_w_mixture<T: Real>(p: T) -> Result<DensityMatrix<T>> {
    check_unit("p", p)?;
    DensityMatrix::mixture(&[
        (p, ghz_state().density()),
        (T::one() - p, w_state().density()),
    ])
}

/// `(|000⟩ + √(1−p)|110⟩ + √p|111⟩)/√2` on qubits `A, B, E`.
pub fn phase_damped_state<T: Real>(p: T) -> Result<PureState<T>> {
    check_unit("p", p)?;
    let h = T::FRAC_1_SQRT_2();
    let mut a = [C::<T>::zero(); 8];
    a[0] = Complex::new(h, T::zero());
    a[6] = Complex::new(h * (T::one() - p).sqrt(), T::zero());
    a[7] = Complex::new(h * p.sqrt(), T::zero());
    PureState::new(a, BasisTag::Computational)
}

/// Action of the damping interaction on `B ⊗ E` with the environment
/// starting in `|0⟩`: `|0⟩|0⟩ ↦ |0⟩|0⟩`, `|1⟩|0⟩ ↦ √(1−p)|1⟩|0⟩ + √p|1⟩|1⟩`.
/// Returned as the images of `|00⟩` and `|10⟩` in the `B E` basis.
pub fn damping_images<T: Real>(p: T) -> Result<[[C<T>; 4]; 2]> {
    check_unit("p", p)?;
    let z = C::<T>::zero();
    let one = Complex::new(T::one(), T::zero());
    Ok([
        [one, z, z, z],
        [
            z,
            z,
            Complex::new((T::one() - p).sqrt(), T::zero()),
            Complex::new(p.sqrt(), T::zero()),
        ],
    ])
}

/// Builds the damped state by sending qubit `B` of `(|00⟩ + |11⟩)/√2 ⊗ |0⟩_E`
/// through [`damping_images`].
pub fn phase_damped_via_channel<T: Real>(p: T) -> Result<PureState<T>> {
    let images = damping_images(p)?;
    let h = T::FRAC_1_SQRT_2();
    let mut a = [C::<T>::zero(); 8];
    // Bell pair terms |a b⟩ with a = b.
    for bit in 0..2 {
        for (be, amp) in images[bit].iter().enumerate() {
            a[4 * bit + be] += amp.scale(h);
        }
    }
    PureState::new(a, BasisTag::Computational)
}

/// `m·|φ⟩⟨φ| + (1 − m)·I/8`.
pub fn add_white_noise<T: Real>(s: &PureState<T>, m: T) -> Result<DensityMatrix<T>> {
    check_unit("m", m)?;
    DensityMatrix::mixture(&[
        (m, s.density()),
        (T::one() - m, DensityMatrix::maximally_mixed()),
    ])
}

/// Which family a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Figure {
    /// GHZ/W mixture against the mixing weight.
    GhzWMixture,
    /// White-noise-mixed damped state against the damping parameter.
    NoisyDamping,
}

impl Figure {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            1 => Some(Figure::GhzWMixture),
            2 => Some(Figure::NoisyDamping),
            _ => None,
        }
    }
}

/// One point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub p: T,
    /// `⟨O⟩²/4` with `O = 2·XXX` in the computational basis.
    pub observable_measure: T,
    /// Permutation-averaged tangle lower bound, unclamped.
    pub lower_bound: T,
}

impl<T: Real> SweepRow<T> {
    pub fn lower_bound_clamped(&self) -> T {
        self.lower_bound.max(T::zero())
    }
}

/// `n` evenly spaced points from 0 to 1 inclusive (`n ≥ 2`).
pub fn uniform_grid<T: Real>(n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![T::zero()],
        _ => {
            let last = T::lit((n - 1) as f64);
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        T::one()
                    } else {
                        T::lit(i as f64) / last
                    }
                })
                .collect()
        }
    }
}

pub const DEFAULT_GRID_POINTS: usize = 101;

/// Evaluates one row per grid point, in grid order. `m` is required for
/// [`Figure::NoisyDamping`] and ignored otherwise.
pub fn sweep<T: Real>(figure: Figure, grid: &[T], m: Option<T>) -> Result<Vec<SweepRow<T>>> {
    if figure == Figure::NoisyDamping && m.is_none() {
        return Err(Error::InvalidParams(
            "the noisy damping sweep needs a noise weight m".into(),
        ));
    }
    let o = named::<T>(NamedOp::O);
    grid.par_iter()
        .map(|&p| {
            let rho = match figure {
                Figure::GhzWMixture => ghz_w_mixture(p)?,
                Figure::NoisyDamping => add_white_noise(&phase_damped_state(p)?, m.unwrap())?,
            };
            let ev = o.expectation(&rho)?;
            Ok(SweepRow {
                p,
                observable_measure: ev * ev / T::lit(4.0),
                lower_bound: tangle_lower_bound(&rho),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> Mat4<f64> {
        let h = 0.5;
        let mut m = Mat4::zeros();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m.0[i][j] = Complex::new(h, 0.0);
        }
        m
    }

    #[test]
    fn concurrence_examples() {
        assert!((concurrence2(&bell()).unwrap() - 1.0).abs() < 1e-14);
        let mixed = Mat4::<f64>::identity().scale_re(0.25);
        assert_eq!(concurrence2(&mixed).unwrap(), 0.0);
        let mut prod = Mat4::<f64>::zeros();
        prod.0[0][0] = Complex::new(1.0, 0.0);
        assert_eq!(concurrence2(&prod).unwrap(), 0.0);
    }

    #[test]
    fn concurrence_rejects_invalid_input() {
        assert!(concurrence2(&Mat4::<f64>::identity()).is_err());
    }

    #[test]
    fn csq_lb_examples() {
        let ghz = ghz_state::<f64>().density();
        assert!((csq_lb(&ghz, 1).unwrap() - 1.0).abs() < 1e-14);
        let mm = DensityMatrix::<f64>::maximally_mixed();
        for q in 1..=3 {
            assert!((csq_lb(&mm, q).unwrap() + 0.75).abs() < 1e-15);
        }
        let prod = PureState::<f64>::basis_state(0).density();
        assert_eq!(csq_lb(&prod, 2).unwrap(), 0.0);
        assert_eq!(csq_lb(&prod, 0), Err(Error::BadQubit(0)));
    }

    #[test]
    fn lower_bound_examples() {
        assert!((tangle_lower_bound(&ghz_state::<f64>().density()) - 1.0).abs() < 1e-12);
        assert!(tangle_lower_bound(&w_state::<f64>().density()).abs() < 1e-9);
        assert!(tangle_lower_bound(&PureState::<f64>::basis_state(0).density()).abs() < 1e-12);
    }

    #[test]
    fn mixture_endpoints_and_purity() {
        let g = ghz_w_mixture(1.0).unwrap();
        assert!(g.matrix().max_abs_diff(&ghz_state::<f64>().projector()) < 1e-15);
        let w = ghz_w_mixture(0.0).unwrap();
        assert!(w.matrix().max_abs_diff(&w_state::<f64>().projector()) < 1e-15);
        assert!((purity(&ghz_w_mixture(0.5f64).unwrap()) - 0.5).abs() < 1e-14);
        assert!(ghz_w_mixture(1.5).is_err());
    }

    #[test]
    fn damped_state_matches_channel() {
        for p in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            let a = phase_damped_state(p).unwrap();
            let b = phase_damped_via_channel(p).unwrap();
            let diff = a
                .amps()
                .iter()
                .zip(b.amps())
                .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()));
            assert!(diff < 1e-12, "p = {p}");
        }
        let one = phase_damped_state(1.0).unwrap();
        assert!(one.distance_up_to_phase(&ghz_state()) < 1e-15);
        assert!(phase_damped_state(-0.1).is_err());
    }

    #[test]
    fn white_noise_purity() {
        let m = 0.95;
        let rho = add_white_noise(&ghz_state::<f64>(), m).unwrap();
        let expected = m * m + 2.0 * m * (1.0 - m) / 8.0 + (1.0 - m) * (1.0 - m) / 8.0;
        assert!((purity(&rho) - expected).abs() < 1e-14);
        let zero = add_white_noise(&ghz_state::<f64>(), 0.0).unwrap();
        assert_eq!(zero, DensityMatrix::maximally_mixed());
    }

    #[test]
    fn sweep_closed_forms() {
        let grid = uniform_grid::<f64>(11);
        for row in sweep(Figure::GhzWMixture, &grid, None).unwrap() {
            assert!((row.observable_measure - row.p * row.p).abs() < 1e-12);
        }
        for row in sweep(Figure::NoisyDamping, &grid, Some(0.95)).unwrap() {
            assert!((row.observable_measure - 0.9025 * row.p).abs() < 1e-12);
        }
        assert!(sweep(Figure::NoisyDamping, &grid, None).is_err());
    }

    #[test]
    fn grid_has_exact_endpoints() {
        let g = uniform_grid::<f64>(101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 1.0);
        assert_eq!(uniform_grid::<f64>(2), vec![0.0, 1.0]);
    }
}
