//! Complex linear algebra for two-, four- and eight-dimensional objects.
//!
//! Everything here is a pure function over immutable values.

pub mod eigen;
pub mod matrix;
pub mod state;

use num_complex::Complex;
use num_traits::Zero;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{kron, CMat, Mat2, Mat4, Mat8};
pub use state::{
    apply_local, index_of, tensor3, BasisTag, DensityMatrix, LocalUnitaryTriple, PureState,
};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Reduced density matrix of one, two or all three qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reduced<T> {
    One(Mat2<T>),
    Two(Mat4<T>),
    Three(Mat8<T>),
}

impl<T: Real> Reduced<T> {
    pub fn trace(&self) -> C<T> {
        match self {
            Reduced::One(m) => m.trace(),
            Reduced::Two(m) => m.trace(),
            Reduced::Three(m) => m.trace(),
        }
    }

    pub fn purity(&self) -> T {
        match self {
            Reduced::One(m) => m.frobenius_sq(),
            Reduced::Two(m) => m.frobenius_sq(),
            Reduced::Three(m) => m.frobenius_sq(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Reduced::One(_) => 2,
            Reduced::Two(_) => 4,
            Reduced::Three(_) => 8,
        }
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        match self {
            Reduced::One(m) => m.is_hermitian(tol),
            Reduced::Two(m) => m.is_hermitian(tol),
            Reduced::Three(m) => m.is_hermitian(tol),
        }
    }
}

/// Traces out every qubit not listed in `keep` (qubits are numbered 1..=3).
/// Kept qubits appear in increasing order in the result.
pub fn partial_trace<T: Real>(rho: &DensityMatrix<T>, keep: &[usize]) -> Result<Reduced<T>> {
    let mut mask = 0usize;
    for &q in keep {
        if !(1..=3).contains(&q) {
            return Err(Error::BadQubit(q));
        }
        mask |= 1 << (3 - q);
    }
    Ok(match mask.count_ones() {
        0 => return Err(Error::EmptyKeepSet),
        1 => Reduced::One(trace_to::<T, 2>(rho.matrix(), mask)),
        2 => Reduced::Two(trace_to::<T, 4>(rho.matrix(), mask)),
        _ => Reduced::Three(*rho.matrix()),
    })
}

/// Single-qubit marginal `ρ_q`.
pub fn reduce_to_qubit<T: Real>(rho: &Mat8<T>, q: usize) -> Mat2<T> {
    trace_to::<T, 2>(rho, 1 << (3 - q))
}

/// Two-qubit marginal on `{q1, q2}` (ordered by qubit number).
pub fn reduce_to_pair<T: Real>(rho: &Mat8<T>, q1: usize, q2: usize) -> Mat4<T> {
    trace_to::<T, 4>(rho, (1 << (3 - q1)) | (1 << (3 - q2)))
}

/// `mask` selects kept bit positions of the 3-bit index (bit 2 = qubit 1).
fn trace_to<T: Real, const K: usize>(rho: &Mat8<T>, mask: usize) -> CMat<T, K> {
    let kept: Vec<usize> = (0..3).rev().filter(|b| mask & (1 << b) != 0).collect();
    let traced: Vec<usize> = (0..3).rev().filter(|b| mask & (1 << b) == 0).collect();
    let embed = |sub: usize, bits: &[usize]| -> usize {
        bits.iter()
            .enumerate()
            .map(|(k, &b)| ((sub >> (bits.len() - 1 - k)) & 1) << b)
            .sum()
    };
    CMat::from_fn(|r, c| {
        let (ro, co) = (embed(r, &kept), embed(c, &kept));
        (0..(1usize << traced.len())).fold(Complex::zero(), |acc, t| {
            let e = embed(t, &traced);
            acc + rho.0[ro | e][co | e]
        })
    })
}

/// Anything an 8×8 operator can be averaged over.
pub trait QuantumState<T: Real> {
    /// `⟨ψ|M|ψ⟩` or `Tr(ρM)` with no checks on `M`.
    fn raw_expectation(&self, m: &Mat8<T>) -> C<T>;
}

impl<T: Real> QuantumState<T> for PureState<T> {
    fn raw_expectation(&self, m: &Mat8<T>) -> C<T> {
        self.sandwich(m)
    }
}

impl<T: Real> QuantumState<T> for DensityMatrix<T> {
    fn raw_expectation(&self, m: &Mat8<T>) -> C<T> {
        let r = self.matrix();
        let mut acc = Complex::zero();
        for i in 0..8 {
            for j in 0..8 {
                acc += r.0[i][j] * m.0[j][i];
            }
        }
        acc
    }
}

/// Real expectation value of a Hermitian operator.
pub fn expectation<T: Real, S: QuantumState<T> + ?Sized>(op: &Mat8<T>, state: &S) -> Result<T> {
    let tol = T::TOLERANCES;
    let defect = op.hermiticity_defect();
    if defect > T::lit(tol.hermiticity) {
        return Err(Error::NotHermitian {
            deviation: defect.to_f64_lossy(),
        });
    }
    let z = state.raw_expectation(op);
    if z.im.abs() >= T::lit(tol.imaginary_residue) {
        return Err(Error::NotHermitian {
            deviation: z.im.abs().to_f64_lossy(),
        });
    }
    Ok(z.re)
}

/// `Tr ρ²`.
pub fn purity<T: Real>(rho: &DensityMatrix<T>) -> T {
    // Σ |ρᵢⱼ|² equals Tr ρ² for Hermitian ρ.
    rho.matrix().frobenius_sq()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn ghz() -> PureState<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut a = [Complex::zero(); 8];
        a[0] = c(h, 0.0);
        a[7] = c(h, 0.0);
        PureState::new(a, BasisTag::Computational).unwrap()
    }

    #[test]
    fn partial_trace_of_product_basis_state() {
        let rho = PureState::<f64>::basis_state(0).density();
        let Reduced::One(r) = partial_trace(&rho, &[1]).unwrap() else {
            panic!("expected one-qubit marginal")
        };
        assert_eq!(r[(0, 0)].re, 1.0);
        assert_eq!(r.frobenius_sq(), 1.0);
    }

    #[test]
    fn partial_trace_of_ghz_is_maximally_mixed_qubit() {
        let r = partial_trace(&ghz().density(), &[1]).unwrap();
        let Reduced::One(m) = r else { panic!() };
        assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn partial_trace_of_identity_pair() {
        let r = partial_trace(&DensityMatrix::<f64>::maximally_mixed(), &[2, 3]).unwrap();
        let Reduced::Two(m) = r else { panic!() };
        assert!(m.max_abs_diff(&Mat4::identity().scale_re(0.25)) < 1e-15);
    }

    #[test]
    fn empty_keep_set_is_rejected() {
        let rho = DensityMatrix::<f64>::maximally_mixed();
        assert_eq!(partial_trace(&rho, &[]), Err(Error::EmptyKeepSet));
        assert_eq!(partial_trace(&rho, &[4]), Err(Error::BadQubit(4)));
    }

    #[test]
    fn full_keep_set_returns_input() {
        let rho = ghz().density();
        let r = partial_trace(&rho, &[3, 1, 2]).unwrap();
        assert_eq!(r, Reduced::Three(*rho.matrix()));
    }

    #[test]
    fn non_hermitian_operator_is_rejected() {
        let mut m = Mat8::<f64>::zeros();
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            expectation(&m, &ghz()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn purity_endpoints() {
        assert!((purity(&ghz().density()) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityMatrix::<f64>::maximally_mixed()) - 0.125).abs() < 1e-16);
    }

    #[test]
    fn purity_of_noisy_projector() {
        // Tr ρ² = m² + 2m(1−m)/8 + (1−m)²/8 for ρ = m|φ⟩⟨φ| + (1−m)I/8.
        let m = 0.95;
        let rho = DensityMatrix::mixture(&[
            (m, ghz().density()),
            (1.0 - m, DensityMatrix::maximally_mixed()),
        ])
        .unwrap();
        let expected = m * m + 2.0 * m * (1.0 - m) / 8.0 + (1.0 - m) * (1.0 - m) / 8.0;
        assert!((purity(&rho) - expected).abs() < 1e-14);
        assert!((purity(&rho) - 0.9146875).abs() < 1e-12);
    }

    #[test]
    fn density_rejects_bad_trace_and_negative_spectrum() {
        let bad_trace = Mat8::<f64>::identity();
        assert!(DensityMatrix::new(bad_trace).is_err());
        let mut neg = Mat8::<f64>::zeros();
        neg[(0, 0)] = c(1.5, 0.0);
        neg[(1, 1)] = c(-0.5, 0.0);
        assert!(DensityMatrix::new(neg).is_err());
    }
}
