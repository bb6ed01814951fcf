//! Three-qubit states and local unitaries.
//!
//! Amplitudes are indexed by the bitstring `b1 b2 b3` with qubit 1 the most
//! significant bit: `index = 4·b1 + 2·b2 + b3`. Every Kronecker product in the
//! crate puts the qubit-1 factor leftmost so the two conventions agree.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::eigen::hermitian_eigen;
use super::matrix::{kron, Mat2, Mat4, Mat8};
use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Which local basis a state's amplitudes refer to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum BasisTag {
    #[default]
    Computational,
    Canonical,
    Other(String),
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::Computational => f.write_str("computational"),
            BasisTag::Canonical => f.write_str("canonical"),
            BasisTag::Other(s) => f.write_str(s),
        }
    }
}

impl From<&str> for BasisTag {
    fn from(s: &str) -> Self {
        match s {
            "computational" => BasisTag::Computational,
            "canonical" => BasisTag::Canonical,
            other => BasisTag::Other(other.to_owned()),
        }
    }
}

#[inline]
pub fn index_of(b1: usize, b2: usize, b3: usize) -> usize {
    4 * b1 + 2 * b2 + b3
}

/// Normalized three-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amps: [C<T>; 8],
    basis: BasisTag,
}

impl<T: Real> PureState<T> {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(amps: [C<T>; 8], basis: BasisTag) -> Result<Self> {
        let norm_sq = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        let finite = amps.iter().all(|a| a.re.is_finite() && a.im.is_finite());
        if !finite || (norm_sq - T::one()).abs() > T::lit(T::TOLERANCES.normalization) {
            return Err(Error::NotNormalized {
                norm_sq: norm_sq.to_f64_lossy(),
            });
        }
        Ok(Self { amps, basis })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [C<T>; 8], basis: BasisTag) -> Result<Self> {
        let norm = amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt();
        if !norm.is_finite() || norm <= T::epsilon() {
            return Err(Error::DegenerateState);
        }
        let inv = T::one() / norm;
        Ok(Self {
            amps: amps.map(|a| a * inv),
            basis,
        })
    }

    /// Computational-basis state `|b1 b2 b3⟩`.
    pub fn basis_state(index: usize) -> Self {
        let mut amps = [Complex::zero(); 8];
        amps[index] = Complex::new(T::one(), T::zero());
        Self {
            amps,
            basis: BasisTag::Computational,
        }
    }

    /// `|a⟩ ⊗ |b⟩ ⊗ |c⟩` from unit single-qubit vectors.
    pub fn product(a: [C<T>; 2], b: [C<T>; 2], c: [C<T>; 2]) -> Result<Self> {
        let amps = std::array::from_fn(|i| a[(i >> 2) & 1] * b[(i >> 1) & 1] * c[i & 1]);
        Self::new(amps, BasisTag::Computational)
    }

    pub fn amps(&self) -> &[C<T>; 8] {
        &self.amps
    }

    pub fn amp(&self, b1: usize, b2: usize, b3: usize) -> C<T> {
        self.amps[index_of(b1, b2, b3)]
    }

    pub fn basis(&self) -> &BasisTag {
        &self.basis
    }

    pub fn with_basis(mut self, basis: BasisTag) -> Self {
        self.basis = basis;
        self
    }

    pub fn norm_sq(&self) -> T {
        self.amps
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C<T> {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> Mat8<T> {
        Mat8::from_fn(|i, j| self.amps[i] * self.amps[j].conj())
    }

    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix {
            m: self.projector(),
        }
    }

    /// `⟨ψ|M|ψ⟩` without any Hermiticity check.
    pub(crate) fn sandwich(&self, m: &Mat8<T>) -> C<T> {
        let mv = m.mul_vec(&self.amps);
        self.amps
            .iter()
            .zip(mv.iter())
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    /// Largest amplitude distance to `other` after removing the relative
    /// global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> T {
        let ov = other.inner(self);
        let phase = if ov.norm() > T::zero() {
            ov / ov.norm()
        } else {
            Complex::new(T::one(), T::zero())
        };
        self.amps
            .iter()
            .zip(other.amps.iter())
            .fold(T::zero(), |acc, (a, b)| {
                acc.max((*a * phase.conj() - *b).norm())
            })
    }
}

/// 8×8 Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T> {
    m: Mat8<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(m: Mat8<T>) -> Result<Self> {
        let tol = T::TOLERANCES;
        if !m.is_finite() {
            return Err(Error::InvalidDensity("non-finite entry".into()));
        }
        let herm = m.hermiticity_defect();
        if herm > T::lit(tol.hermiticity) {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {:.3e})",
                herm.to_f64_lossy()
            )));
        }
        let tr = m.trace().re;
        if (tr - T::one()).abs() > T::lit(tol.normalization) {
            return Err(Error::InvalidDensity(format!(
                "trace {} differs from 1",
                tr.to_f64_lossy()
            )));
        }
        let min_eig = hermitian_eigen(&m).min_value();
        if min_eig < -T::lit(tol.positivity) {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {:.3e}",
                min_eig.to_f64_lossy()
            )));
        }
        Ok(Self { m })
    }

    /// `I/8`.
    pub fn maximally_mixed() -> Self {
        Self {
            m: Mat8::identity().scale_re(T::lit(0.125)),
        }
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(T, DensityMatrix<T>)]) -> Result<Self> {
        let mut acc = Mat8::zeros();
        for (w, rho) in parts {
            if *w < T::zero() {
                return Err(Error::InvalidDensity("negative mixture weight".into()));
            }
            acc = acc + rho.m.scale_re(*w);
        }
        Self::new(acc)
    }

    pub fn matrix(&self) -> &Mat8<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Mat8<T> {
        self.m
    }
}

/// `U1 ⊗ U2 ⊗ U3`, one unitary per qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitaryTriple<T> {
    factors: [Mat2<T>; 3],
}

impl<T: Real> LocalUnitaryTriple<T> {
    pub fn new(u1: Mat2<T>, u2: Mat2<T>, u3: Mat2<T>) -> Result<Self> {
        let tol = T::lit(T::TOLERANCES.unitarity);
        for (k, u) in [&u1, &u2, &u3].into_iter().enumerate() {
            let deviation = u.unitarity_defect();
            if !u.is_finite() || deviation > tol {
                return Err(Error::NonUnitary {
                    qubit: k + 1,
                    deviation: deviation.to_f64_lossy(),
                });
            }
        }
        Ok(Self {
            factors: [u1, u2, u3],
        })
    }

    pub fn identity() -> Self {
        Self {
            factors: [Mat2::identity(); 3],
        }
    }

    pub fn factors(&self) -> &[Mat2<T>; 3] {
        &self.factors
    }

    pub fn factor(&self, qubit: usize) -> &Mat2<T> {
        &self.factors[qubit - 1]
    }

    /// The full 8×8 operator.
    pub fn full(&self) -> Mat8<T> {
        let [a, b, c] = &self.factors;
        tensor3(a, b, c)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            factors: self.factors.map(|u| u.adjoint()),
        }
    }

    /// `self` applied after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        Self {
            factors: std::array::from_fn(|k| self.factors[k] * first.factors[k]),
        }
    }
}

/// `a ⊗ b ⊗ c` with the qubit-1 factor leftmost.
pub fn tensor3<T: Real>(a: &Mat2<T>, b: &Mat2<T>, c: &Mat2<T>) -> Mat8<T> {
    let ab: Mat4<T> = kron(a, b);
    kron(&ab, c)
}

/// `(u1 ⊗ u2 ⊗ u3)·s`. Each factor acts on its own index, so the 8×8 matrix
/// is never formed.
pub fn apply_local<T: Real>(u: &LocalUnitaryTriple<T>, s: &PureState<T>) -> PureState<T> {
    let mut amps = *s.amps();
    for (qubit, f) in u.factors().iter().enumerate() {
        let shift = 2 - qubit;
        let mut next = [Complex::zero(); 8];
        for (idx, out) in next.iter_mut().enumerate() {
            let bit = (idx >> shift) & 1;
            let base = idx & !(1 << shift);
            *out = f.0[bit][0] * amps[base] + f.0[bit][1] * amps[base | (1 << shift)];
        }
        amps = next;
    }
    PureState {
        amps,
        basis: s.basis().clone(),
    }
}
