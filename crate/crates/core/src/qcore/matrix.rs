//! Dense complex square matrices of compile-time dimension.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{Real, C};

/// Row-major `N×N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMat<T, const N: usize>(pub [[C<T>; N]; N]);

pub type Mat2<T> = CMat<T, 2>;
pub type Mat4<T> = CMat<T, 4>;
pub type Mat8<T> = CMat<T, 8>;

impl<T: Real, const N: usize> CMat<T, N> {
    pub fn zeros() -> Self {
        Self([[Complex::zero(); N]; N])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex::new(T::lit(rows[i][j]), T::zero()))
    }

    pub fn diag(d: [C<T>; N]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { Complex::zero() })
    }

    pub fn dim(&self) -> usize {
        N
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> C<T> {
        (0..N).fold(Complex::zero(), |acc, i| acc + self.0[i][i])
    }

    pub fn mul_vec(&self, v: &[C<T>; N]) -> [C<T>; N] {
        let mut out = [Complex::zero(); N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .iter()
                .zip(v.iter())
                .fold(Complex::zero(), |acc, (a, b)| acc + *a * *b);
        }
        out
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise `|Mᵢⱼ − conj(Mⱼᵢ)|`.
    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest entrywise deviation of `U·U†` from the identity.
    pub fn unitarity_defect(&self) -> T {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Squared Frobenius norm `Σ |Mᵢⱼ|²`.
    pub fn frobenius_sq(&self) -> T {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Kronecker product; `M` must equal `N·K`.
pub fn kron<T: Real, const N: usize, const K: usize, const M: usize>(
    a: &CMat<T, N>,
    b: &CMat<T, K>,
) -> CMat<T, M> {
    assert_eq!(M, N * K, "kron output dimension");
    CMat::from_fn(|r, c| a.0[r / K][c / K] * b.0[r % K][c % K])
}

impl<T: Real, const N: usize> Mul for CMat<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real, const N: usize> Add for CMat<T, N> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> Sub for CMat<T, N> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<T, const N: usize> Index<(usize, usize)> for CMat<T, N> {
    type Output = C<T>;

    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.0[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for CMat<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.0[i][j]
    }
}
