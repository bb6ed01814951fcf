//! Cyclic Jacobi diagonalization of small Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMat;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `A = V·diag(values)·V†` of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order; column `k` of `vectors` is the
/// eigenvector of `values[k]`.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen<T, const N: usize> {
    pub values: [T; N],
    pub vectors: CMat<T, N>,
}

impl<T: Real, const N: usize> HermitianEigen<T, N> {
    /// Rebuilds `V·diag(f(λ))·V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> CMat<T, N> {
        let v = &self.vectors;
        CMat::from_fn(|i, j| {
            (0..N).fold(Complex::zero(), |acc, k| {
                acc + v.0[i][k] * v.0[j][k].conj() * f(self.values[k])
            })
        })
    }

    pub fn min_value(&self) -> T {
        self.values[N - 1]
    }
}

/// Diagonalizes a Hermitian matrix. Only the upper triangle's Hermitian part
/// matters; the input is symmetrized first.
pub fn hermitian_eigen<T: Real, const N: usize>(m: &CMat<T, N>) -> HermitianEigen<T, N> {
    let half = T::lit(0.5);
    let mut a = CMat::<T, N>::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * half);
    let mut v = CMat::<T, N>::identity();

    let scale = a.frobenius_sq().sqrt();
    if scale > T::zero() {
        let target = T::epsilon() * T::epsilon() * scale * scale;
        for _ in 0..MAX_SWEEPS {
            let off: T = (0..N)
                .flat_map(|i| (0..N).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .fold(T::zero(), |acc, (i, j)| acc + a.0[i][j].norm_sqr());
            if off <= target {
                break;
            }
            for p in 0..N {
                for q in (p + 1)..N {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&x, &y| {
        a.0[y][y]
            .re
            .partial_cmp(&a.0[x][x].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let vectors = CMat::from_fn(|i, k| v.0[i][order[k]]);
    HermitianEigen { values, vectors }
}

pub fn hermitian_eigenvalues<T: Real, const N: usize>(m: &CMat<T, N>) -> [T; N] {
    hermitian_eigen(m).values
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real, const N: usize>(a: &mut CMat<T, N>, v: &mut CMat<T, N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let g = apq.norm();
    if g == T::zero() {
        return;
    }
    // Unit phase taking a[p][q] to the positive real axis.
    let phase = apq / g;
    let app = a.0[p][p].re;
    let aqq = a.0[q][q].re;
    let theta = (aqq - app) / (g + g);
    let t = if theta >= T::zero() {
        T::one() / (theta + (T::one() + theta * theta).sqrt())
    } else {
        -T::one() / (-theta + (T::one() + theta * theta).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // J = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q).
    let jpp = Complex::new(c, T::zero());
    let jpq = Complex::new(s, T::zero());
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A ← A·J
    for k in 0..N {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * jpp + akq * jqp;
        a.0[k][q] = akp * jpq + akq * jqq;
    }
    // A ← J†·A
    for k in 0..N {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
        a.0[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a.0[p][q] = Complex::zero();
    a.0[q][p] = Complex::zero();
    a.0[p][p].im = T::zero();
    a.0[q][q].im = T::zero();

    for k in 0..N {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * jpp + vkq * jqp;
        v.0[k][q] = vkp * jpq + vkq * jqq;
    }
}
