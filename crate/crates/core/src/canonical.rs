//! Local-unitary reduction of three-qubit pure states to the five-term form
//!
//! ```text
//! λ0|000⟩ + λ1 e^{iθ}|100⟩ + λ2|101⟩ + λ3|110⟩ + λ4|111⟩,   λᵢ ≥ 0, θ ∈ [0, π].
//! ```
//!
//! Reduction proceeds slice-wise. Writing the state as two 2×2 slices
//! `T0 = (t_{0jk})`, `T1 = (t_{1jk})`, a qubit-1 unitary whose first row
//! `(w0, w1)` makes `w0·T0 + w1·T1` singular is found from a quadratic in
//! `(w0 : w1)`. The singular slice is then rotated onto `|00⟩` by unitaries
//! on qubits 2 and 3, and a final diagonal phase gauge makes the remaining
//! amplitudes real except for the `|100⟩` phase.

use std::f64::consts::PI;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{
    apply_local, hermitian_eigen, BasisTag, CMat, LocalUnitaryTriple, Mat2, PureState,
};
use crate::scalar::{Real, C};

/// Below this, all three quadratic coefficients vanish and every qubit-1
/// rotation leaves a singular top slice.
const DEGENERATE_QUADRATIC: f64 = 1e-13;
/// Relative discriminant below which the quadratic is treated as a perfect
/// square (zero three-tangle).
const DOUBLE_ROOT: f64 = 1e-14;
/// Slack when testing `θ ∈ [0, π]` before snapping to the interval.
const THETA_SLACK: f64 = 1e-12;

/// `(λ0, …, λ4, θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalParams<T> {
    lambda: [T; 5],
    theta: T,
}

impl<T: Real> CanonicalParams<T> {
    /// Validates and normalizes: tiny negative `λ`s and a `θ` within `1e-12`
    /// of the interval are snapped back in.
    pub fn new(lambda: [T; 5], theta: T) -> Result<Self> {
        let slack = T::lit(1e-12);
        let mut lam = lambda;
        for (i, l) in lam.iter_mut().enumerate() {
            if !l.is_finite() {
                return Err(Error::InvalidParams(format!("lambda{i} is not finite")));
            }
            if *l < -slack {
                return Err(Error::InvalidParams(format!(
                    "lambda{i} = {} is negative",
                    l.to_f64_lossy()
                )));
            }
            if *l < T::zero() {
                *l = T::zero();
            }
        }
        let sum: T = lam.iter().fold(T::zero(), |acc, l| acc + *l * *l);
        if (sum - T::one()).abs() > T::lit(1e-10).max(T::lit(T::TOLERANCES.normalization)) {
            return Err(Error::InvalidParams(format!(
                "sum of squared lambdas is {}",
                sum.to_f64_lossy()
            )));
        }
        if !theta.is_finite() || theta < -slack || theta > T::PI() + slack {
            return Err(Error::InvalidParams(format!(
                "theta = {} outside [0, pi]",
                theta.to_f64_lossy()
            )));
        }
        Ok(Self {
            lambda: lam,
            theta: theta.max(T::zero()).min(T::PI()),
        })
    }

    pub fn lambda(&self) -> [T; 5] {
        self.lambda
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    /// Sets every `λᵢ < eps` to exactly zero, and `θ` to zero when `λ0` or
    /// `λ1` vanish (the phase is then removable).
    pub fn clamped(&self, eps: T) -> Self {
        let lambda = self.lambda.map(|l| if l < eps { T::zero() } else { l });
        let theta = if lambda[0].is_zero() || lambda[1].is_zero() {
            T::zero()
        } else {
            self.theta
        };
        Self { lambda, theta }
    }
}

/// Outcome of [`canonicalize`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalizationResult<T> {
    pub params: CanonicalParams<T>,
    /// `u` with `apply_local(u, s) ≈ canonical_state(params)` up to a global phase.
    #[serde(skip)]
    pub unitaries: LocalUnitaryTriple<T>,
    /// Largest amplitude error of that reconstruction.
    pub residual: T,
}

/// The canonical-form state for given parameters, tagged `canonical`.
pub fn canonical_state<T: Real>(p: &CanonicalParams<T>) -> PureState<T> {
    let [l0, l1, l2, l3, l4] = p.lambda;
    let mut amps = [C::<T>::zero(); 8];
    amps[0] = Complex::new(l0, T::zero());
    amps[4] = Complex::from_polar(l1, p.theta);
    amps[5] = Complex::new(l2, T::zero());
    amps[6] = Complex::new(l3, T::zero());
    amps[7] = Complex::new(l4, T::zero());
    // Parameters are validated to 1e-10; renormalize so the state meets the
    // tighter pure-state check.
    PureState::normalized(amps, BasisTag::Canonical).expect("validated parameters have unit norm")
}

/// Result of [`verify_canonical`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalCheck<T> {
    pub is_canonical: bool,
    /// Largest violation over all structural conditions, measured as an
    /// amplitude distance to the allowed set.
    pub residual: T,
}

/// Checks the zero pattern, realness and phase range of a canonical state.
pub fn verify_canonical<T: Real>(s: &PureState<T>) -> CanonicalCheck<T> {
    verify_with(s, T::lit(T::TOLERANCES.canonical_residual))
}

pub(crate) fn verify_with<T: Real>(s: &PureState<T>, tol: T) -> CanonicalCheck<T> {
    let a = s.amps();
    let mut residual = T::zero();
    for i in [1, 2, 3] {
        residual = residual.max(a[i].norm());
    }
    for i in [0, 5, 6, 7] {
        residual = residual.max(a[i].im.abs()).max(-a[i].re);
    }
    if a[0].norm() > tol {
        // θ ∈ [0, π] means the |100⟩ amplitude lies in the closed upper half-plane.
        residual = residual.max(-a[4].im);
    }
    CanonicalCheck {
        is_canonical: residual < tol,
        residual,
    }
}

/// Brings `s` to canonical form by local unitaries.
///
/// A second pass on the state rotated by the first pass's unitaries recovers
/// the digits lost when `λ0` is small and the two roots nearly coincide.
pub fn canonicalize<T: Real>(s: &PureState<T>) -> Result<CanonicalizationResult<T>> {
    let first = canonicalize_once(s)?;
    let rotated = apply_local(&first.unitaries, s);
    let Ok(second) = canonicalize_once(&rotated) else {
        return Ok(first);
    };
    let unitaries = second.unitaries.compose(&first.unitaries);
    let residual =
        apply_local(&unitaries, s).distance_up_to_phase(&canonical_state(&second.params));
    if residual
        <= first
            .residual
            .max(T::lit(T::TOLERANCES.canonical_residual) * T::lit(1e-3))
    {
        Ok(CanonicalizationResult {
            params: second.params,
            unitaries,
            residual,
        })
    } else {
        Ok(first)
    }
}

fn canonicalize_once<T: Real>(s: &PureState<T>) -> Result<CanonicalizationResult<T>> {
    let norm_sq = s.norm_sq();
    if !norm_sq.is_finite() || (norm_sq - T::one()).abs() > T::lit(T::TOLERANCES.normalization) {
        return Err(Error::DegenerateState);
    }
    let tol = T::TOLERANCES;
    let clamp = T::lit(tol.clamp);
    let max_residual = T::lit(tol.canonical_residual);

    let [t0, t1] = slices(s);
    let a = det2(&t0);
    let c = det2(&t1);
    let b = t0.0[0][0] * t1.0[1][1] + t1.0[0][0] * t0.0[1][1]
        - t0.0[0][1] * t1.0[1][0]
        - t1.0[0][1] * t0.0[1][0];

    let scale = a.norm().max(b.norm()).max(c.norm());
    let mut rows: Vec<([C<T>; 2], bool)> = Vec::with_capacity(3);
    if scale <= T::lit(DEGENERATE_QUADRATIC) {
        rows.push((max_overlap_row(&t0, &t1), true));
    } else {
        let two = T::lit(2.0);
        let disc = b * b - a * c * T::lit(4.0);
        if disc.norm() <= T::lit(DOUBLE_ROOT) * scale * scale {
            rows.push((better_of([-b, a * two], [c * two, -b]), true));
        }
        if !disc.is_zero() {
            let sq = disc.sqrt();
            for r in [sq, -sq] {
                rows.push((better_of([-b + r, a * two], [c * two, -b - r]), false));
            }
        }
    }

    let mut best: Option<(Candidate<T>, (bool, bool, T, [T; 4]))> = None;
    for (row, preferred) in rows {
        let Some(w) = unit(row) else { continue };
        let cand = reduce(s, &t0, &t1, w, clamp);
        let valid = cand.theta_ok && cand.residual <= max_residual;
        let l = cand.params.lambda;
        // Larger λ0 wins only beyond rounding noise.
        let lambda0 = (l[0] / T::lit(1e-12)).round();
        let key = (valid, preferred, lambda0, [l[1], l[2], l[3], l[4]]);
        let better = match &best {
            None => true,
            Some((_, bk)) => key_gt(&key, bk),
        };
        if better {
            best = Some((cand, key));
        }
    }
    let (cand, _) = best.ok_or(Error::DegenerateState)?;
    Ok(CanonicalizationResult {
        params: cand.params,
        unitaries: cand.unitaries,
        residual: cand.residual,
    })
}

fn key_gt<T: Real>(a: &(bool, bool, T, [T; 4]), b: &(bool, bool, T, [T; 4])) -> bool {
    if a.0 != b.0 {
        return a.0;
    }
    if a.1 != b.1 {
        return a.1;
    }
    if a.2 != b.2 {
        return a.2 > b.2;
    }
    for i in 0..4 {
        if a.3[i] != b.3[i] {
            return a.3[i] > b.3[i];
        }
    }
    false
}

struct Candidate<T> {
    params: CanonicalParams<T>,
    unitaries: LocalUnitaryTriple<T>,
    residual: T,
    theta_ok: bool,
}

fn slices<T: Real>(s: &PureState<T>) -> [Mat2<T>; 2] {
    let a = s.amps();
    std::array::from_fn(|i| Mat2::from_fn(|j, k| a[4 * i + 2 * j + k]))
}

fn det2<T: Real>(m: &Mat2<T>) -> C<T> {
    m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0]
}

fn better_of<T: Real>(x: [C<T>; 2], y: [C<T>; 2]) -> [C<T>; 2] {
    let n = |v: &[C<T>; 2]| v[0].norm_sqr() + v[1].norm_sqr();
    if n(&x) >= n(&y) {
        x
    } else {
        y
    }
}

fn unit<T: Real>(v: [C<T>; 2]) -> Option<[C<T>; 2]> {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    (n > T::zero() && n.is_finite()).then(|| [v[0] / n, v[1] / n])
}

/// Row `w` maximizing `‖w0·T0 + w1·T1‖`: top eigenvector of the Gram matrix.
fn max_overlap_row<T: Real>(t0: &Mat2<T>, t1: &Mat2<T>) -> [C<T>; 2] {
    let ip = |x: &Mat2<T>, y: &Mat2<T>| {
        let mut acc = C::<T>::zero();
        for j in 0..2 {
            for k in 0..2 {
                acc += x.0[j][k].conj() * y.0[j][k];
            }
        }
        acc
    };
    let g = CMat([[ip(t0, t0), ip(t0, t1)], [ip(t1, t0), ip(t1, t1)]]);
    let e = hermitian_eigen(&g);
    [e.vectors.0[0][0], e.vectors.0[1][0]]
}

/// Unitaries `(L, R)` with `L·t·Rᵀ` upper-left real nonnegative, `[0][1] = 0`
/// and `[1][1]` real nonnegative; `[1][0]` vanishes up to rounding.
fn svd_frame<T: Real>(t: &Mat2<T>) -> (Mat2<T>, Mat2<T>) {
    let gram = *t * t.adjoint();
    let e = hermitian_eigen(&gram);
    let l0 = [e.vectors.0[0][0], e.vectors.0[1][0]];
    let left = CMat([[l0[0].conj(), l0[1].conj()], [-l0[1], l0[0]]]);
    let m = left * *t;
    let r = [m.0[0][0], m.0[0][1]];
    let rn = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
    let first = if rn > T::zero() {
        [r[0].conj() / rn, r[1].conj() / rn]
    } else {
        [Complex::new(T::one(), T::zero()), C::zero()]
    };
    let mut second = [-first[1].conj(), first[0].conj()];
    let z = m.0[1][0] * second[0] + m.0[1][1] * second[1];
    if z.norm() > T::zero() {
        let ph = z.conj() / z.norm();
        second = [second[0] * ph, second[1] * ph];
    }
    (left, CMat([first, second]))
}

fn phase_diag<T: Real>(angle: T) -> Mat2<T> {
    Mat2::diag([
        Complex::new(T::one(), T::zero()),
        Complex::from_polar(T::one(), angle),
    ])
}

fn arg_or_zero<T: Real>(z: C<T>, clamp: T) -> T {
    if z.norm() > clamp {
        z.arg()
    } else {
        T::zero()
    }
}

fn reduce<T: Real>(
    s: &PureState<T>,
    t0: &Mat2<T>,
    t1: &Mat2<T>,
    w: [C<T>; 2],
    clamp: T,
) -> Candidate<T> {
    let u1 = CMat([[w[0], w[1]], [-w[1].conj(), w[0].conj()]]);
    let top = t0.scale(w[0]) + t1.scale(w[1]);
    let bottom = t0.scale(-w[1].conj()) + t1.scale(w[0].conj());

    let zero_top = top.frobenius_sq().sqrt() < clamp;
    let (u2, u3) = svd_frame(if zero_top { &bottom } else { &top });
    let (mut alpha, mut dbeta, mut dgamma) = (T::zero(), T::zero(), T::zero());
    let mut theta = T::zero();
    let mut theta_ok = true;

    if !zero_top {
        let sl = u2 * bottom * u3.transpose();
        let (a, b, c, d) = (sl.0[0][0], sl.0[0][1], sl.0[1][0], sl.0[1][1]);
        let (pb, pc, pd) = (
            arg_or_zero(b, clamp),
            arg_or_zero(c, clamp),
            arg_or_zero(d, clamp),
        );
        alpha = pd - pb - pc;
        dgamma = -pb - alpha;
        dbeta = -pc - alpha;
        if a.norm() > clamp {
            let two_pi = T::lit(2.0 * PI);
            theta = (a.arg() + alpha) % two_pi;
            if theta < T::zero() {
                theta += two_pi;
            }
            let gauge_free = [b, c, d].iter().any(|z| z.norm() <= clamp);
            let slack = T::lit(THETA_SLACK);
            if theta > T::PI() + slack {
                if theta >= two_pi - slack {
                    theta = T::zero();
                } else if gauge_free {
                    // Reflect θ → 2π − θ through the unconstrained phase.
                    let shift = two_pi - theta - theta;
                    alpha += shift;
                    if d.norm() <= clamp {
                        dbeta -= shift;
                        dgamma -= shift;
                    } else if b.norm() <= clamp {
                        dbeta -= shift;
                    } else {
                        dgamma -= shift;
                    }
                    theta = two_pi - theta;
                } else {
                    theta_ok = false;
                }
            }
            if theta > T::PI() {
                theta = if theta_ok { T::PI() } else { theta };
            }
        }
    }

    let u1 = phase_diag(alpha) * u1;
    let u2 = phase_diag(dbeta) * u2;
    let u3 = phase_diag(dgamma) * u3;
    let unitaries = LocalUnitaryTriple::new(u1, u2, u3)
        .expect("products of unitaries built from unit vectors are unitary");
    let rotated = apply_local(&unitaries, s);
    let r = rotated.amps();

    let mut lambda = [
        r[0].norm(),
        r[4].norm(),
        r[5].norm(),
        r[6].norm(),
        r[7].norm(),
    ];
    // The rotated state has unit norm; dropping the forbidden amplitudes
    // leaves a sum within rounding of one.
    let total = lambda.iter().fold(T::zero(), |acc, l| acc + *l * *l).sqrt();
    for l in lambda.iter_mut() {
        *l /= total;
    }
    let theta = if theta_ok { theta } else { theta.min(T::PI()) };
    let params = CanonicalParams { lambda, theta }.clamped(clamp);
    let target = canonical_state(&params);
    let residual = rotated.distance_up_to_phase(&target);
    Candidate {
        params,
        unitaries,
        residual,
        theta_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn st(entries: &[(usize, C<f64>)]) -> PureState<f64> {
        let mut a = [C::zero(); 8];
        for &(i, z) in entries {
            a[i] = z;
        }
        PureState::normalized(a, BasisTag::Computational).unwrap()
    }

    fn params(l: [f64; 5], theta: f64) -> CanonicalParams<f64> {
        CanonicalParams::new(l, theta).unwrap()
    }

    fn assert_params(got: &CanonicalParams<f64>, l: [f64; 5], theta: f64, tol: f64) {
        for i in 0..5 {
            assert!(
                (got.lambda()[i] - l[i]).abs() < tol,
                "lambda{i}: {:?} vs {l:?}",
                got.lambda()
            );
        }
        assert!(
            (got.theta() - theta).abs() < tol,
            "theta {} vs {theta}",
            got.theta()
        );
    }

    #[test]
    fn canonical_state_examples() {
        let s = canonical_state(&params([1.0, 0.0, 0.0, 0.0, 0.0], 0.0));
        assert_eq!(s.amps()[0], c(1.0, 0.0));
        assert_eq!(s.basis(), &BasisTag::Canonical);

        let h = 0.5f64.sqrt();
        let g = canonical_state(&params([h, 0.0, 0.0, 0.0, h], 0.0));
        assert!((g.amps()[0].re - h).abs() < 1e-16 && (g.amps()[7].re - h).abs() < 1e-16);

        let t = 1.0 / 3.0f64.sqrt();
        let th = 0.7;
        let phi = canonical_state(&params([t, t, 0.0, 0.0, t], th));
        assert!((phi.amps()[4] - Complex::from_polar(t, th)).norm() < 1e-15);
        for i in [1, 2, 3] {
            assert!(phi.amps()[i].is_zero());
        }
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(CanonicalParams::new([1.0, 0.5, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(CanonicalParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 4.0).is_err());
        assert!(CanonicalParams::new([-0.1, 1.0, 0.0, 0.0, 0.0], 0.0).is_err());
        let snapped = CanonicalParams::new([1.0, -1e-13, 0.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(snapped.lambda()[1], 0.0);
    }

    #[test]
    fn product_of_hadamard_pair_example() {
        // ½(|000⟩+|011⟩+|100⟩+|111⟩) = |+⟩ ⊗ (|00⟩+|11⟩)/√2.
        let s = st(&[
            (0, c(1.0, 0.0)),
            (3, c(1.0, 0.0)),
            (4, c(1.0, 0.0)),
            (7, c(1.0, 0.0)),
        ]);
        assert!(!verify_canonical(&s).is_canonical);
        let r = canonicalize(&s).unwrap();
        let h = 0.5f64.sqrt();
        assert_params(&r.params, [0.0, h, 0.0, 0.0, h], 0.0, 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn phase_example_keeps_theta() {
        for th in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI] {
            let s = st(&[
                (0, Complex::from_polar(1.0, th)),
                (3, c(1.0, 0.0)),
                (4, c(-1.0, 0.0)),
            ]);
            let r = canonicalize(&s).unwrap();
            let t = 1.0 / 3.0f64.sqrt();
            assert_params(&r.params, [t, t, 0.0, 0.0, t], th, 1e-12);
            let back = apply_local(&r.unitaries, &s);
            let d = back.distance_up_to_phase(&canonical_state(&r.params));
            assert!(
                d < 1e-12,
                "theta {th}: {d} {:?} {:?}",
                r.params,
                back.amps()
            );
        }
    }

    #[test]
    fn basis_state_is_already_canonical() {
        let r = canonicalize(&PureState::<f64>::basis_state(0)).unwrap();
        assert_params(&r.params, [1.0, 0.0, 0.0, 0.0, 0.0], 0.0, 1e-14);
    }

    #[test]
    fn verify_flags_forbidden_amplitude() {
        let s = st(&[(1, c(1.0, 0.0)), (6, c(1.0, 0.0))]);
        let chk = verify_canonical(&s);
        assert!(!chk.is_canonical);
        assert!((chk.residual - 0.5f64.sqrt()).abs() < 1e-15);

        let ok = canonical_state(&params([0.6, 0.0, 0.0, 0.8, 0.0], 0.0));
        assert!(verify_canonical(&ok).is_canonical);
    }

    #[test]
    fn verify_rejects_lower_half_plane_phase() {
        let t = 1.0 / 3.0f64.sqrt();
        let s = st(&[
            (0, c(t, 0.0)),
            (4, Complex::from_polar(t, -0.3)),
            (7, c(t, 0.0)),
        ]);
        assert!(!verify_canonical(&s).is_canonical);
        // With λ0 = 0 the |100⟩ phase is unconstrained.
        let s = st(&[(4, Complex::from_polar(0.6, -0.3)), (7, c(0.8, 0.0))]);
        assert!(verify_canonical(&s).is_canonical);
    }
}
