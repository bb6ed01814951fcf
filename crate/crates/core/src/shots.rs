//! Finite-shot estimates of the named observables.
//!
//! Each shot measures qubit 1, then 2, then 3 along the axis its Pauli factor
//! names, collapsing the state after every outcome, and records twice the
//! product of the three `±1` results. Each observable owns a ChaCha20 stream
//! selected by `(seed, observable index)`, so estimates do not depend on the
//! order or thread in which observables are sampled.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::SloccClass;
use crate::error::{Error, Result};
use crate::observables::{Axis, NamedOp, Observable};
use crate::qcore::{apply_local, CMat, LocalUnitaryTriple, Mat2, PureState};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotEstimate<T> {
    pub observable: NamedOp,
    pub mean: T,
    /// Sample standard deviation over `√n`.
    pub stderr: T,
    pub n: u64,
}

impl<T: Real> ShotEstimate<T> {
    /// `|mean| / stderr`; infinite for a nonzero mean with zero spread.
    pub fn statistic(&self) -> T {
        if self.stderr > T::zero() {
            self.mean.abs() / self.stderr
        } else if self.mean == T::zero() {
            T::zero()
        } else {
            T::infinity()
        }
    }
}

/// Rotation taking the eigenbasis of the Pauli matrix for `axis` to the
/// computational basis (`+1 ↦ |0⟩`, `−1 ↦ |1⟩`).
fn to_z_basis<T: Real>(axis: Axis) -> Mat2<T> {
    let h = T::FRAC_1_SQRT_2();
    let r = |x: T| Complex::new(x, T::zero());
    let i = |x: T| Complex::new(T::zero(), x);
    match axis {
        Axis::X => CMat([[r(h), r(h)], [r(h), r(-h)]]),
        Axis::Y => CMat([[r(h), i(-h)], [r(h), i(h)]]),
        Axis::Z => Mat2::identity(),
    }
}

/// Outcome probabilities of the three sequential single-qubit measurements:
/// `p1[b1]`, `p2[b1][b2]`, `p3[b1][b2][b3]` as conditionals.
struct Sequential {
    first: f64,
    second: [f64; 2],
    third: [[f64; 2]; 2],
}

impl Sequential {
    fn new<T: Real>(s: &PureState<T>, op: NamedOp) -> Result<Self> {
        let [a, b, c] = op.pattern();
        let u = LocalUnitaryTriple::new(to_z_basis(a), to_z_basis(b), to_z_basis(c))?;
        let rotated = apply_local(&u, s);
        let probs: [f64; 8] = rotated.amps().map(|z| z.norm_sqr().to_f64_lossy());
        // Probability of outcome 0 given the prefix; exact zero on the other
        // branch forces outcome 0 with certainty.
        let split = |p0: f64, p1: f64| {
            if p1 == 0.0 {
                1.0
            } else if p0 == 0.0 {
                0.0
            } else {
                p0 / (p0 + p1)
            }
        };
        let m2 = |b1: usize, b2: usize| probs[4 * b1 + 2 * b2] + probs[4 * b1 + 2 * b2 + 1];
        let m1 = |b1: usize| m2(b1, 0) + m2(b1, 1);
        Ok(Self {
            first: split(m1(0), m1(1)),
            second: [split(m2(0, 0), m2(0, 1)), split(m2(1, 0), m2(1, 1))],
            third: std::array::from_fn(|b1| {
                std::array::from_fn(|b2| split(probs[4 * b1 + 2 * b2], probs[4 * b1 + 2 * b2 + 1]))
            }),
        })
    }

    /// One shot: `+1` or `−1` for the parity of the three outcomes.
    fn shot<R: Rng>(&self, rng: &mut R) -> i32 {
        let b1 = usize::from(rng.gen::<f64>() >= self.first);
        let b2 = usize::from(rng.gen::<f64>() >= self.second[b1]);
        let b3 = usize::from(rng.gen::<f64>() >= self.third[b1][b2]);
        if (b1 + b2 + b3) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Generator for one observable's stream.
pub fn stream(seed: u64, op: NamedOp) -> ChaCha20Rng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(op.index() as u64);
    r
}

/// Estimates `⟨obs⟩` on `s` from `n` simulated shots.
pub fn sample<T: Real>(
    obs: &Observable<T>,
    s: &PureState<T>,
    n: u64,
    seed: u64,
) -> Result<ShotEstimate<T>> {
    let op = obs.as_named().ok_or(Error::UnsupportedObservable)?;
    sample_named(op, s, n, seed)
}

pub fn sample_named<T: Real>(
    op: NamedOp,
    s: &PureState<T>,
    n: u64,
    seed: u64,
) -> Result<ShotEstimate<T>> {
    if n == 0 {
        return Err(Error::ZeroShots);
    }
    let seq = Sequential::new(s, op)?;
    let mut rng = stream(seed, op);
    let mut plus = 0u64;
    for _ in 0..n {
        if seq.shot(&mut rng) > 0 {
            plus += 1;
        }
    }
    let minus = n - plus;
    let nf = n as f64;
    let mean = 2.0 * (plus as f64 - minus as f64) / nf;
    // Two-valued outcomes: Σ(x − mean)² has a closed form in the counts.
    let ss = plus as f64 * (2.0 - mean).powi(2) + minus as f64 * (-2.0 - mean).powi(2);
    let stderr = if n > 1 && plus != 0 && minus != 0 {
        (ss / (nf - 1.0)).sqrt() / nf.sqrt()
    } else {
        0.0
    };
    Ok(ShotEstimate {
        observable: op,
        mean: T::lit(mean),
        stderr: T::lit(stderr),
        n,
    })
}

pub const DEFAULT_K_SIGMA: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShotReport<T> {
    pub verdict: SloccClass,
    /// Estimates of `O`, `O1`, `O2`, `O3` in that order.
    pub estimates: Vec<ShotEstimate<T>>,
    /// `Q = ⟨O1⟩ + ⟨O2⟩ + ⟨O3⟩` with its combined standard error.
    pub q: T,
    pub q_stderr: T,
    pub k_sigma: T,
    /// Observables whose statistic fell in `(k, 2k)`.
    pub marginal: Vec<NamedOp>,
    pub q_marginal: bool,
}

impl<T: Real> ShotReport<T> {
    pub fn is_marginal(&self) -> bool {
        self.q_marginal || !self.marginal.is_empty()
    }
}

/// Runs the decision tree on shot estimates. `s` is taken to be in canonical
/// form already, or is rotated there by `transport` first.
pub fn classify_with_shots<T: Real>(
    s: &PureState<T>,
    n_per_obs: u64,
    seed: u64,
    k_sigma: T,
    transport: Option<&LocalUnitaryTriple<T>>,
) -> Result<ShotReport<T>> {
    if n_per_obs == 0 {
        return Err(Error::ZeroShots);
    }
    let state = match transport {
        Some(u) => apply_local(u, s),
        None => s.clone(),
    };
    let estimates: Vec<ShotEstimate<T>> = NamedOp::CLASSIFIERS
        .par_iter()
        .map(|&op| sample_named(op, &state, n_per_obs, seed))
        .collect::<Result<_>>()?;
    let [o, o1, o2, o3] = [0, 1, 2, 3].map(|k| estimates[k]);

    let nonzero = |e: &ShotEstimate<T>| e.statistic() > k_sigma;
    let q = o1.mean + o2.mean + o3.mean;
    let q_stderr = (o1.stderr.powi(2) + o2.stderr.powi(2) + o3.stderr.powi(2)).sqrt();
    let q_est = ShotEstimate {
        observable: NamedOp::O,
        mean: q,
        stderr: q_stderr,
        n: n_per_obs,
    };

    let verdict = if nonzero(&o) {
        SloccClass::GHZ
    } else if nonzero(&o1) && nonzero(&o2) {
        SloccClass::W
    } else if !nonzero(&q_est) {
        SloccClass::Separable
    } else {
        match (nonzero(&o1), nonzero(&o2), nonzero(&o3)) {
            (false, false, true) => SloccClass::Bisep1_23,
            (true, false, false) => SloccClass::Bisep12_3,
            (false, true, false) => SloccClass::Bisep13_2,
            pattern => {
                return Err(Error::Ambiguous(format!(
                    "shot estimates give nonzero Q but pattern (O1, O2, O3) = {pattern:?}"
                )))
            }
        }
    };

    let two_k = k_sigma + k_sigma;
    let in_zone = |x: T| x > k_sigma && x < two_k;
    Ok(ShotReport {
        verdict,
        marginal: estimates
            .iter()
            .filter(|e| in_zone(e.statistic()))
            .map(|e| e.observable)
            .collect(),
        q_marginal: in_zone(q_est.statistic()),
        estimates,
        q,
        q_stderr,
        k_sigma,
    })
}
