//! Partial tangles and the teleportation fidelities they fix.
//!
//! For a resource shared by qubits `i, j, k`, measuring qubit `k` and
//! teleporting through the remaining pair reaches fidelity
//! `F_k = 2/3 + τ_ij/3` with `τ_ij = √(C²_{i(jk)} − C²_ik)`.

use serde::Serialize;

use crate::canonical::{canonical_state, canonicalize, verify_canonical, CanonicalParams};
use crate::classify::SloccClass;
use crate::error::{Error, Result};
use crate::mixed::concurrence_unchecked;
use crate::observables::{named, NamedOp};
use crate::qcore::{reduce_to_pair, reduce_to_qubit, PureState};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialTangles<T> {
    pub t12: T,
    pub t23: T,
    pub t31: T,
}

impl<T: Real> PartialTangles<T> {
    pub fn as_array(&self) -> [T; 3] {
        [self.t12, self.t23, self.t31]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let (a, b) = (self.as_array(), other.as_array());
        (0..3).fold(T::zero(), |acc, k| acc.max((a[k] - b[k]).abs()))
    }
}

/// Maximum teleportation fidelities `F_k` and singlet fractions `f_k`,
/// indexed by the measured qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fidelities<T> {
    pub f1: T,
    pub f2: T,
    pub f3: T,
    pub singlet_fractions: [T; 3],
}

impl<T: Real> Fidelities<T> {
    /// `F3` from `τ12`, `F1` from `τ23`, `F2` from `τ31`.
    pub fn from_tangles(t: &PartialTangles<T>) -> Self {
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        let fid = |tau: T| (two + tau) / three;
        let singlet = |tau: T| (tau + T::one()) / two;
        Self {
            f1: fid(t.t23),
            f2: fid(t.t31),
            f3: fid(t.t12),
            singlet_fractions: [singlet(t.t23), singlet(t.t31), singlet(t.t12)],
        }
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.f1, self.f2, self.f3]
    }

    pub fn min(&self) -> T {
        self.f1.min(self.f2).min(self.f3)
    }
}

/// Partial tangles of the canonical state with parameters `p`.
pub fn partial_tangles_closed<T: Real>(p: &CanonicalParams<T>) -> PartialTangles<T> {
    let [l0, l1, l2, l3, l4] = p.lambda();
    let two = T::lit(2.0);
    let inner = l0 * l0 * l4 * l4 + l1 * l1 * l4 * l4 + l2 * l2 * l3 * l3
        - two * l1 * l2 * l3 * l4 * p.theta().cos();
    PartialTangles {
        t12: two * l0 * (l3 * l3 + l4 * l4).sqrt(),
        t23: two * inner.max(T::zero()).sqrt(),
        t31: two * l0 * (l2 * l2 + l4 * l4).sqrt(),
    }
}

/// Partial tangles from `⟨O⟩, ⟨O1⟩, ⟨O2⟩, ⟨O4⟩, ⟨O5⟩` of a canonical state.
pub fn partial_tangles_observed<T: Real>(s: &PureState<T>) -> Result<PartialTangles<T>> {
    let check = verify_canonical(s);
    if !check.is_canonical {
        return Err(Error::NotCanonical {
            residual: check.residual.to_f64_lossy(),
        });
    }
    let ev = |op| named::<T>(op).expectation(s);
    let (o, o1, o2, o4, o5) = (
        ev(NamedOp::O)?,
        ev(NamedOp::O1)?,
        ev(NamedOp::O2)?,
        ev(NamedOp::O4)?,
        ev(NamedOp::O5)?,
    );
    let half = T::lit(0.5);
    Ok(PartialTangles {
        t12: half * (o * o + o1 * o1).sqrt(),
        t23: half * (o * o + o4 * o4 + o5 * o5).sqrt(),
        t31: half * (o * o + o2 * o2).sqrt(),
    })
}

/// `√(C²_{i(jk)} − C²_ik)` from purities and pair concurrences, in any basis.
pub fn partial_tangles_oracle<T: Real>(s: &PureState<T>) -> PartialTangles<T> {
    let rho = s.projector();
    let two = T::lit(2.0);
    let tau = |i: usize, k: usize| {
        let c_rest = two * (T::one() - reduce_to_qubit(&rho, i).frobenius_sq());
        let c_ik = concurrence_unchecked(&reduce_to_pair(&rho, i.min(k), i.max(k)));
        (c_rest - c_ik * c_ik).max(T::zero()).sqrt()
    };
    PartialTangles {
        t12: tau(1, 3),
        t23: tau(2, 1),
        t31: tau(3, 2),
    }
}

/// Partial tangles of an arbitrary state via its canonical form.
pub fn partial_tangles<T: Real>(s: &PureState<T>) -> Result<PartialTangles<T>> {
    let canon = canonicalize(s)?;
    partial_tangles_observed(&canonical_state(&canon.params))
}

pub fn fidelities<T: Real>(s: &PureState<T>) -> Result<Fidelities<T>> {
    Ok(Fidelities::from_tangles(&partial_tangles(s)?))
}

/// Coarse entanglement structure read off the partial tangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Trichotomy {
    Separable,
    Biseparable,
    GenuinelyEntangled,
}

impl std::fmt::Display for Trichotomy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Trichotomy::Separable => "separable",
            Trichotomy::Biseparable => "biseparable",
            Trichotomy::GenuinelyEntangled => "genuinely entangled",
        })
    }
}

impl From<SloccClass> for Trichotomy {
    fn from(c: SloccClass) -> Self {
        if c.is_genuinely_entangled() {
            Trichotomy::GenuinelyEntangled
        } else if c.is_biseparable() {
            Trichotomy::Biseparable
        } else {
            Trichotomy::Separable
        }
    }
}

pub fn trichotomy_of<T: Real>(t: &PartialTangles<T>, tol: T) -> Trichotomy {
    let zeros = t.as_array().iter().filter(|&&x| x <= tol).count();
    match zeros {
        3 => Trichotomy::Separable,
        0 => Trichotomy::GenuinelyEntangled,
        _ => Trichotomy::Biseparable,
    }
}

pub fn trichotomy<T: Real>(s: &PureState<T>, tol: T) -> Result<Trichotomy> {
    Ok(trichotomy_of(&partial_tangles(s)?, tol))
}

/// Whether "genuinely entangled ⇒ every `F_k` beats the classical 2/3 by
/// more than `tol`" holds for `s`.
pub fn entangled_beats_classical<T: Real>(s: &PureState<T>, tol: T) -> Result<bool> {
    let t = partial_tangles(s)?;
    if trichotomy_of(&t, tol) != Trichotomy::GenuinelyEntangled {
        return Ok(true);
    }
    let f = Fidelities::from_tangles(&t);
    Ok(f.min() > T::lit(2.0 / 3.0) + tol)
}
