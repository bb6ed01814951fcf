//! Pauli-string observables built from the Mermin operator.
//!
//! The Mermin operator for six measurement directions is
//!
//! ```text
//! B = a1·σ ⊗ a2·σ ⊗ a3·σ − a1·σ ⊗ b2·σ ⊗ b3·σ − b1·σ ⊗ a2·σ ⊗ b3·σ − b1·σ ⊗ b2·σ ⊗ a3·σ
//! ```
//!
//! and each named operator `O, O1 … O5` is `2·(P1 ⊗ P2 ⊗ P3)` for a fixed
//! Pauli pattern, reachable from `B` with an appropriate choice of directions.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{expectation, tensor3, CMat, LocalUnitaryTriple, Mat2, Mat8, QuantumState};
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Standard Pauli matrix.
pub fn pauli<T: Real>(axis: Axis) -> Mat2<T> {
    let (o, z, i) = (
        Complex::new(T::one(), T::zero()),
        C::<T>::zero(),
        Complex::new(T::zero(), T::one()),
    );
    CMat(match axis {
        Axis::X => [[z, o], [o, z]],
        Axis::Y => [[z, -i], [i, z]],
        Axis::Z => [[o, z], [z, -o]],
    })
}

/// Unit vector on the Bloch sphere giving a measurement direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> Direction<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let n = x * x + y * y + z * z;
        if !n.is_finite() || (n - T::one()).abs() > T::lit(T::TOLERANCES.direction) {
            return Err(Error::NonUnitDirection {
                x: x.to_f64_lossy(),
                y: y.to_f64_lossy(),
                z: z.to_f64_lossy(),
            });
        }
        Ok(Self { x, y, z })
    }

    pub fn axis(axis: Axis, sign: T) -> Self {
        let (x, y, z) = match axis {
            Axis::X => (sign, T::zero(), T::zero()),
            Axis::Y => (T::zero(), sign, T::zero()),
            Axis::Z => (T::zero(), T::zero(), sign),
        };
        Self { x, y, z }
    }

    pub fn components(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// `n·σ`.
    pub fn dot_sigma(&self) -> Mat2<T> {
        let (sx, sy, sz) = (
            pauli::<T>(Axis::X),
            pauli::<T>(Axis::Y),
            pauli::<T>(Axis::Z),
        );
        sx.scale_re(self.x) + sy.scale_re(self.y) + sz.scale_re(self.z)
    }
}

/// The six measurement directions of a Mermin operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MerminDirections<T> {
    pub a: [Direction<T>; 3],
    pub b: [Direction<T>; 3],
}

/// The named operators `O, O1 … O5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NamedOp {
    O,
    O1,
    O2,
    O3,
    O4,
    O5,
}

impl NamedOp {
    pub const ALL: [NamedOp; 6] = [
        NamedOp::O,
        NamedOp::O1,
        NamedOp::O2,
        NamedOp::O3,
        NamedOp::O4,
        NamedOp::O5,
    ];

    /// The operators the classification decision tree reads.
    pub const CLASSIFIERS: [NamedOp; 4] = [NamedOp::O, NamedOp::O1, NamedOp::O2, NamedOp::O3];

    /// Pauli axes on qubits 1, 2, 3.
    pub fn pattern(self) -> [Axis; 3] {
        use Axis::*;
        match self {
            NamedOp::O => [X, X, X],
            NamedOp::O1 => [X, X, Z],
            NamedOp::O2 => [X, Z, X],
            NamedOp::O3 => [Z, X, X],
            NamedOp::O4 => [Z, Y, Y],
            NamedOp::O5 => [Z, Y, X],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedOp::O => "O",
            NamedOp::O1 => "O1",
            NamedOp::O2 => "O2",
            NamedOp::O3 => "O3",
            NamedOp::O4 => "O4",
            NamedOp::O5 => "O5",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Direction choice that turns the Mermin operator into this operator.
    ///
    /// Every pattern `P1 P2 P3` uses `a = (P1, P2, P3)` and
    /// `b = (−P1, P2, P3)`: the three correction terms then cancel to
    /// `+P1P2P3` each, giving `2·P1P2P3` in total.
    pub fn mermin_directions<T: Real>(self) -> MerminDirections<T> {
        let [p1, p2, p3] = self.pattern();
        let one = T::one();
        MerminDirections {
            a: [
                Direction::axis(p1, one),
                Direction::axis(p2, one),
                Direction::axis(p3, one),
            ],
            b: [
                Direction::axis(p1, -one),
                Direction::axis(p2, one),
                Direction::axis(p3, one),
            ],
        }
    }
}

impl fmt::Display for NamedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedOp::ALL
            .into_iter()
            .find(|op| op.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_owned()))
    }
}

/// Where an observable came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance<T> {
    Named(NamedOp),
    Mermin(Box<MerminDirections<T>>),
    Transported {
        base: Box<Provenance<T>>,
        unitaries: Box<LocalUnitaryTriple<T>>,
    },
}

/// Hermitian 8×8 operator together with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable<T> {
    m: Mat8<T>,
    provenance: Provenance<T>,
}

impl<T: Real> Observable<T> {
    pub fn matrix(&self) -> &Mat8<T> {
        &self.m
    }

    pub fn provenance(&self) -> &Provenance<T> {
        &self.provenance
    }

    /// The named Pauli string this observable measures, if it is one
    /// (transported observables are not).
    pub fn as_named(&self) -> Option<NamedOp> {
        match self.provenance {
            Provenance::Named(op) => Some(op),
            _ => None,
        }
    }

    pub fn expectation<S: QuantumState<T> + ?Sized>(&self, state: &S) -> Result<T> {
        expectation(&self.m, state)
    }
}

/// `2·(P1 ⊗ P2 ⊗ P3)` for the given operator name.
pub fn named<T: Real>(op: NamedOp) -> Observable<T> {
    let [p1, p2, p3] = op.pattern();
    let m = tensor3(&pauli(p1), &pauli(p2), &pauli(p3)).scale_re(T::lit(2.0));
    Observable {
        m,
        provenance: Provenance::Named(op),
    }
}

/// Parses an operator name (`O`, `O1` … `O5`, case-insensitive).
pub fn named_by_str<T: Real>(name: &str) -> Result<Observable<T>> {
    Ok(named(name.parse()?))
}

/// Mermin operator for the directions `a1..a3`, `b1..b3`.
pub fn mermin<T: Real>(dirs: &MerminDirections<T>) -> Result<Observable<T>> {
    for d in dirs.a.iter().chain(dirs.b.iter()) {
        let [x, y, z] = d.components();
        Direction::new(x, y, z)?;
    }
    let a = dirs.a.map(|d| d.dot_sigma());
    let b = dirs.b.map(|d| d.dot_sigma());
    let m = tensor3(&a[0], &a[1], &a[2])
        - tensor3(&a[0], &b[1], &b[2])
        - tensor3(&b[0], &a[1], &b[2])
        - tensor3(&b[0], &b[1], &a[2]);
    Ok(Observable {
        m,
        provenance: Provenance::Mermin(Box::new(*dirs)),
    })
}

/// Re-expresses `obs` for states that have not yet been rotated by `u`:
/// returns `U†·obs·U`, so that measuring the result on `s` gives the same
/// value as measuring `obs` on `u·s`.
pub fn transport<T: Real>(obs: &Observable<T>, u: &LocalUnitaryTriple<T>) -> Observable<T> {
    let full = u.full();
    let m = full.adjoint() * obs.m * full;
    // Re-symmetrize so rounding never breaks the Hermiticity check.
    let half = T::lit(0.5);
    let m = Mat8::from_fn(|i, j| (m.0[i][j] + m.0[j][i].conj()) * half);
    Observable {
        m,
        provenance: Provenance::Transported {
            base: Box::new(obs.provenance.clone()),
            unitaries: Box::new(*u),
        },
    }
}
