//! Three-qubit entanglement classification from Pauli-string observables.
//!
//! A pure three-qubit state is reduced by local unitaries to a five-term
//! canonical form; expectation values of a handful of scaled Pauli strings
//! (`O = 2·XXX`, `O1 = 2·XXZ`, `O2 = 2·XZX`, `O3 = 2·ZXX`) then decide which
//! of the six SLOCC classes it belongs to. The same observables give the
//! three-tangle, the partial tangles and hence teleportation fidelities, and
//! are compared against a purity-based tangle lower bound on mixed states.
//!
//! All numerics are generic over [`Real`] (`f64` or `f32`); the aliases at
//! the crate root fix the reference `f64` precision.

pub mod canonical;
pub mod classify;
pub mod error;
pub mod mixed;
pub mod observables;
pub mod qcore;
pub mod random;
pub mod scalar;
pub mod shots;
pub mod teleport;
pub mod tolerance;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tolerance::Tolerances;

pub use classify::SloccClass;
pub use observables::{Axis, NamedOp};

pub type Complex64 = num_complex::Complex<f64>;

pub type PureState = qcore::PureState<f64>;
pub type DensityMatrix = qcore::DensityMatrix<f64>;
pub type LocalUnitaryTriple = qcore::LocalUnitaryTriple<f64>;
pub type Mat2 = qcore::Mat2<f64>;
pub type Mat4 = qcore::Mat4<f64>;
pub type Mat8 = qcore::Mat8<f64>;
pub type Observable = observables::Observable<f64>;
pub type Direction = observables::Direction<f64>;
pub type CanonicalParams = canonical::CanonicalParams<f64>;
pub type CanonicalizationResult = canonical::CanonicalizationResult<f64>;
pub type ClassificationReport = classify::ClassificationReport<f64>;
pub type PartialTangles = teleport::PartialTangles<f64>;
pub type Fidelities = teleport::Fidelities<f64>;
pub type SweepRow = mixed::SweepRow<f64>;
pub type ShotEstimate = shots::ShotEstimate<f64>;

pub type PureState32 = qcore::PureState<f32>;
pub type DensityMatrix32 = qcore::DensityMatrix<f32>;
pub type CanonicalParams32 = canonical::CanonicalParams<f32>;
pub type ClassificationReport32 = classify::ClassificationReport<f32>;
