use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("state has (numerically) zero norm and cannot be canonicalized")]
    DegenerateState,
    #[error("local factor on qubit {qubit} is not unitary (deviation {deviation:.3e})")]
    NonUnitary { qubit: usize, deviation: f64 },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),
    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,
    #[error("qubit index {0} is outside 1..=3")]
    BadQubit(usize),
    #[error("invalid canonical parameters: {0}")]
    InvalidParams(String),
    #[error("state is not in canonical form (residual {residual:.3e})")]
    NotCanonical { residual: f64 },
    #[error("direction ({x}, {y}, {z}) is not a unit vector")]
    NonUnitDirection { x: f64, y: f64, z: f64 },
    #[error("unknown operator name `{0}`")]
    UnknownName(String),
    #[error("expectation signature {0} matches no biseparable class")]
    Ambiguous(String),
    #[error("transported expectation of {name} differs from canonical value by {deviation:.3e}")]
    TransportMismatch { name: &'static str, deviation: f64 },
    #[error("parameter {name} = {value} outside [0, 1]")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("observable is not one of the named Pauli strings")]
    UnsupportedObservable,
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("sampling gave up after {0} draws without hitting the requested class")]
    GenerationFault(usize),
    #[error("unknown class name `{0}`")]
    UnknownClass(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
