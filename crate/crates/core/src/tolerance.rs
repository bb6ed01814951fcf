//! Numerical thresholds shared by every module.
//!
//! All verdicts downstream (unitarity checks, canonical-form validation,
//! zero tests in the classifier) read their thresholds from one record so
//! they can be audited and tuned together.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// `U·U† = I` entrywise.
    pub unitarity: f64,
    /// `|Σ|aᵢ|² − 1|` for pure states and `|Tr ρ − 1|` for density matrices.
    pub normalization: f64,
    /// Entrywise `|Mᵢⱼ − conj(Mⱼᵢ)|`.
    pub hermiticity: f64,
    /// Most negative eigenvalue accepted in a density matrix.
    pub positivity: f64,
    /// Largest imaginary residue of an expectation value that is silently dropped.
    pub imaginary_residue: f64,
    /// `|x² + y² + z² − 1|` for measurement directions.
    pub direction: f64,
    /// Reconstruction error accepted for a canonical-form reduction.
    pub canonical_residual: f64,
    /// Canonical amplitudes below this are set to exactly zero.
    pub clamp: f64,
    /// Default zero threshold of the classification decision tree.
    pub classification: f64,
    /// Eigenvalue above which a reduced state counts towards the rank.
    pub rank: f64,
    /// Agreement required between transported and canonical-basis expectations.
    pub transport_agreement: f64,
}

impl Tolerances {
    pub const DOUBLE: Self = Self {
        unitarity: 1e-10,
        normalization: 1e-12,
        hermiticity: 1e-12,
        positivity: 1e-10,
        imaginary_residue: 1e-10,
        direction: 1e-12,
        canonical_residual: 1e-9,
        clamp: 1e-10,
        classification: 1e-8,
        rank: 1e-9,
        transport_agreement: 1e-9,
    };

    pub const SINGLE: Self = Self {
        unitarity: 1e-5,
        normalization: 1e-5,
        hermiticity: 1e-5,
        positivity: 1e-5,
        imaginary_residue: 1e-5,
        direction: 1e-5,
        canonical_residual: 1e-4,
        clamp: 1e-5,
        classification: 1e-3,
        rank: 1e-4,
        transport_agreement: 1e-4,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DOUBLE
    }
}
