//! Six-class SLOCC verdicts from four expectation values.
//!
//! In the canonical basis `⟨O⟩ = 4λ0λ4`, `⟨O1⟩ = 4λ0λ3`, `⟨O2⟩ = 4λ0λ2` and
//! `⟨O3⟩ = −4(λ2λ3 + λ1λ4 cos θ)`. The three-tangle is `(⟨O⟩/2)²`, and with
//! `P = ⟨O1⟩⟨O2⟩` and `Q = ⟨O1⟩ + ⟨O2⟩ + ⟨O3⟩` the decision tree reads
//!
//! | condition                       | verdict                         |
//! |---------------------------------|---------------------------------|
//! | `τ ≠ 0`                         | GHZ                             |
//! | `τ = 0`, `P ≠ 0`                | W                               |
//! | `τ = P = 0`, `Q ≠ 0`            | biseparable, by which term of Q survives |
//! | `τ = P = Q = 0`                 | separable                       |
//!
//! [`oracle_classify`] decides the same question from reduced-state ranks and
//! concurrences without touching the canonical form.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::canonical::{canonical_state, canonicalize, verify_canonical, CanonicalizationResult};
use crate::error::{Error, Result};
use crate::mixed::{concurrence_unchecked, ghz_state, w_state};
use crate::observables::{named, transport, NamedOp};
use crate::qcore::{
    hermitian_eigenvalues, reduce_to_pair, reduce_to_qubit, tensor3, LocalUnitaryTriple, PureState,
};
use crate::random::{conditioned_operator, haar_vector, rng};
use crate::scalar::{Real, C};

/// The six SLOCC classes of three-qubit pure states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SloccClass {
    Separable,
    /// Qubit 1 factors off; qubits 2 and 3 are entangled.
    Bisep1_23,
    /// Qubit 3 factors off.
    Bisep12_3,
    /// Qubit 2 factors off.
    Bisep13_2,
    W,
    GHZ,
}

impl SloccClass {
    pub const ALL: [SloccClass; 6] = [
        SloccClass::Separable,
        SloccClass::Bisep1_23,
        SloccClass::Bisep12_3,
        SloccClass::Bisep13_2,
        SloccClass::W,
        SloccClass::GHZ,
    ];

    /// Short lowercase identifier, accepted back by `FromStr`.
    pub fn slug(self) -> &'static str {
        match self {
            SloccClass::Separable => "separable",
            SloccClass::Bisep1_23 => "bisep1_23",
            SloccClass::Bisep12_3 => "bisep12_3",
            SloccClass::Bisep13_2 => "bisep13_2",
            SloccClass::W => "w",
            SloccClass::GHZ => "ghz",
        }
    }

    pub fn is_biseparable(self) -> bool {
        matches!(
            self,
            SloccClass::Bisep1_23 | SloccClass::Bisep12_3 | SloccClass::Bisep13_2
        )
    }

    pub fn is_genuinely_entangled(self) -> bool {
        matches!(self, SloccClass::W | SloccClass::GHZ)
    }
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SloccClass::Separable => "separable",
            SloccClass::Bisep1_23 => "biseparable 1|23",
            SloccClass::Bisep12_3 => "biseparable 12|3",
            SloccClass::Bisep13_2 => "biseparable 13|2",
            SloccClass::W => "W",
            SloccClass::GHZ => "GHZ",
        })
    }
}

impl FromStr for SloccClass {
    type Err = Error;

    /// Accepts the slug, the display name, or a bare bipartition like `1|23`.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("biseparable").unwrap_or(&key).trim();
        Ok(match key {
            "separable" => SloccClass::Separable,
            "bisep1_23" | "1|23" => SloccClass::Bisep1_23,
            "bisep12_3" | "12|3" => SloccClass::Bisep12_3,
            "bisep13_2" | "13|2" => SloccClass::Bisep13_2,
            "w" => SloccClass::W,
            "ghz" => SloccClass::GHZ,
            _ => return Err(Error::UnknownClass(s.to_owned())),
        })
    }
}

/// `⟨O⟩, ⟨O1⟩, ⟨O2⟩, ⟨O3⟩` of one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expectations<T> {
    #[serde(rename = "O")]
    pub o: T,
    #[serde(rename = "O1")]
    pub o1: T,
    #[serde(rename = "O2")]
    pub o2: T,
    #[serde(rename = "O3")]
    pub o3: T,
}

impl<T: Real> Expectations<T> {
    pub fn get(&self, op: NamedOp) -> Option<T> {
        match op {
            NamedOp::O => Some(self.o),
            NamedOp::O1 => Some(self.o1),
            NamedOp::O2 => Some(self.o2),
            NamedOp::O3 => Some(self.o3),
            _ => None,
        }
    }

    fn max_abs_diff(&self, other: &Self) -> T {
        (self.o - other.o)
            .abs()
            .max((self.o1 - other.o1).abs())
            .max((self.o2 - other.o2).abs())
            .max((self.o3 - other.o3).abs())
    }
}

/// Which pair of expectations multiplies into `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PDefinition {
    #[default]
    O1O2,
    O2O3,
    O1O3,
}

impl PDefinition {
    fn eval<T: Real>(self, e: &Expectations<T>) -> T {
        match self {
            PDefinition::O1O2 => e.o1 * e.o2,
            PDefinition::O2O3 => e.o2 * e.o3,
            PDefinition::O1O3 => e.o1 * e.o3,
        }
    }
}

/// Everything the decision tree looked at.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport<T> {
    pub verdict: SloccClass,
    pub tangle: T,
    /// Canonical-basis expectations.
    pub expectations: Expectations<T>,
    #[serde(rename = "P")]
    pub p: T,
    #[serde(rename = "Q")]
    pub q: T,
    pub tolerance_used: T,
    /// Expectations of the transported observables on the original state;
    /// present when the report came from [`classify`].
    pub transported: Option<Expectations<T>>,
    pub canonical: Option<CanonicalizationResult<T>>,
}

/// Expectations of `O`, `O1`, `O2`, `O3` with no canonical-form check.
pub fn expectations<T: Real>(s: &PureState<T>) -> Result<Expectations<T>> {
    let ev = |op| named::<T>(op).expectation(s);
    Ok(Expectations {
        o: ev(NamedOp::O)?,
        o1: ev(NamedOp::O1)?,
        o2: ev(NamedOp::O2)?,
        o3: ev(NamedOp::O3)?,
    })
}

fn require_canonical<T: Real>(s: &PureState<T>) -> Result<()> {
    let check = verify_canonical(s);
    if check.is_canonical {
        Ok(())
    } else {
        Err(Error::NotCanonical {
            residual: check.residual.to_f64_lossy(),
        })
    }
}

/// `(⟨O⟩/2)²` for a state already in canonical form.
pub fn tangle_from_o<T: Real>(s: &PureState<T>) -> Result<T> {
    require_canonical(s)?;
    let o = named::<T>(NamedOp::O).expectation(s)?;
    Ok((o / T::lit(2.0)).powi(2))
}

/// `(P, Q) = (⟨O1⟩⟨O2⟩, ⟨O1⟩ + ⟨O2⟩ + ⟨O3⟩)` for a canonical state.
pub fn compute_pq<T: Real>(s: &PureState<T>) -> Result<(T, T)> {
    require_canonical(s)?;
    let e = expectations(s)?;
    Ok((e.o1 * e.o2, e.o1 + e.o2 + e.o3))
}

/// Runs the decision tree on a canonical state.
pub fn classify_canonical<T: Real>(s: &PureState<T>, tol: T) -> Result<ClassificationReport<T>> {
    classify_canonical_with(s, tol, PDefinition::default())
}

/// [`classify_canonical`] with an alternative factor pair for `P`.
pub fn classify_canonical_with<T: Real>(
    s: &PureState<T>,
    tol: T,
    pdef: PDefinition,
) -> Result<ClassificationReport<T>> {
    require_canonical(s)?;
    let e = expectations(s)?;
    let tangle = (e.o / T::lit(2.0)).powi(2);
    let p = pdef.eval(&e);
    let q = e.o1 + e.o2 + e.o3;
    let verdict = decide(&e, tangle, p, q, tol)?;
    Ok(ClassificationReport {
        verdict,
        tangle,
        expectations: e,
        p,
        q,
        tolerance_used: tol,
        transported: None,
        canonical: None,
    })
}

fn decide<T: Real>(e: &Expectations<T>, tangle: T, p: T, q: T, tol: T) -> Result<SloccClass> {
    let nz = |x: T| x.abs() > tol;
    if nz(tangle) {
        return Ok(SloccClass::GHZ);
    }
    if nz(p) {
        return Ok(SloccClass::W);
    }
    if !nz(q) {
        return Ok(SloccClass::Separable);
    }
    match (nz(e.o1), nz(e.o2), nz(e.o3)) {
        (false, false, true) => Ok(SloccClass::Bisep1_23),
        (true, false, false) => Ok(SloccClass::Bisep12_3),
        (false, true, false) => Ok(SloccClass::Bisep13_2),
        pattern => Err(Error::Ambiguous(format!(
            "Q = {:e} but nonzero pattern (O1, O2, O3) = {:?} fits no biseparable class",
            q.to_f64_lossy(),
            pattern
        ))),
    }
}

/// Canonicalizes, classifies, and cross-checks the transported observables on
/// the original state.
pub fn classify<T: Real>(s: &PureState<T>, tol: T) -> Result<ClassificationReport<T>> {
    classify_with(s, tol, PDefinition::default())
}

pub fn classify_with<T: Real>(
    s: &PureState<T>,
    tol: T,
    pdef: PDefinition,
) -> Result<ClassificationReport<T>> {
    let canon = canonicalize(s)?;
    let cs = canonical_state(&canon.params);
    let mut report = classify_canonical_with(&cs, tol, pdef)?;
    let tr = transported_expectations(s, &canon.unitaries)?;
    let deviation = tr.max_abs_diff(&report.expectations);
    if deviation > T::lit(T::TOLERANCES.transport_agreement) {
        return Err(Error::TransportMismatch {
            name: "classifier expectations",
            deviation: deviation.to_f64_lossy(),
        });
    }
    report.transported = Some(tr);
    report.canonical = Some(canon);
    Ok(report)
}

/// Expectations of `U†·Oₖ·U` on `s`.
pub fn transported_expectations<T: Real>(
    s: &PureState<T>,
    u: &LocalUnitaryTriple<T>,
) -> Result<Expectations<T>> {
    let ev = |op| transport(&named::<T>(op), u).expectation(s);
    Ok(Expectations {
        o: ev(NamedOp::O)?,
        o1: ev(NamedOp::O1)?,
        o2: ev(NamedOp::O2)?,
        o3: ev(NamedOp::O3)?,
    })
}

/// Number of eigenvalues of each single-qubit marginal above the rank cut-off.
pub fn local_ranks<T: Real>(s: &PureState<T>) -> [usize; 3] {
    let rho = s.projector();
    let cut = T::lit(T::TOLERANCES.rank);
    std::array::from_fn(|k| {
        hermitian_eigenvalues(&reduce_to_qubit(&rho, k + 1))
            .iter()
            .filter(|&&x| x > cut)
            .count()
    })
}

/// `C²_{1(23)} − C²_12 − C²_13` with `C²_{1(23)} = 2(1 − Tr ρ_1²)` and
/// Wootters pair concurrences.
pub fn oracle_tangle<T: Real>(s: &PureState<T>) -> T {
    let rho = s.projector();
    let c_a_bc = T::lit(2.0) * (T::one() - reduce_to_qubit(&rho, 1).frobenius_sq());
    let c_ab = concurrence_unchecked(&reduce_to_pair(&rho, 1, 2));
    let c_ac = concurrence_unchecked(&reduce_to_pair(&rho, 1, 3));
    c_a_bc - c_ab * c_ab - c_ac * c_ac
}

/// Class from local ranks and the concurrence-based tangle.
pub fn oracle_classify<T: Real>(s: &PureState<T>) -> SloccClass {
    let ranks = local_ranks(s);
    let pure_qubits: Vec<usize> = (0..3).filter(|&k| ranks[k] <= 1).collect();
    match pure_qubits.as_slice() {
        [] => {
            if oracle_tangle(s) > T::lit(T::TOLERANCES.rank) {
                SloccClass::GHZ
            } else {
                SloccClass::W
            }
        }
        [0] => SloccClass::Bisep1_23,
        [1] => SloccClass::Bisep13_2,
        [2] => SloccClass::Bisep12_3,
        _ => SloccClass::Separable,
    }
}

/// Draws attempted per call of [`sample_class`] before giving up.
pub const SAMPLE_RETRIES: usize = 100;
/// Smallest singular-value ratio of the local operators used by
/// [`sample_class`] for the GHZ and W classes.
pub const SAMPLE_CONDITIONING: f64 = 0.25;

/// Random state whose [`oracle_classify`] verdict is `class`.
pub fn sample_class<T: Real>(class: SloccClass, seed: u64) -> Result<PureState<T>> {
    let mut r = rng(seed);
    for _ in 0..SAMPLE_RETRIES {
        let s = draw(class, &mut r);
        if let Ok(s) = s {
            if oracle_classify(&s) == class {
                return Ok(s);
            }
        }
    }
    Err(Error::GenerationFault(SAMPLE_RETRIES))
}

fn draw<T: Real, R: Rng + ?Sized>(class: SloccClass, r: &mut R) -> Result<PureState<T>> {
    let q = |r: &mut R| haar_vector::<T, R, 2>(r);
    let amps: [C<T>; 8] = match class {
        SloccClass::Separable => {
            let (a, b, c) = (q(r), q(r), q(r));
            std::array::from_fn(|i| a[(i >> 2) & 1] * b[(i >> 1) & 1] * c[i & 1])
        }
        SloccClass::Bisep1_23 => {
            let (a, pair) = (q(r), haar_vector::<T, R, 4>(r));
            std::array::from_fn(|i| a[i >> 2] * pair[i & 3])
        }
        SloccClass::Bisep12_3 => {
            let (pair, c) = (haar_vector::<T, R, 4>(r), q(r));
            std::array::from_fn(|i| pair[i >> 1] * c[i & 1])
        }
        SloccClass::Bisep13_2 => {
            let (pair, b) = (haar_vector::<T, R, 4>(r), q(r));
            std::array::from_fn(|i| pair[((i >> 2) << 1) | (i & 1)] * b[(i >> 1) & 1])
        }
        SloccClass::W | SloccClass::GHZ => {
            let base = if class == SloccClass::W {
                w_state()
            } else {
                ghz_state()
            };
            let ops = [(); 3].map(|_| conditioned_operator::<T, R>(r, SAMPLE_CONDITIONING));
            tensor3(&ops[0], &ops[1], &ops[2]).mul_vec(base.amps())
        }
    };
    PureState::normalized(amps, Default::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::CanonicalParams;
    use crate::scalar::c;

    fn canon(l: [f64; 5], theta: f64) -> PureState<f64> {
        canonical_state(&CanonicalParams::new(l, theta).unwrap())
    }

    fn st(entries: &[(usize, C<f64>)]) -> PureState<f64> {
        let mut a = [C::<f64>::default(); 8];
        for &(i, z) in entries {
            a[i] = z;
        }
        PureState::normalized(a, Default::default()).unwrap()
    }

    const R2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn r3() -> f64 {
        1.0 / 3f64.sqrt()
    }

    #[test]
    fn tangle_examples() {
        assert!((tangle_from_o(&canon([R2, 0.0, 0.0, 0.0, R2], 0.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!(
            tangle_from_o(&canon([r3(), 0.0, r3(), r3(), 0.0], 0.0))
                .unwrap()
                .abs()
                < 1e-12
        );
        assert_eq!(
            tangle_from_o(&PureState::<f64>::basis_state(0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn pq_examples() {
        let (p, q) = compute_pq(&canon([r3(), 0.0, r3(), r3(), 0.0], 0.0)).unwrap();
        assert!((p - 16.0 / 9.0).abs() < 1e-12);
        assert!((q - 4.0 / 3.0).abs() < 1e-12);
        let (p, q) = compute_pq(&canon([0.0, R2, 0.0, 0.0, R2], 0.0)).unwrap();
        assert!(p.abs() < 1e-12);
        assert!((q + 2.0).abs() < 1e-12);
        assert_eq!(
            compute_pq(&PureState::<f64>::basis_state(0)).unwrap(),
            (0.0, 0.0)
        );
    }

    #[test]
    fn non_canonical_input_is_rejected() {
        let s = st(&[(1, c(1.0, 0.0)), (6, c(1.0, 0.0))]);
        assert!(matches!(tangle_from_o(&s), Err(Error::NotCanonical { .. })));
        assert!(matches!(
            classify_canonical(&s, 1e-8),
            Err(Error::NotCanonical { .. })
        ));
    }

    #[test]
    fn canonical_examples() {
        let tol = 1e-8;
        for theta in [0.0, 1.0, std::f64::consts::PI] {
            let s = canon([r3(), r3(), 0.0, 0.0, r3()], theta);
            assert_eq!(
                classify_canonical(&s, tol).unwrap().verdict,
                SloccClass::GHZ
            );
        }
        let v = |s| classify_canonical(&s, tol).unwrap().verdict;
        assert_eq!(
            v(canon([0.0, R2, 0.0, 0.0, R2], 0.0)),
            SloccClass::Bisep1_23
        );
        assert_eq!(v(canon([r3(), 0.0, r3(), r3(), 0.0], 0.0)), SloccClass::W);
        assert_eq!(v(PureState::basis_state(0)), SloccClass::Separable);
        assert_eq!(
            v(canon([R2, 0.0, 0.0, R2, 0.0], 0.0)),
            SloccClass::Bisep12_3
        );
        assert_eq!(
            v(canon([R2, 0.0, R2, 0.0, 0.0], 0.0)),
            SloccClass::Bisep13_2
        );
    }

    #[test]
    fn w_state_with_vanishing_q_is_still_w() {
        let l1 = (1.0f64 - 0.04 - 0.16 - 0.16).sqrt();
        let s = canon([0.2, l1, 0.4, 0.4, 0.0], 0.0);
        let r = classify_canonical(&s, 1e-8).unwrap();
        assert!(r.q.abs() < 1e-12);
        assert_eq!(r.verdict, SloccClass::W);
    }

    #[test]
    fn classify_examples() {
        let h = 0.5;
        let psi = st(&[
            (0, c(h, 0.0)),
            (3, c(h, 0.0)),
            (4, c(h, 0.0)),
            (7, c(h, 0.0)),
        ]);
        let r = classify(&psi, 1e-8).unwrap();
        assert_eq!(r.verdict, SloccClass::Bisep1_23);
        let t = r.transported.unwrap();
        assert!((t.o3 + 2.0).abs() < 1e-12);
        assert!(t.o.abs() < 1e-12 && t.o1.abs() < 1e-12 && t.o2.abs() < 1e-12);

        let theta = 0.7;
        let phi = st(&[
            (0, C::from_polar(1.0, theta)),
            (3, c(1.0, 0.0)),
            (4, c(-1.0, 0.0)),
        ]);
        let r = classify(&phi, 1e-8).unwrap();
        assert_eq!(r.verdict, SloccClass::GHZ);
        assert!((r.transported.unwrap().o - 4.0 / 3.0).abs() < 1e-10);

        let pair = st(&[(0, c(1.0, 0.0)), (3, c(1.0, 0.0))]);
        assert_eq!(
            classify(&pair, 1e-8).unwrap().verdict,
            SloccClass::Bisep1_23
        );
        assert_eq!(oracle_classify(&pair), SloccClass::Bisep1_23);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_classify(&ghz_state::<f64>()), SloccClass::GHZ);
        assert_eq!(oracle_classify(&w_state::<f64>()), SloccClass::W);
        assert!((oracle_tangle(&ghz_state::<f64>()) - 1.0).abs() < 1e-12);
        assert!(oracle_tangle(&w_state::<f64>()).abs() < 1e-12);
        assert_eq!(
            oracle_classify(&PureState::<f64>::basis_state(5)),
            SloccClass::Separable
        );
    }

    #[test]
    fn sampled_states_have_requested_class() {
        for class in SloccClass::ALL {
            for seed in [0, 7, 42] {
                let s = sample_class::<f64>(class, seed).unwrap();
                assert_eq!(oracle_classify(&s), class);
                assert_eq!(s, sample_class::<f64>(class, seed).unwrap());
            }
        }
        let sep = sample_class::<f64>(SloccClass::Separable, 3).unwrap();
        assert_eq!(local_ranks(&sep), [1, 1, 1]);
    }

    #[test]
    fn class_names_round_trip() {
        for class in SloccClass::ALL {
            assert_eq!(class.slug().parse::<SloccClass>().unwrap(), class);
            assert_eq!(class.to_string().parse::<SloccClass>().unwrap(), class);
        }
        assert!("tripartite".parse::<SloccClass>().is_err());
    }
}
