use tritangle::canonical::{canonical_state, canonicalize};
use tritangle::classify::{classify, classify_canonical};
use tritangle::mixed::{ghz_state, sweep, uniform_grid, w_state, Figure};
use tritangle::random::{haar_state, rng};
use tritangle::teleport::fidelities;
use tritangle::{CanonicalParams32, PureState32, SloccClass, Tolerances};

const TOL: f32 = Tolerances::SINGLE.classification as f32;

#[test]
fn representatives_classify_in_f32() {
    assert_eq!(
        classify(&ghz_state::<f32>(), TOL).unwrap().verdict,
        SloccClass::GHZ
    );
    assert_eq!(
        classify(&w_state::<f32>(), TOL).unwrap().verdict,
        SloccClass::W
    );
    let h = std::f32::consts::FRAC_1_SQRT_2;
    let bisep = canonical_state(&CanonicalParams32::new([0.0, h, 0.0, 0.0, h], 0.0).unwrap());
    assert_eq!(
        classify_canonical(&bisep, TOL).unwrap().verdict,
        SloccClass::Bisep1_23
    );
    let zero = PureState32::basis_state(0);
    assert_eq!(classify(&zero, TOL).unwrap().verdict, SloccClass::Separable);
}

#[test]
fn f32_canonical_form_tracks_f64() {
    let mut r = rng(42);
    for _ in 0..50 {
        let s64: tritangle::PureState = haar_state(&mut r);
        let amps = s64
            .amps()
            .map(|z| num_complex::Complex::new(z.re as f32, z.im as f32));
        let s32 = PureState32::normalized(amps, Default::default()).unwrap();
        let (a, b) = (canonicalize(&s64).unwrap(), canonicalize(&s32).unwrap());
        let tau = |l: [f64; 5]| 4.0 * (l[0] * l[4]).powi(2);
        let l32 = b.params.lambda().map(f64::from);
        assert!((tau(a.params.lambda()) - tau(l32)).abs() < 1e-4);
        assert!(b.residual < 1e-4);
    }
}

#[test]
fn f32_fidelities_and_sweep() {
    let f = fidelities(&ghz_state::<f32>()).unwrap();
    assert!(f.as_array().iter().all(|x| (x - 1.0).abs() < 1e-5));
    let rows = sweep(Figure::GhzWMixture, &uniform_grid::<f32>(11), None).unwrap();
    assert!((rows[10].observable_measure - 1.0).abs() < 1e-5);
}
