use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use tritangle::canonical::{canonical_state, canonicalize as canonical_form};
use tritangle::classify::{classify as classify_state, sample_class};
use tritangle::mixed::{sweep as run_sweep, uniform_grid, Figure};
use tritangle::shots::classify_with_shots;
use tritangle::teleport::{partial_tangles, trichotomy_of, Fidelities};
use tritangle::{CanonicalizationResult, LocalUnitaryTriple, Mat2, PureState, SloccClass};

use crate::error::CliError;
use crate::statefile::{self, full};

fn read_pure(path: &Path) -> Result<PureState, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let file = statefile::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })?;
    match file.pure() {
        Some(s) => s.map_err(CliError::InvalidState),
        None => {
            file.density().unwrap().map_err(CliError::InvalidState)?;
            Err(CliError::NotPure(path.to_owned()))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn complex(z: Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn matrix_text(m: &Mat2) -> String {
    let row = |r: &[Complex64; 2]| format!("[{}, {}]", complex(r[0]), complex(r[1]));
    format!("[{}, {}]", row(&m.0[0]), row(&m.0[1]))
}

fn matrix_json(m: &Mat2) -> Value {
    json!(m.0.map(|r| r.map(|z| [z.re, z.im])))
}

fn unitaries_json(u: &LocalUnitaryTriple) -> Value {
    Value::Array(u.factors().iter().map(matrix_json).collect())
}

fn canonical_json(c: &CanonicalizationResult) -> Value {
    json!({
        "lambda": c.params.lambda(),
        "theta": c.params.theta(),
        "residual": c.residual,
        "unitaries": unitaries_json(&c.unitaries),
    })
}

fn canonical_lines(out: &mut String, c: &CanonicalizationResult) {
    let l = c.params.lambda().map(|x| x.to_string()).join(", ");
    writeln!(out, "lambda = [{l}]").unwrap();
    writeln!(out, "theta = {}", c.params.theta()).unwrap();
    writeln!(out, "residual = {:e}", c.residual).unwrap();
    for (k, m) in c.unitaries.factors().iter().enumerate() {
        writeln!(out, "U{} = {}", k + 1, matrix_text(m)).unwrap();
    }
}

pub fn classify(path: &Path, tol: f64, json: bool) -> Result<String, CliError> {
    let s = read_pure(path)?;
    let r = classify_state(&s, tol)?;
    let canon = r
        .canonical
        .as_ref()
        .expect("classify attaches the canonical form");
    let e = r.expectations;
    if json {
        return Ok(json_text(&json!({
            "class": r.verdict.slug(),
            "tangle": r.tangle,
            "expectations": e,
            "P": r.p,
            "Q": r.q,
            "tolerance": r.tolerance_used,
            "canonical": canonical_json(canon),
        })));
    }
    let mut out = String::new();
    writeln!(out, "class: {}", r.verdict).unwrap();
    writeln!(out, "tangle = {}", r.tangle).unwrap();
    for (name, v) in [("O", e.o), ("O1", e.o1), ("O2", e.o2), ("O3", e.o3)] {
        writeln!(out, "⟨{name}⟩ = {v}").unwrap();
    }
    writeln!(out, "P = {}", r.p).unwrap();
    writeln!(out, "Q = {}", r.q).unwrap();
    writeln!(out, "tolerance = {:e}", r.tolerance_used).unwrap();
    canonical_lines(&mut out, canon);
    Ok(out)
}

pub fn canonicalize(path: &Path, dest: Option<&Path>, json: bool) -> Result<String, CliError> {
    let s = read_pure(path)?;
    let c = canonical_form(&s)?;
    if let Some(dest) = dest {
        write_file(dest, &statefile::write_pure(&canonical_state(&c.params)))?;
    }
    if json {
        return Ok(json_text(&canonical_json(&c)));
    }
    let mut out = String::new();
    canonical_lines(&mut out, &c);
    Ok(out)
}

pub fn fidelity(path: &Path, tol: f64, json: bool) -> Result<String, CliError> {
    let s = read_pure(path)?;
    let t = partial_tangles(&s)?;
    let f = Fidelities::from_tangles(&t);
    let verdict = trichotomy_of(&t, tol);
    if json {
        return Ok(json_text(&json!({
            "tau12": t.t12,
            "tau23": t.t23,
            "tau31": t.t31,
            "F1": f.f1,
            "F2": f.f2,
            "F3": f.f3,
            "singlet_fractions": f.singlet_fractions,
            "trichotomy": verdict.to_string(),
            "tolerance": tol,
        })));
    }
    let mut out = String::new();
    writeln!(out, "tau12 = {}", t.t12).unwrap();
    writeln!(out, "tau23 = {}", t.t23).unwrap();
    writeln!(out, "tau31 = {}", t.t31).unwrap();
    for (k, (fk, sk)) in f.as_array().iter().zip(f.singlet_fractions).enumerate() {
        writeln!(out, "F{} = {fk}  (singlet fraction {sk})", k + 1).unwrap();
    }
    writeln!(out, "trichotomy: {verdict}").unwrap();
    Ok(out)
}

pub const CSV_HEADER: &str = "p,observable_measure,lower_bound,lower_bound_clamped";

pub fn sweep(
    figure: u32,
    m: Option<f64>,
    grid_points: usize,
    dest: Option<&Path>,
) -> Result<String, CliError> {
    let fig = Figure::from_number(figure)
        .ok_or_else(|| CliError::Usage(format!("--figure must be 1 or 2, not {figure}")))?;
    match (fig, m) {
        (Figure::NoisyDamping, None) => return Err(CliError::Usage("--figure 2 needs --m".into())),
        (Figure::GhzWMixture, Some(_)) => {
            return Err(CliError::Usage("--m only applies to --figure 2".into()))
        }
        (_, Some(m)) if !(0.0..=1.0).contains(&m) => {
            return Err(CliError::Usage(format!("--m must lie in [0, 1], not {m}")))
        }
        _ => {}
    }
    if grid_points < 2 {
        return Err(CliError::Usage("--grid-points must be at least 2".into()));
    }
    let rows = run_sweep(fig, &uniform_grid::<f64>(grid_points), m)?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &rows {
        writeln!(
            csv,
            "{},{},{},{}",
            full(r.p),
            full(r.observable_measure),
            full(r.lower_bound),
            full(r.lower_bound_clamped())
        )
        .unwrap();
    }
    let (gap, at) = rows
        .iter()
        .map(|r| ((r.observable_measure - r.lower_bound).abs(), r.p))
        .fold((0.0, 0.0), |best, x| if x.0 > best.0 { x } else { best });
    let summary = format!(
        "figure {figure}: {} points, max |observable_measure - lower_bound| = {gap:.6e} at p = {at} (⟨O⟩ taken in the computational basis)\n",
        rows.len()
    );
    match dest {
        Some(dest) => {
            write_file(dest, &csv)?;
            Ok(summary)
        }
        None => {
            eprint!("{summary}");
            Ok(csv)
        }
    }
}

pub fn shots(path: &Path, n: u64, seed: u64, k_sigma: f64, json: bool) -> Result<String, CliError> {
    let s = read_pure(path)?;
    let canon = canonical_form(&s)?;
    let r = classify_with_shots(&s, n, seed, k_sigma, Some(&canon.unitaries))?;
    if json {
        let estimates: Vec<Value> = r
            .estimates
            .iter()
            .map(|e| {
                json!({
                    "observable": e.observable,
                    "mean": e.mean,
                    "stderr": e.stderr,
                    "statistic": finite_or_null(e.statistic()),
                    "marginal": r.marginal.contains(&e.observable),
                })
            })
            .collect();
        return Ok(json_text(&json!({
            "class": r.verdict.slug(),
            "shots": n,
            "seed": seed,
            "k_sigma": k_sigma,
            "estimates": estimates,
            "Q": r.q,
            "Q_stderr": r.q_stderr,
            "Q_marginal": r.q_marginal,
        })));
    }
    let mut out = String::new();
    for e in &r.estimates {
        let flag = if r.marginal.contains(&e.observable) {
            "  marginal"
        } else {
            ""
        };
        writeln!(
            out,
            "⟨{}⟩ = {} ± {}  (z = {}){flag}",
            e.observable.name(),
            e.mean,
            e.stderr,
            e.statistic()
        )
        .unwrap();
    }
    let flag = if r.q_marginal { "  marginal" } else { "" };
    writeln!(out, "Q = {} ± {}{flag}", r.q, r.q_stderr).unwrap();
    writeln!(out, "shots = {n}, seed = {seed}, k_sigma = {k_sigma}").unwrap();
    writeln!(out, "class: {}", r.verdict).unwrap();
    if r.is_marginal() {
        writeln!(out, "warning: a statistic fell between k and 2k standard errors; more shots would firm up the verdict").unwrap();
    }
    Ok(out)
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn random(class: SloccClass, seed: u64, dest: Option<&Path>) -> Result<String, CliError> {
    let s: PureState = sample_class(class, seed)?;
    let mut text = format!("# random {} state, seed {seed}\n", class.slug());
    text.push_str(&statefile::write_pure(&s));
    match dest {
        Some(dest) => {
            write_file(dest, &text)?;
            Ok(format!(
                "wrote {} state to {}\n",
                class.slug(),
                dest.display()
            ))
        }
        None => Ok(text),
    }
}
