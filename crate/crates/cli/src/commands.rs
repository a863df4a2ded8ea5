use std::path::Path;
use std::result::Result;

use quantum_geometry::curvature::geometry_report;
use quantum_geometry::oracles::{
    curvature_deviation_curve, curvature_prefactor, fit_above_noise_floor, geometric_window,
    torsion_deviation_curve, torsion_prefactor,
};
use quantum_geometry::prelude::*;
use quantum_geometry::verify::{render_table, run_all, Level};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::spec::{load_problem, load_state, parse_json, read_file, StateFile};

/// Infinite radius (geodesic motion) is written as the string `"inf"`,
/// since JSON has no infinity; unavailable values are `null`.
fn radius_value(radius: Option<f64>) -> Value {
    match radius {
        Some(r) if r.is_infinite() => Value::String("inf".into()),
        Some(r) => json!(r),
        None => Value::Null,
    }
}

pub fn report(spec: &Path, require_dimensionless: bool) -> Result<Value, CliError> {
    let p = load_problem(spec)?;
    let r = geometry_report(&p.hamiltonian, &p.state, &p.constants)?;
    if require_dimensionless && r.is_stationary() {
        return Err(CliError::Stationary(format!(
            "variance {:e} is at numerical zero, so kappa_bar and tau_bar are undefined",
            r.moments.var
        )));
    }
    Ok(json!({
        "speed": r.speed,
        "kappa": r.kappa,
        "kappa_bar": r.kappa_bar,
        "tau": r.tau,
        "tau_bar": r.tau_bar,
        "radius": radius_value(r.radius),
        "moments": {
            "mean": r.moments.mean,
            "var": r.moments.var,
            "central3": r.moments.central3,
            "central4": r.moments.central4,
        },
    }))
}

#[derive(Debug, Clone, Copy)]
pub enum GeodesicParam {
    Xi(f64),
    Theta(f64),
}

pub fn geodesic(spec: &Path, psi1: &Path, param: GeodesicParam) -> Result<Value, CliError> {
    let p = load_problem(spec)?;
    let file: StateFile = parse_json(&read_file(psi1)?)?;
    let psi1 = load_state("psi1", file.amplitudes())?;
    if psi1.dim() != p.state.dim() {
        return Err(CliError::field(
            "psi1",
            format!("has {} entries, expected {}", psi1.dim(), p.state.dim()),
        ));
    }
    let g = geodesic_between(&p.state, &psi1)?;
    let point = match param {
        GeodesicParam::Xi(xi) => point_xi(&g, xi),
        GeodesicParam::Theta(theta) => point_theta(&g, theta),
    }?;
    let amps: Vec<[f64; 2]> = point.as_slice().iter().map(|z| [z.re, z.im]).collect();
    Ok(json!({
        "point": amps,
        "length": geodesic_length(&g, &p.constants),
        "wootters": wootters_distance(&p.state, &psi1, &p.constants)?,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Curvature,
    Torsion,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanSpec {
    pub dt_start: f64,
    pub points: usize,
    pub ratio: f64,
    pub dt_prime_ratio: f64,
}

impl ScanSpec {
    fn window(&self) -> Result<Vec<f64>, CliError> {
        if !(self.dt_start.is_finite() && self.dt_start > 0.0) {
            return Err(CliError::field("dt-start", "must be positive"));
        }
        if self.points < 6 {
            return Err(CliError::field("points", "need at least 6"));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(CliError::field("ratio", "must lie in (0, 1)"));
        }
        if !(self.dt_prime_ratio.is_finite() && self.dt_prime_ratio > 0.0) {
            return Err(CliError::field("dt-prime-ratio", "must be positive"));
        }
        geometric_window(self.dt_start, self.points, self.ratio)
            .map_err(|e| CliError::field("ratio", e))
    }
}

#[derive(Debug, Serialize)]
pub struct ScanSummary {
    pub exponent: f64,
    pub prefactor: f64,
    pub predicted_prefactor: f64,
    pub relative_error: f64,
}

/// Writes the `dt,value` curve to `out` and returns the fit against the
/// prefactor predicted from the moments.
pub fn scan(
    spec: &Path,
    scan: &ScanSpec,
    mode: ScanMode,
    out: &Path,
) -> Result<ScanSummary, CliError> {
    let p = load_problem(spec)?;
    let window = scan.window()?;
    let (h, psi, c) = (&p.hamiltonian, &p.state, &p.constants);
    let flat = |why: String| CliError::FlatCurve(why);
    let (curve, predicted) = match mode {
        ScanMode::Curvature => (
            curvature_deviation_curve(h, psi, &window, c)?,
            curvature_prefactor(curvature(h, psi)?, c),
        ),
        ScanMode::Torsion => {
            let curve = match torsion_deviation_curve(h, psi, &window, scan.dt_prime_ratio, c) {
                Err(GeomError::DegeneratePlane) => {
                    return Err(flat(
                        "the state does not move, so there is no evolution plane".into(),
                    ))
                }
                other => other?,
            };
            let tau = match torsion(h, psi) {
                Ok(t) => t,
                Err(GeomError::StationaryState { .. }) => 0.0,
                Err(e) => return Err(e.into()),
            };
            (curve, torsion_prefactor(tau, scan.dt_prime_ratio, c))
        }
    };
    write_curve(out, &curve)?;
    let fit = match fit_above_noise_floor(&curve) {
        Ok(f) => f,
        Err(GeomError::TooFewPoints { needed, got }) => {
            return Err(flat(format!(
                "only {got} of {} points exceed the 1e-13 noise floor (need {needed})",
                curve.len()
            )))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(ScanSummary {
        exponent: fit.exponent,
        prefactor: fit.prefactor,
        predicted_prefactor: predicted,
        relative_error: (fit.prefactor / predicted - 1.0).abs(),
    })
}

fn write_curve(out: &Path, curve: &[(f64, f64)]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io {
        path: out.display().to_string(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(out).map_err(io)?;
    w.write_record(["dt", "value"]).map_err(io)?;
    for (dt, v) in curve {
        w.write_record([format!("{dt:.16e}"), format!("{v:.16e}")])
            .map_err(io)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: out.display().to_string(),
        source,
    })
}

/// Returns the rendered table and the number of failed checks.
pub fn verify(seed: u64, level: Level) -> (String, usize) {
    let outcomes = run_all(seed, level);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    (render_table(&outcomes), failed)
}
