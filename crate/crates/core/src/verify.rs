//! Randomized property suites over the whole crate.
//!
//! Every suite draws its inputs from its own ChaCha stream derived from one
//! seed, so a run is fully determined by `(seed, level)`. Each check records
//! the worst error it saw against a fixed tolerance.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::curvature::{
    curvature, curvature_dimensionless, evolution_plane, torsion, torsion_dimensionless,
};
use crate::error::Result;
use crate::geodesic::{
    geodesic_between, geodesic_length, numeric_arc_length, phase_family_length, point_xi,
};
use crate::geometry::{
    evolution_speed, fubini_study_distance, metric_tensor, overlap_modulus, wootters_distance,
    ParamFamily, DEFAULT_FD_STEP,
};
use crate::oracles::{
    adaptive_window, circle_radius_estimate, classical_moments, curvature_deviation_curve,
    curvature_prefactor, fit_above_noise_floor, geodesic_eigencondition_residual,
    make_geodesic_state, random_hermitian, random_state, series_propagator, suite_rng,
    torsion_deviation_curve, torsion_prefactor, two_level_hamiltonian,
};
use crate::quantum::{
    evolve, inner_product, moments, spectral, HermitianOperator, PhysicalConstants, StateVector,
};

/// Ensemble sizing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Ensembles shrunk five-fold.
    Quick,
    Full,
}

impl Level {
    fn size(self, full: usize) -> usize {
        match self {
            Level::Full => full,
            Level::Quick => (full / 5).max(1),
        }
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: Option<String>,
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    cases: usize,
    failed: bool,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            worst: 0.0,
            cases: 0,
            failed: false,
        }
    }

    fn record(&mut self, err: f64) {
        self.cases += 1;
        if err.is_nan() || err > self.tolerance {
            self.failed = true;
        }
        if err.is_nan() || err > self.worst {
            self.worst = err;
        }
    }

    /// Records a one-sided bound `value >= floor`, stored as `floor - value`
    /// against a zero tolerance.
    fn require_at_least(&mut self, value: f64, floor: f64) {
        self.cases += 1;
        let shortfall = floor - value;
        if !(value > floor) {
            self.failed = true;
        }
        if shortfall > self.worst || self.cases == 1 {
            self.worst = shortfall;
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            passed: !self.failed && self.cases > 0,
            note: None,
        }
    }
}

fn errored(name: &'static str, err: crate::GeomError) -> CheckOutcome {
    CheckOutcome {
        name,
        cases: 0,
        worst: f64::NAN,
        tolerance: f64::NAN,
        passed: false,
        note: Some(err.to_string()),
    }
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / b.abs().max(scale)
}

fn dim_in<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi)
}

/// Random `(H, psi)` in dims `lo..=hi` whose dimensionless curvature (or
/// torsion, if `use_torsion`) exceeds `floor`.
pub fn sample_curved_case<R: Rng + ?Sized>(
    rng: &mut R,
    lo: usize,
    hi: usize,
    floor: f64,
    use_torsion: bool,
) -> Result<(HermitianOperator, StateVector)> {
    loop {
        let n = dim_in(rng, lo, hi);
        let h = random_hermitian(rng, n)?;
        let psi = random_state(rng, n)?;
        let value = if use_torsion {
            torsion_dimensionless(&h, &psi)?
        } else {
            curvature_dimensionless(&h, &psi)?
        };
        if value > floor {
            return Ok((h, psi));
        }
    }
}

/// Random Hamiltonian with a spectrum symmetric about zero and a state with
/// equal weights on mirrored levels, so every odd central moment vanishes.
pub fn sample_symmetric_case<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
) -> Result<(HermitianOperator, StateVector)> {
    let basis = spectral(&random_hermitian(rng, dim)?).basis().clone();
    let mut levels = vec![0.0; dim];
    let mut weights = vec![0.0; dim];
    for k in 0..dim / 2 {
        let e: f64 = rng.random_range(0.1..1.0);
        let w: f64 = rng.random_range(0.1..1.0);
        levels[2 * k] = e;
        levels[2 * k + 1] = -e;
        weights[2 * k] = w;
        weights[2 * k + 1] = w;
    }
    if dim % 2 == 1 {
        weights[dim - 1] = rng.random_range(0.1..1.0);
    }
    let diag = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(levels[i], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let h = HermitianOperator::new(&basis * diag * basis.adjoint())?;
    let coeffs = nalgebra::DVector::from_fn(dim, |k, _| {
        Complex64::from_polar(weights[k].sqrt(), rng.random_range(0.0..2.0 * PI))
    });
    let psi = StateVector::from_dvector(&basis * coeffs)?;
    Ok((h, psi))
}

fn random_ray_pair<R: Rng + ?Sized>(
    rng: &mut R,
    lo: usize,
    hi: usize,
) -> Result<(StateVector, StateVector)> {
    let n = dim_in(rng, lo, hi);
    Ok((random_state(rng, n)?, random_state(rng, n)?))
}

fn unitarity(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut t = Tracker::new("unitarity of evolution", 1e-12);
    for _ in 0..n {
        let d = dim_in(rng, 2, 8);
        let h = random_hermitian(rng, d)?;
        let psi = random_state(rng, d)?;
        let s = spectral(&h);
        for e in -3..=3 {
            let time = 10f64.powi(e) * rng.random_range(0.5..5.0);
            let out = s.evolve(&psi, time, &k)?;
            // Norm of the raw propagated vector, before renormalization.
            let raw = s.basis() * (s.basis().adjoint() * psi.amplitudes());
            t.record((raw.norm() - 1.0).abs().max((out.norm_sqr() - 1.0).abs()));
        }
    }
    Ok(vec![t.finish()])
}

fn propagators(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut series = Tracker::new("spectral vs series propagator", 1e-9);
    let mut group = Tracker::new("evolution group law", 1e-10);
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let h = random_hermitian(rng, d)?;
        let psi = random_state(rng, d)?;
        let t1 = rng.random_range(0.0..10.0);
        let t2 = rng.random_range(0.0..10.0);
        let direct = evolve(&h, &psi, t1, &k)?;
        let oracle = series_propagator(&h, t1, k.hbar()) * psi.amplitudes();
        series.record((direct.amplitudes() - oracle).norm());
        let whole = evolve(&h, &psi, t1 + t2, &k)?;
        let steps = evolve(&h, &direct, t2, &k)?;
        group.record((whole.amplitudes() - steps.amplitudes()).norm());
    }
    Ok(vec![series.finish(), group.finish()])
}

fn moment_checks(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut powers = Tracker::new("variance vs <H^2> - <H>^2", 1e-10);
    let mut classical = Tracker::new("operator vs spectral-weight moments", 1e-10);
    let mut ordering = Tracker::new("0 <= tau <= kappa", 1e-12);
    for _ in 0..n {
        let d = dim_in(rng, 2, 8);
        let h = random_hermitian(rng, d)?;
        let psi = random_state(rng, d)?;
        let m = moments(&h, &psi)?;
        let hv = h.apply(psi.amplitudes());
        let h2 = psi.amplitudes().dotc(&(h.matrix() * &hv)).re;
        powers.record(rel(m.var, h2 - m.mean * m.mean, 1e-3));
        let c = classical_moments(&spectral(&h), &psi)?;
        for (x, y) in [
            (m.mean, c.mean),
            (m.var, c.var),
            (m.central3, c.central3),
            (m.central4, c.central4),
        ] {
            classical.record(rel(x, y, 1e-3));
        }
        let kappa = curvature(&h, &psi)?;
        let tau = torsion(&h, &psi)?;
        ordering.record((-tau).max(tau - kappa).max(0.0));
    }
    Ok(vec![powers.finish(), classical.finish(), ordering.finish()])
}

fn distance_checks(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut phase = Tracker::new("distance phase invariance", 1e-14);
    let mut small = Tracker::new("FS ~ Wootters at small separation", 1.0);
    for _ in 0..n {
        let (a, b) = random_ray_pair(rng, 2, 6)?;
        let (al, be) = (
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(0.0..2.0 * PI),
        );
        let (pa, pb) = (a.with_phase(al), b.with_phase(be));
        phase.record(
            (fubini_study_distance(&a, &b, &k)? - fubini_study_distance(&pa, &pb, &k)?)
                .abs()
                .max((wootters_distance(&a, &b, &k)? - wootters_distance(&pa, &pb, &k)?).abs()),
        );

        // b' = sqrt(1 - delta^2) a + delta w with w orthogonal to a.
        let delta = 10f64.powf(rng.random_range(-6.0..-3.0));
        let w = b.amplitudes() - a.amplitudes() * a.amplitudes().dotc(b.amplitudes());
        let w = w.normalize();
        let near = StateVector::from_dvector(
            a.amplitudes() * Complex64::new((1.0 - delta * delta).sqrt(), 0.0)
                + w * Complex64::new(delta, 0.0),
        )?;
        let fs = fubini_study_distance(&a, &near, &k)?;
        let wd = wootters_distance(&a, &near, &k)?;
        // |dFS - dW| / dW <= delta^2, recorded as a ratio against the bound.
        small.record((fs - wd).abs() / wd / (delta * delta));
    }
    Ok(vec![phase.finish(), small.finish()])
}

fn speed_law(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut t = Tracker::new("d_FS(psi, U(dt) psi)/dt -> v", 1e-3);
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let h = random_hermitian(rng, d)?;
        let psi = random_state(rng, d)?;
        let v = evolution_speed(&h, &psi, &k)?;
        let s = spectral(&h);
        // Three decades down from 0.1; only the smallest step is judged.
        let mut ratio = f64::NAN;
        for e in 1..=4 {
            let dt = 10f64.powi(-e);
            ratio = fubini_study_distance(&psi, &s.evolve(&psi, dt, &k)?, &k)? / dt;
        }
        t.record(rel(ratio, v, 1e-12));
    }
    Ok(vec![t.finish()])
}

fn geodesic_checks(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut length = Tracker::new("geodesic length = Wootters (Simpson 1024)", 1e-8);
    let mut rays = Tracker::new("geodesic ray invariance", 1e-12);
    for _ in 0..n {
        let (a, b) = random_ray_pair(rng, 2, 6)?;
        let g = geodesic_between(&a, &b)?;
        let closed = geodesic_length(&g, &k);
        length.record((closed - numeric_arc_length(&g, &k, 1024)?).abs());
        length.record((closed - wootters_distance(&a, &b, &k)?).abs());

        let g2 = geodesic_between(
            &a.with_phase(rng.random_range(0.0..2.0 * PI)),
            &b.with_phase(rng.random_range(0.0..2.0 * PI)),
        )?;
        for j in 0..=10 {
            let xi = j as f64 / 10.0;
            rays.record(1.0 - overlap_modulus(&point_xi(&g, xi)?, &point_xi(&g2, xi)?)?);
        }
    }
    Ok(vec![length.finish(), rays.finish()])
}

fn minimal_phase(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut longer = Tracker::new("non-canonical phases are longer (margin > 1e-6)", 0.0);
    for _ in 0..n {
        let (a, b) = random_ray_pair(rng, 2, 6)?;
        let g = geodesic_between(&a, &b)?;
        let phi = g.phase().arg();
        let best = geodesic_length(&g, &k);
        for j in 0..16 {
            let offset = 2.0 * PI * (j as f64 + 0.5) / 16.0;
            let len = phase_family_length(&a, &b, phi + offset, &k, 512)?;
            longer.require_at_least(len - best, 1e-6);
        }
    }
    Ok(vec![longer.finish()])
}

fn bloch_metric(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let family = ParamFamily::new(vec![(0.0, PI), (-PI, PI)], |p| {
        StateVector::new(vec![
            Complex64::new((p[0] / 2.0).cos(), 0.0),
            Complex64::from_polar((p[0] / 2.0).sin(), p[1]),
        ])
    })?;
    let mut t = Tracker::new("Bloch metric = diag(1, sin^2 theta)", 1e-6);
    for _ in 0..n {
        let th = rng.random_range(0.05..PI - 0.05);
        let ph = rng.random_range(-3.0..3.0);
        let g = metric_tensor(&family, &[th, ph], &k, DEFAULT_FD_STEP)?;
        t.record((g.get(0, 0) - 1.0).abs());
        t.record((g.get(1, 1) - th.sin().powi(2)).abs());
        t.record(g.get(0, 1).abs());
    }
    Ok(vec![t.finish()])
}

fn two_level(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut tau = Tracker::new("2-level: |tau_bar| ~ 0", 1e-10);
    let mut kappa = Tracker::new("2-level: kappa_bar = 4<H>^2/var", 1e-9);
    let mut third = Tracker::new("2-level: <dH^3> = -2<H>var", 1e-9);
    for _ in 0..n {
        let general = random_hermitian(rng, 2)?;
        let psi = random_state(rng, 2)?;
        tau.record(torsion_dimensionless(&general, &psi)?.abs());

        let omega = rng.random_range(0.1..2.0);
        let axis = random_state(rng, 2)?;
        // Unit axis from a random spinor: n = <s|sigma|s>.
        let z = axis.as_slice();
        let nx = 2.0 * (z[0].conj() * z[1]).re;
        let ny = 2.0 * (z[0].conj() * z[1]).im;
        let nz = z[0].norm_sqr() - z[1].norm_sqr();
        let norm = (nx * nx + ny * ny + nz * nz).sqrt();
        let h = two_level_hamiltonian(omega, [nx / norm, ny / norm, nz / norm], 0.0)?;
        let psi = random_state(rng, 2)?;
        let m = moments(&h, &psi)?;
        let expect = 4.0 * m.mean * m.mean / m.var;
        kappa.record(rel(curvature_dimensionless(&h, &psi)?, expect, 1.0));
        third.record(rel(m.central3, -2.0 * m.mean * m.var, omega.powi(3)));
    }
    Ok(vec![tau.finish(), kappa.finish(), third.finish()])
}

fn shift_invariance(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut t = Tracker::new("H -> H + eps leaves kappa, tau unchanged", 1e-10);
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let h = random_hermitian(rng, d)?;
        let psi = random_state(rng, d)?;
        let shifted = h.shifted(rng.random_range(-5.0..5.0));
        t.record(rel(curvature(&shifted, &psi)?, curvature(&h, &psi)?, 1e-2));
        t.record(rel(torsion(&shifted, &psi)?, torsion(&h, &psi)?, 1e-2));
        t.record(rel(
            curvature_dimensionless(&shifted, &psi)?,
            curvature_dimensionless(&h, &psi)?,
            1.0,
        ));
        t.record(rel(
            torsion_dimensionless(&shifted, &psi)?,
            torsion_dimensionless(&h, &psi)?,
            1.0,
        ));
    }
    Ok(vec![t.finish()])
}

fn geodesic_states(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut t = Tracker::new(
        "two-eigenstate states: kappa, tau, <dH^3>, residual ~ 0",
        1e-10,
    );
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let h = random_hermitian(rng, d)?;
        let s = spectral(&h);
        let i = rng.random_range(0..d);
        let j = (i + rng.random_range(1..d)) % d;
        let psi = make_geodesic_state(&s, i, j, rng.random_range(0.0..2.0 * PI))?;
        let mut times = vec![0.0];
        times.extend((0..10).map(|_| rng.random_range(0.0..50.0)));
        for time in times {
            let state = s.evolve(&psi, time, &k)?;
            t.record(curvature(&h, &state)?);
            t.record(torsion(&h, &state)?);
            t.record(moments(&h, &state)?.central3.abs());
            t.record(geodesic_eigencondition_residual(&h, &state)?);
        }
    }
    Ok(vec![t.finish()])
}

fn symmetric_states(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let mut t = Tracker::new("<dH^3> = 0 implies kappa_bar = tau_bar", 1e-10);
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let (h, psi) = sample_symmetric_case(rng, d)?;
        t.record((curvature_dimensionless(&h, &psi)? - torsion_dimensionless(&h, &psi)?).abs());
    }
    Ok(vec![t.finish()])
}

fn plane_basis(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut t = Tracker::new("evolution plane is orthonormal and spans psi0, psi'", 1e-10);
    for _ in 0..n {
        let d = dim_in(rng, 2, 6);
        let h = random_hermitian(rng, d)?;
        let psi0 = random_state(rng, d)?;
        let dt = 10f64.powf(rng.random_range(-3.0..0.0));
        let psi_p = evolve(&h, &psi0, dt, &k)?;
        let plane = match evolution_plane(&psi0, &psi_p) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let (p1, p2) = (plane.phi1(), plane.phi2());
        t.record((inner_product(p1, p1)?.re - 1.0).abs());
        t.record((inner_product(p2, p2)?.re - 1.0).abs());
        t.record(inner_product(p1, p2)?.norm());
        for s in [&psi0, &psi_p] {
            let proj = p1.amplitudes() * p1.amplitudes().dotc(s.amplitudes())
                + p2.amplitudes() * p2.amplitudes().dotc(s.amplitudes());
            t.record((s.amplitudes() - proj).norm());
        }
    }
    Ok(vec![t.finish()])
}

fn quartic_laws(rng: &mut ChaCha8Rng, n: usize) -> Result<Vec<CheckOutcome>> {
    let k = PhysicalConstants::default();
    let mut c_exp = Tracker::new("curvature law: exponent in [3.9, 4.1]", 0.1);
    let mut c_pre = Tracker::new("curvature law: prefactor within 2%", 0.02);
    let mut radius = Tracker::new("circle radius matches gamma/sqrt(kappa_bar)", 0.05);
    for _ in 0..n {
        let (h, psi) = sample_curved_case(rng, 3, 6, 0.01, false)?;
        let window = adaptive_window(&h, &psi, 1.0, &k)?;
        let curve = curvature_deviation_curve(&h, &psi, &window, &k)?;
        let fit = fit_above_noise_floor(&curve)?;
        let m = classical_moments(&spectral(&h), &psi)?;
        let kappa = m.central4 - m.var * m.var;
        c_exp.record((fit.exponent - 4.0).abs());
        c_pre.record(rel(fit.prefactor, curvature_prefactor(kappa, &k), 0.0));

        let (dt, d2) = *curve.last().expect("window is non-empty");
        let v = k.gamma() * m.var.sqrt() / k.hbar();
        let estimate = circle_radius_estimate(v, dt, d2.sqrt());
        let expect = k.gamma() / (kappa / (m.var * m.var)).sqrt();
        radius.record(rel(estimate, expect, 0.0));
    }

    let mut t_exp = Tracker::new("torsion law: exponent in [3.9, 4.1]", 0.1);
    let mut t_pre = Tracker::new(
        "torsion law: prefactor within 2% (dt'/dt = 1, 1/2, 2)",
        0.02,
    );
    for _ in 0..n {
        let (h, psi) = sample_curved_case(rng, 3, 6, 0.01, true)?;
        let m = classical_moments(&spectral(&h), &psi)?;
        let tau = m.central4 - m.var * m.var - m.central3 * m.central3 / m.var;
        for ratio in [1.0, 0.5, 2.0] {
            let window = adaptive_window(&h, &psi, ratio, &k)?;
            let curve = torsion_deviation_curve(&h, &psi, &window, ratio, &k)?;
            let fit = fit_above_noise_floor(&curve)?;
            t_exp.record((fit.exponent - 4.0).abs());
            t_pre.record(rel(fit.prefactor, torsion_prefactor(tau, ratio, &k), 0.0));
        }
    }
    Ok(vec![
        c_exp.finish(),
        c_pre.finish(),
        radius.finish(),
        t_exp.finish(),
        t_pre.finish(),
    ])
}

type Suite = fn(&mut ChaCha8Rng, usize) -> Result<Vec<CheckOutcome>>;

const SUITES: &[(&str, Suite, usize)] = &[
    ("unitarity", unitarity, 20),
    ("propagators", propagators, 20),
    ("moments", moment_checks, 100),
    ("distances", distance_checks, 100),
    ("speed", speed_law, 20),
    ("geodesics", geodesic_checks, 100),
    ("minimal-phase", minimal_phase, 20),
    ("bloch-metric", bloch_metric, 20),
    ("two-level", two_level, 500),
    ("shift", shift_invariance, 50),
    ("geodesic-states", geodesic_states, 50),
    ("symmetric-states", symmetric_states, 50),
    ("plane-basis", plane_basis, 500),
    ("quartic-laws", quartic_laws, 20),
];

/// Runs every suite and returns one outcome per check, in a fixed order.
pub fn run_all(seed: u64, level: Level) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for (stream, (name, suite, full)) in SUITES.iter().enumerate() {
        let mut rng = suite_rng(seed, stream as u64);
        match suite(&mut rng, level.size(*full)) {
            Ok(mut checks) => out.append(&mut checks),
            Err(e) => out.push(errored(name, e)),
        }
    }
    out
}

/// Plain-text table, one row per check.
pub fn render_table(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes
        .iter()
        .map(|o| o.name.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<width$}  {:>6}  {:>11}  {:>9}  result",
        "check", "cases", "worst", "tolerance"
    );
    for o in outcomes {
        let _ = write!(
            s,
            "{:<width$}  {:>6}  {:>11.3e}  {:>9.1e}  {}",
            o.name,
            o.cases,
            o.worst,
            o.tolerance,
            if o.passed { "PASS" } else { "FAIL" }
        );
        if let Some(note) = &o.note {
            let _ = write!(s, "  ({note})");
        }
        s.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", outcomes.len(), failed);
    s
}
