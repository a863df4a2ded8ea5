//! Curvature and torsion of Schrödinger evolution.
//!
//! With `dH = H - <H>` and `m_k = <(dH)^k>`:
//!
//! * curvature `kappa = m4 - m2^2`, the variance of `(dH)^2`;
//! * torsion `tau = kappa - m3^2 / m2`;
//! * their dimensionless forms `kappa / m2^2` and `tau / m2^2`.
//!
//! Both coefficients are evaluated as squared norms of Gram-Schmidt
//! residuals. `kappa` is `|(dH)^2 psi|^2` after removing the component along
//! `psi`, and `tau` additionally removes the component along `dH psi`.
//! Expanding the norms reproduces the moment formulas term by term, and the
//! residual form is nonnegative by construction and free of cancellation
//! when the state moves along a geodesic.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::geometry::{evolution_speed, raw_infidelity};
use crate::quantum::{
    check_dims, DeltaPowers, HermitianOperator, MomentSet, PhysicalConstants, StateVector,
};

/// Relative variance threshold: states with `m2 <= VAR_TOL * |H|^2` are
/// treated as stationary.
pub const VAR_TOL: f64 = 1e-12;

/// Dimensionless curvature at or below which the radius is infinite.
pub const KAPPA_BAR_FLOOR: f64 = 1e-12;

/// `I2` at or below which the projection onto the plane is treated as zero.
pub const ZERO_PROJECTION_TOL: f64 = 1e-14;

/// Bound on `1 - a` and on `a` for a usable evolution plane.
pub const PLANE_TOL: f64 = 1e-12;

/// Variance threshold for `h`.
pub fn tol_var(h: &HermitianOperator) -> f64 {
    VAR_TOL * h.norm().powi(2)
}

fn project_out(v: &DVector<Complex64>, unit: &DVector<Complex64>) -> DVector<Complex64> {
    v - unit * unit.dotc(v)
}

/// `(dH)^2 psi` with its `psi` component removed; `|.|^2 = kappa`.
fn curvature_residual(d: &DeltaPowers) -> DVector<Complex64> {
    project_out(&d.second, &d.psi)
}

fn stationary_check(h: &HermitianOperator, d: &DeltaPowers) -> Result<f64> {
    let var = d.var();
    let tolerance = tol_var(h);
    if var <= tolerance {
        return Err(GeomError::StationaryState {
            variance: var,
            tolerance,
        });
    }
    Ok(var)
}

fn torsion_from(d: &DeltaPowers) -> f64 {
    let u = curvature_residual(d);
    let w = &d.first / Complex64::new(d.var().sqrt(), 0.0);
    // Second pass against psi guards the loss of orthogonality in `w`.
    project_out(&project_out(&u, &w), &d.psi).norm_squared()
}

/// `kappa = <(dH)^4> - <(dH)^2>^2`.
pub fn curvature(h: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    Ok(curvature_residual(&d).norm_squared())
}

/// `kappa / <(dH)^2>^2`.
pub fn curvature_dimensionless(h: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    let var = stationary_check(h, &d)?;
    Ok(curvature_residual(&d).norm_squared() / (var * var))
}

/// Radius of the osculating circle, `gamma / sqrt(kappa_bar)`; infinite for
/// geodesic motion.
pub fn curvature_radius(
    h: &HermitianOperator,
    psi: &StateVector,
    constants: &PhysicalConstants,
) -> Result<f64> {
    Ok(radius_from(curvature_dimensionless(h, psi)?, constants))
}

fn radius_from(kappa_bar: f64, constants: &PhysicalConstants) -> f64 {
    if kappa_bar <= KAPPA_BAR_FLOOR {
        f64::INFINITY
    } else {
        constants.gamma() / kappa_bar.sqrt()
    }
}

/// `tau = <(dH)^4> - <(dH)^2>^2 - <(dH)^3>^2 / <(dH)^2>`.
pub fn torsion(h: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    stationary_check(h, &d)?;
    Ok(torsion_from(&d))
}

/// `tau / <(dH)^2>^2`.
pub fn torsion_dimensionless(h: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    let var = stationary_check(h, &d)?;
    Ok(torsion_from(&d) / (var * var))
}

/// Orthonormal basis of the plane spanned by `psi0` and a nearby evolved
/// state `psi'`, with `<psi0|psi'> = a e^{i alpha}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionPlane {
    phi1: StateVector,
    phi2: StateVector,
    alpha: f64,
    a: f64,
}

impl EvolutionPlane {
    /// `(psi0 + e^{-i alpha} psi') / sqrt(2(1 + a))`.
    pub fn phi1(&self) -> &StateVector {
        &self.phi1
    }

    /// `(psi0 - e^{-i alpha} psi') / sqrt(2(1 - a))`.
    pub fn phi2(&self) -> &StateVector {
        &self.phi2
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

/// Builds the plane of evolution from its first two states.
pub fn evolution_plane(psi0: &StateVector, psi_prime: &StateVector) -> Result<EvolutionPlane> {
    check_dims(psi0.dim(), psi_prime.dim())?;
    let ov = psi0.amplitudes().dotc(psi_prime.amplitudes());
    let a = ov.norm();
    if a <= PLANE_TOL {
        return Err(GeomError::OrthogonalStates);
    }
    // 1 - a ~ infidelity / 2, which avoids cancellation in 1 - |ov|.
    if raw_infidelity(psi0.amplitudes(), psi_prime.amplitudes()) <= 2.0 * PLANE_TOL {
        return Err(GeomError::DegeneratePlane);
    }
    let alpha = ov.arg();
    let rotated = psi_prime.amplitudes() * Complex64::from_polar(1.0, -alpha);
    let phi1 = StateVector::from_dvector(psi0.amplitudes() + &rotated)?;
    let diff = psi0.amplitudes() - &rotated;
    let phi2 = StateVector::from_dvector(project_out(&diff, phi1.amplitudes()))?;
    Ok(EvolutionPlane {
        phi1,
        phi2,
        alpha,
        a: a.min(1.0),
    })
}

fn plane_residual(plane: &EvolutionPlane, psi1: &StateVector) -> Result<DVector<Complex64>> {
    check_dims(plane.phi1.dim(), psi1.dim())?;
    let v = project_out(psi1.amplitudes(), plane.phi1.amplitudes());
    Ok(project_out(&v, plane.phi2.amplitudes()))
}

/// `I2 = |<phi1|psi1>|^2 + |<phi2|psi1>|^2`.
pub fn plane_overlap(plane: &EvolutionPlane, psi1: &StateVector) -> Result<f64> {
    check_dims(plane.phi1.dim(), psi1.dim())?;
    let p = psi1.amplitudes();
    Ok(plane.phi1.amplitudes().dotc(p).norm_sqr() + plane.phi2.amplitudes().dotc(p).norm_sqr())
}

/// `1 - I2`, computed as the squared norm of the out-of-plane component.
pub fn plane_deficit(plane: &EvolutionPlane, psi1: &StateVector) -> Result<f64> {
    Ok(plane_residual(plane, psi1)?.norm_squared().min(1.0))
}

/// Normalized projection of `psi1` onto the plane.
pub fn project_onto_plane(plane: &EvolutionPlane, psi1: &StateVector) -> Result<StateVector> {
    let i2 = plane_overlap(plane, psi1)?;
    if i2 <= ZERO_PROJECTION_TOL {
        return Err(GeomError::ZeroProjection { overlap: i2 });
    }
    let p = psi1.amplitudes();
    let proj = plane.phi1.amplitudes() * plane.phi1.amplitudes().dotc(p)
        + plane.phi2.amplitudes() * plane.phi2.amplitudes().dotc(p);
    StateVector::from_dvector(proj)
}

/// `gamma * sqrt(1 - I2)`: distance from `psi1` to its normalized
/// projection on the plane.
pub fn distance_to_plane(
    plane: &EvolutionPlane,
    psi1: &StateVector,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let i2 = plane_overlap(plane, psi1)?;
    if i2 <= ZERO_PROJECTION_TOL {
        return Err(GeomError::ZeroProjection { overlap: i2 });
    }
    Ok(constants.gamma() * plane_deficit(plane, psi1)?.sqrt())
}

/// Geometric characteristics of the evolution at one state.
///
/// The dimensionless fields, `tau` and `radius` are `None` for a stationary
/// state. `Some(0.0)` in `kappa_bar` means geodesic motion, and then
/// `radius` is `Some(f64::INFINITY)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub speed: f64,
    pub kappa: f64,
    pub kappa_bar: Option<f64>,
    pub tau: Option<f64>,
    pub tau_bar: Option<f64>,
    pub radius: Option<f64>,
    pub moments: MomentSet,
}

impl GeometryReport {
    pub fn is_stationary(&self) -> bool {
        self.kappa_bar.is_none()
    }
}

pub fn geometry_report(
    h: &HermitianOperator,
    psi: &StateVector,
    constants: &PhysicalConstants,
) -> Result<GeometryReport> {
    let d = DeltaPowers::new(h, psi)?;
    let moments = d.moments()?;
    let speed = evolution_speed(h, psi, constants)?;
    let kappa = curvature_residual(&d).norm_squared();
    let mut report = GeometryReport {
        speed,
        kappa,
        kappa_bar: None,
        tau: None,
        tau_bar: None,
        radius: None,
        moments,
    };
    if let Ok(var) = stationary_check(h, &d) {
        let tau = torsion_from(&d);
        let kappa_bar = kappa / (var * var);
        report.kappa_bar = Some(kappa_bar);
        report.tau = Some(tau);
        report.tau_bar = Some(tau / (var * var));
        report.radius = Some(radius_from(kappa_bar, constants));
    }
    Ok(report)
}
