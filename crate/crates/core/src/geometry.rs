//! Ray distances, the metric on parametrized state families, and the speed
//! of Schrödinger evolution.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::quantum::{check_dims, DeltaPowers, HermitianOperator, PhysicalConstants, StateVector};

/// Default central-difference step for [`metric_tensor`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// `1 - |<a|b>|^2 / (|a|^2 |b|^2)`, evaluated as the squared norm of the
/// component of `b` orthogonal to `a`. Unlike the direct formula this keeps
/// full relative precision when the rays almost coincide.
pub(crate) fn raw_infidelity(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    let aa = a.norm_squared();
    let bb = b.norm_squared();
    let residual = b - a * (a.dotc(b) / aa);
    (residual.norm_squared() / bb).clamp(0.0, 1.0)
}

/// `1 - |<a|b>|^2` for two rays, in `[0, 1]`.
pub fn infidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(raw_infidelity(a.amplitudes(), b.amplitudes()))
}

/// `|<a|b>|`, clamped to `[0, 1]`.
pub fn overlap_modulus(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.amplitudes().dotc(b.amplitudes()).norm().min(1.0))
}

/// `gamma * sqrt(1 - |<a|b>|^2)`.
pub fn fubini_study_distance(
    a: &StateVector,
    b: &StateVector,
    constants: &PhysicalConstants,
) -> Result<f64> {
    Ok(constants.gamma() * infidelity(a, b)?.sqrt())
}

/// `gamma * arccos |<a|b>|`.
///
/// Evaluated as `atan2(sqrt(1 - |<a|b>|^2), |<a|b>|)`, which is the same
/// angle but well conditioned near coincident rays.
pub fn wootters_distance(
    a: &StateVector,
    b: &StateVector,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let sin = infidelity(a, b)?.sqrt();
    let cos = overlap_modulus(a, b)?;
    Ok(constants.gamma() * sin.atan2(cos))
}

type FamilyMap<'a> = dyn Fn(&[f64]) -> Result<StateVector> + Send + Sync + 'a;

/// A family of states `psi(xi_1, ..., xi_k)` over a box of parameter
/// intervals. The map must be safe to call from several threads at once.
pub struct ParamFamily<'a> {
    map: Box<FamilyMap<'a>>,
    domain: Vec<(f64, f64)>,
}

impl<'a> ParamFamily<'a> {
    pub fn new<F>(domain: Vec<(f64, f64)>, map: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Result<StateVector> + Send + Sync + 'a,
    {
        if domain.is_empty() {
            return Err(GeomError::InvalidArgument(
                "family needs at least one parameter".into(),
            ));
        }
        if let Some(&(lo, hi)) = domain.iter().find(|(lo, hi)| !(lo < hi)) {
            return Err(GeomError::InvalidArgument(format!(
                "empty parameter interval [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            map: Box::new(map),
            domain,
        })
    }

    pub fn params(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn state_at(&self, point: &[f64]) -> Result<StateVector> {
        if point.len() != self.params() {
            return Err(GeomError::DimensionMismatch {
                left: self.params(),
                right: point.len(),
            });
        }
        (self.map)(point)
    }
}

impl std::fmt::Debug for ParamFamily<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParamFamily")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

/// Real symmetric `k x k` metric, already scaled by `gamma^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    g: DMatrix<f64>,
}

impl MetricTensor {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.g
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// `g_ij = gamma^2 Re(<psi_i|psi_j> - <psi_i|psi><psi|psi_j>)` with the
/// tangent vectors `psi_i` taken by central differences of width `step`.
pub fn metric_tensor(
    family: &ParamFamily<'_>,
    point: &[f64],
    constants: &PhysicalConstants,
    step: f64,
) -> Result<MetricTensor> {
    if !(step.is_finite() && step > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let k = family.params();
    if point.len() != k {
        return Err(GeomError::DimensionMismatch {
            left: k,
            right: point.len(),
        });
    }
    for (param, (&x, &(lo, hi))) in point.iter().zip(family.domain()).enumerate() {
        if !(x - step >= lo && x + step <= hi) {
            return Err(GeomError::NearBoundary { param });
        }
    }

    let psi = family.state_at(point)?.into_inner();
    let mut tangents = Vec::with_capacity(k);
    for param in 0..k {
        let mut fwd = point.to_vec();
        let mut bwd = point.to_vec();
        fwd[param] += step;
        bwd[param] -= step;
        let plus = family.state_at(&fwd)?;
        let minus = family.state_at(&bwd)?;
        check_dims(psi.len(), plus.dim())?;
        let d = (plus.amplitudes() - minus.amplitudes()) / Complex64::new(2.0 * step, 0.0);
        if d.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(GeomError::NonFiniteDerivative { param });
        }
        tangents.push(d);
    }

    let gauge: Vec<Complex64> = tangents.iter().map(|t| t.dotc(&psi)).collect();
    let g2 = constants.gamma().powi(2);
    let mut g = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = g2 * (tangents[i].dotc(&tangents[j]) - gauge[i] * gauge[j].conj()).re;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(MetricTensor { g })
}

/// `v = gamma * sqrt(<(dH)^2>) / hbar`.
pub fn evolution_speed(
    h: &HermitianOperator,
    psi: &StateVector,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    Ok(constants.gamma() * d.var().sqrt() / constants.hbar())
}
