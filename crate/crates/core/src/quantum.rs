//! State vectors, Hermitian operators and the exact propagator.
//!
//! Everything here is immutable after construction. A [`StateVector`] is always
//! normalized, a [`HermitianOperator`] is always Hermitian to working precision,
//! and time evolution goes through the spectral decomposition of the operator.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{GeomError, Result};

/// Tolerance on the squared norm of a state after normalization.
pub const NORM_TOL: f64 = 1e-12;

/// Largest asymmetry `|A_ij - conj(A_ji)|` (relative to `max(1, |A|)`) that is
/// symmetrized away instead of rejected.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest imaginary part a central moment may carry before it is rejected.
pub const MOMENT_IMAG_TOL: f64 = 1e-10;

/// Reduced Planck constant and distance scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    hbar: f64,
    gamma: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, gamma: f64) -> Result<Self> {
        if !(hbar.is_finite() && gamma.is_finite() && hbar > 0.0 && gamma > 0.0) {
            return Err(GeomError::InvalidConstants { hbar, gamma });
        }
        Ok(Self { hbar, gamma })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Default for PhysicalConstants {
    /// `hbar = 1`, `gamma = 2`. With `gamma = 2` a two-level state space is the
    /// unit Bloch sphere.
    fn default() -> Self {
        Self {
            hbar: 1.0,
            gamma: 2.0,
        }
    }
}

/// A normalized pure state. Global phase is carried but never affects any
/// ray quantity computed by this crate.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: DVector<Complex64>,
}

impl StateVector {
    /// Normalizes `amps` and wraps it. Fails on zero, non-finite or
    /// one-dimensional input.
    pub fn new(amps: impl Into<Vec<Complex64>>) -> Result<Self> {
        Self::from_dvector(DVector::from_vec(amps.into()))
    }

    pub fn from_dvector(amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(GeomError::DimensionTooSmall(amps.len()));
        }
        if amps.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(GeomError::NonFinite("state amplitudes"));
        }
        let norm = amps.norm();
        if norm == 0.0 {
            return Err(GeomError::ZeroVector);
        }
        Ok(Self {
            amps: amps / Complex64::new(norm, 0.0),
        })
    }

    /// Builds from real amplitudes.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(
            amps.iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>(),
        )
    }

    /// Accepts `amps` only if its norm is already within `tol` of one, then
    /// renormalizes exactly.
    pub fn from_nearly_unit(amps: impl Into<Vec<Complex64>>, tol: f64) -> Result<Self> {
        let v = DVector::from_vec(amps.into());
        let norm = v.norm();
        if norm.is_finite() && (norm - 1.0).abs() > tol {
            return Err(GeomError::NotNormalized { norm, tol });
        }
        Self::from_dvector(v)
    }

    /// Standard basis vector `e_k` of dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(GeomError::IndexOutOfRange { index: k, dim });
        }
        let mut v = DVector::zeros(dim);
        v[k] = Complex64::new(1.0, 0.0);
        Self::from_dvector(v)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn into_inner(self) -> DVector<Complex64> {
        self.amps
    }

    /// The same ray with an extra global phase `e^{i alpha}`.
    pub fn with_phase(&self, alpha: f64) -> Self {
        Self {
            amps: &self.amps * Complex64::from_polar(1.0, alpha),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.norm_squared()
    }
}

/// `<a|b>`, antilinear in the first argument.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.amps.dotc(&b.amps))
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(GeomError::DimensionMismatch { left, right });
    }
    Ok(())
}

/// A Hermitian matrix, typically a Hamiltonian in energy units.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    m: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Accepts `m` if it is Hermitian up to [`HERMITIAN_TOL`] (scaled by
    /// `max(1, |m|_F)`) and symmetrizes the residue; rejects it otherwise.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let (rows, cols) = m.shape();
        if rows != cols {
            return Err(GeomError::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(GeomError::DimensionTooSmall(rows));
        }
        if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(GeomError::NonFinite("operator entries"));
        }
        let adj = m.adjoint();
        let asymmetry = m
            .iter()
            .zip(adj.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let scale = m.norm().max(1.0);
        if asymmetry > HERMITIAN_TOL * scale {
            return Err(GeomError::NotHermitian { asymmetry });
        }
        let m = (m + adj) * Complex64::new(0.5, 0.0);
        Ok(Self { m })
    }

    /// Row-major construction.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(GeomError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(diag[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    /// Frobenius norm; the energy scale used by relative tolerances.
    pub fn norm(&self) -> f64 {
        self.m.norm()
    }

    /// `H + eps * Id`.
    pub fn shifted(&self, eps: f64) -> Self {
        let n = self.dim();
        Self {
            m: &self.m + DMatrix::<Complex64>::identity(n, n) * Complex64::new(eps, 0.0),
        }
    }

    /// `H * s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            m: &self.m * Complex64::new(s, 0.0),
        }
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.m * v
    }

    /// `<psi|H|psi>`.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        check_dims(self.dim(), psi.dim())?;
        Ok(psi.amps.dotc(&self.apply(&psi.amps)).re)
    }
}

/// `<H>` and the central moments `<(dH)^k>` for k = 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub mean: f64,
    pub var: f64,
    pub central3: f64,
    pub central4: f64,
}

/// `dH psi` and `dH^2 psi` with `dH = H - <H>`. Every moment, curvature and
/// torsion value is read off these two vectors.
#[derive(Debug, Clone)]
pub(crate) struct DeltaPowers {
    pub psi: DVector<Complex64>,
    pub mean: f64,
    pub first: DVector<Complex64>,
    pub second: DVector<Complex64>,
}

impl DeltaPowers {
    pub fn new(h: &HermitianOperator, psi: &StateVector) -> Result<Self> {
        check_dims(h.dim(), psi.dim())?;
        let psi = psi.amps.clone();
        let mean = psi.dotc(&h.apply(&psi)).re;
        let shift = |v: &DVector<Complex64>| h.apply(v) - v * Complex64::new(mean, 0.0);
        let first = shift(&psi);
        let second = shift(&first);
        Ok(Self {
            psi,
            mean,
            first,
            second,
        })
    }

    pub fn var(&self) -> f64 {
        self.first.norm_squared()
    }

    pub fn central3(&self) -> Result<f64> {
        let z = self.first.dotc(&self.second);
        let scale = self.var().powf(1.5).max(f64::MIN_POSITIVE);
        if z.im.abs() > MOMENT_IMAG_TOL * scale.max(1.0) {
            return Err(GeomError::NonRealMoment { imag: z.im });
        }
        Ok(z.re)
    }

    pub fn central4(&self) -> f64 {
        self.second.norm_squared()
    }

    pub fn moments(&self) -> Result<MomentSet> {
        Ok(MomentSet {
            mean: self.mean,
            var: self.var(),
            central3: self.central3()?,
            central4: self.central4(),
        })
    }
}

/// `<psi|(H - <H>)^k|psi>` for `k` in 1..=4, by repeated application of
/// `H - <H>` to `psi`.
pub fn central_moment(h: &HermitianOperator, psi: &StateVector, k: u32) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(GeomError::InvalidMomentOrder(k));
    }
    let d = DeltaPowers::new(h, psi)?;
    match k {
        1 => Ok(d.psi.dotc(&d.first).re),
        2 => Ok(d.var()),
        3 => d.central3(),
        _ => Ok(d.central4()),
    }
}

/// All four moments at once.
pub fn moments(h: &HermitianOperator, psi: &StateVector) -> Result<MomentSet> {
    DeltaPowers::new(h, psi)?.moments()
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<StateVector>,
    basis: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[StateVector] {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Unitary whose columns are the eigenvectors.
    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    /// `sum_k lambda_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let lambda = DMatrix::from_diagonal(&DVector::from_iterator(
            self.dim(),
            self.eigenvalues.iter().map(|&e| Complex64::new(e, 0.0)),
        ));
        &self.basis * lambda * self.basis.adjoint()
    }

    /// `exp(-i H t / hbar) |psi0>` in the eigenbasis.
    pub fn evolve(
        &self,
        psi0: &StateVector,
        t: f64,
        constants: &PhysicalConstants,
    ) -> Result<StateVector> {
        check_dims(self.dim(), psi0.dim())?;
        if !t.is_finite() {
            return Err(GeomError::NonFinite("time"));
        }
        if t == 0.0 {
            return Ok(psi0.clone());
        }
        let mut coeffs = self.basis.adjoint() * &psi0.amps;
        for (c, &e) in coeffs.iter_mut().zip(&self.eigenvalues) {
            *c *= Complex64::from_polar(1.0, -e * t / constants.hbar());
        }
        StateVector::from_dvector(&self.basis * coeffs)
    }
}

/// Dense Hermitian eigendecomposition.
pub fn spectral(h: &HermitianOperator) -> SpectralDecomposition {
    let eig = h.m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let basis = DMatrix::from_columns(
        &order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).normalize())
            .collect::<Vec<_>>(),
    );
    let eigenvectors = basis
        .column_iter()
        .map(|c| StateVector {
            amps: c.into_owned(),
        })
        .collect();
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        basis,
    }
}

/// `exp(-i H t / hbar) |psi0>`.
pub fn evolve(
    h: &HermitianOperator,
    psi0: &StateVector,
    t: f64,
    constants: &PhysicalConstants,
) -> Result<StateVector> {
    check_dims(h.dim(), psi0.dim())?;
    spectral(h).evolve(psi0, t, constants)
}
