//! Independent checks of the closed-form coefficients.
//!
//! The production path computes curvature and torsion from moments. This
//! module measures them from geometry alone: it runs the two-stage evolution
//! `psi0 -> psi' -> psi1` at a sequence of short times, records the
//! deviation from the geodesic (or from the plane of evolution), and fits the
//! quartic power law. It also builds the special states and Hamiltonians for
//! which the coefficients are known exactly, plus ensemble generators and a
//! series propagator that stands in for the spectral one in tests.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::curvature::{evolution_plane, plane_deficit};
use crate::error::{GeomError, Result};
use crate::geodesic::{geodesic_between, geodesic_infidelity};
use crate::geometry::evolution_speed;
use crate::quantum::{
    check_dims, spectral, DeltaPowers, HermitianOperator, MomentSet, PhysicalConstants,
    SpectralDecomposition, StateVector,
};

/// Values at or below this are numerical zero and are dropped before fitting.
pub const NOISE_FLOOR: f64 = 1e-13;

/// Points that must survive the noise floor for a fit.
pub const MIN_FIT_POINTS: usize = 5;

/// Points required by [`fit_power_law`] on raw input.
pub const MIN_RAW_POINTS: usize = 6;

/// Default window: 8 times, halving, starting where `v * 2 dt = 0.1 gamma`.
pub const DEFAULT_WINDOW_POINTS: usize = 8;
pub const DEFAULT_WINDOW_RATIO: f64 = 0.5;
pub const DEFAULT_WINDOW_ARC: f64 = 0.1;

/// Result of a log-log least-squares fit `value = prefactor * dt^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// Largest relative deviation of the fitted law from the data.
    pub residual: f64,
    /// The `dt` values that entered the fit.
    pub window: Vec<f64>,
}

/// `start, start * ratio, ...` with `points` entries.
pub fn geometric_window(start: f64, points: usize, ratio: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && start > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "window start must be positive, got {start}"
        )));
    }
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(GeomError::InvalidArgument(format!(
            "window ratio must lie in (0, 1), got {ratio}"
        )));
    }
    if points < MIN_RAW_POINTS {
        return Err(GeomError::TooFewPoints {
            needed: MIN_RAW_POINTS,
            got: points,
        });
    }
    Ok((0..points).map(|k| start * ratio.powi(k as i32)).collect())
}

/// The default 8-point window for `(h, psi0)`.
pub fn default_window(
    h: &HermitianOperator,
    psi0: &StateVector,
    constants: &PhysicalConstants,
) -> Result<Vec<f64>> {
    let v = evolution_speed(h, psi0, constants)?;
    let var = DeltaPowers::new(h, psi0)?.var();
    if var <= crate::curvature::tol_var(h) {
        return Err(GeomError::StationaryState {
            variance: var,
            tolerance: crate::curvature::tol_var(h),
        });
    }
    let start = DEFAULT_WINDOW_ARC * constants.gamma() / (2.0 * v);
    geometric_window(start, DEFAULT_WINDOW_POINTS, DEFAULT_WINDOW_RATIO)
}

/// Default-shaped window whose longest step keeps the total arc
/// `v (dt + dt')` below `0.1 min(gamma, 2R)`, with `R = gamma / sqrt(kappa_bar)`
/// the radius of curvature.
///
/// The fixed `0.1 gamma` arc of [`default_window`] stays small next to `R`
/// only while `kappa_bar` is of order one; near-eigenstates can have
/// `kappa_bar` in the hundreds, where the top point carries several percent
/// of higher-order correction. The `2R` cap trades that for signal: at
/// least five points stay above [`NOISE_FLOOR`] up to `kappa_bar ~ 1e4`.
/// Equals [`default_window`] when `ratio = 1` and `kappa_bar <= 4`.
pub fn adaptive_window(
    h: &HermitianOperator,
    psi0: &StateVector,
    ratio: f64,
    constants: &PhysicalConstants,
) -> Result<Vec<f64>> {
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "step ratio must be positive, got {ratio}"
        )));
    }
    let v = evolution_speed(h, psi0, constants)?;
    let kappa_bar = crate::curvature::curvature_dimensionless(h, psi0)?;
    let arc = DEFAULT_WINDOW_ARC * constants.gamma() * (2.0 / kappa_bar.sqrt()).min(1.0);
    geometric_window(
        arc / ((1.0 + ratio) * v),
        DEFAULT_WINDOW_POINTS,
        DEFAULT_WINDOW_RATIO,
    )
}

fn check_dts(dts: &[f64]) -> Result<()> {
    if let Some(&bad) = dts.iter().find(|&&dt| !(dt.is_finite() && dt > 0.0)) {
        return Err(GeomError::InvalidArgument(format!(
            "time steps must be positive, got {bad}"
        )));
    }
    Ok(())
}

/// Squared distance from `psi' = U(dt) psi0` to the geodesic joining `psi0`
/// and `psi1 = U(2 dt) psi0`, for each `dt`.
pub fn curvature_deviation_curve(
    h: &HermitianOperator,
    psi0: &StateVector,
    dts: &[f64],
    constants: &PhysicalConstants,
) -> Result<Vec<(f64, f64)>> {
    check_dims(h.dim(), psi0.dim())?;
    check_dts(dts)?;
    let spec = spectral(h);
    let g2 = constants.gamma().powi(2);
    dts.iter()
        .map(|&dt| {
            let mid = spec.evolve(psi0, dt, constants)?;
            let end = spec.evolve(psi0, 2.0 * dt, constants)?;
            let geo = geodesic_between(psi0, &end)?;
            let (f, _) = geodesic_infidelity(&mid, &geo)?;
            Ok((dt, g2 * f))
        })
        .collect()
}

/// `1 - I2` for `psi1 = U(dt') psi'`, `psi' = U(dt) psi0`, `dt' = ratio * dt`,
/// measured against the plane spanned by `psi0` and `psi'`.
pub fn torsion_deviation_curve(
    h: &HermitianOperator,
    psi0: &StateVector,
    dts: &[f64],
    dt_prime_ratio: f64,
    constants: &PhysicalConstants,
) -> Result<Vec<(f64, f64)>> {
    check_dims(h.dim(), psi0.dim())?;
    check_dts(dts)?;
    if !(dt_prime_ratio.is_finite() && dt_prime_ratio > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "dt' / dt must be positive, got {dt_prime_ratio}"
        )));
    }
    let spec = spectral(h);
    dts.iter()
        .map(|&dt| {
            let mid = spec.evolve(psi0, dt, constants)?;
            let end = spec.evolve(&mid, dt_prime_ratio * dt, constants)?;
            let plane = evolution_plane(psi0, &mid)?;
            Ok((dt, plane_deficit(&plane, &end)?))
        })
        .collect()
}

fn least_squares(points: &[(f64, f64)]) -> ScalingFit {
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let prefactor = intercept.exp();
    let residual = points
        .iter()
        .map(|&(dt, v)| (prefactor * dt.powf(exponent) / v - 1.0).abs())
        .fold(0.0, f64::max);
    ScalingFit {
        exponent,
        prefactor,
        residual,
        window: points.iter().map(|p| p.0).collect(),
    }
}

fn check_fit_input(curve: &[(f64, f64)], needed: usize) -> Result<()> {
    if curve.len() < needed {
        return Err(GeomError::TooFewPoints {
            needed,
            got: curve.len(),
        });
    }
    if let Some((index, &(_, value))) = curve.iter().enumerate().find(|(_, p)| !(p.1 > 0.0)) {
        return Err(GeomError::NonPositiveValues { index, value });
    }
    if let Some(&(dt, _)) = curve.iter().find(|p| !(p.0 > 0.0 && p.0.is_finite())) {
        return Err(GeomError::InvalidArgument(format!(
            "time steps must be positive, got {dt}"
        )));
    }
    let distinct = curve.windows(2).any(|w| w[0].0 != w[1].0);
    if !distinct {
        return Err(GeomError::InvalidArgument(
            "fit needs at least two distinct time steps".into(),
        ));
    }
    Ok(())
}

/// Least-squares line through `(ln dt, ln value)`.
pub fn fit_power_law(curve: &[(f64, f64)]) -> Result<ScalingFit> {
    check_fit_input(curve, MIN_RAW_POINTS)?;
    Ok(least_squares(curve))
}

/// Drops points at or below [`NOISE_FLOOR`], then fits the rest. Fails with
/// `TooFewPoints` when fewer than [`MIN_FIT_POINTS`] survive, which is the
/// expected outcome for a curve that is identically zero.
pub fn fit_above_noise_floor(curve: &[(f64, f64)]) -> Result<ScalingFit> {
    let kept: Vec<(f64, f64)> = curve
        .iter()
        .copied()
        .filter(|p| p.1 > NOISE_FLOOR)
        .collect();
    check_fit_input(&kept, MIN_FIT_POINTS)?;
    Ok(least_squares(&kept))
}

/// Prefactor of the curvature law `d^2 = gamma^2 kappa dt^4 / (4 hbar^4)`.
pub fn curvature_prefactor(kappa: f64, constants: &PhysicalConstants) -> f64 {
    constants.gamma().powi(2) * kappa / (4.0 * constants.hbar().powi(4))
}

/// Prefactor of the torsion law `1 - I2 = tau dt'^2 (dt + dt')^2 / (4 hbar^4)`
/// in units of `dt^4`, for `dt' = ratio * dt`.
///
/// The out-of-plane component of `psi(dt + dt')` against the plane through
/// `psi(0)` and `psi(dt)` is the interpolation error `T (T - dt) psi''/2`
/// with `T = dt + dt'`, so the deficit vanishes as `dt' -> 0`.
pub fn torsion_prefactor(tau: f64, ratio: f64, constants: &PhysicalConstants) -> f64 {
    tau * (ratio * (1.0 + ratio)).powi(2) / (4.0 * constants.hbar().powi(4))
}

/// Radius of the circle through an arc of length `s = v 2 dt` whose midpoint
/// sits at distance `d` from the chord: `(s/2)^2 / (2 d)`.
pub fn circle_radius_estimate(speed: f64, dt: f64, deviation: f64) -> f64 {
    let half = speed * dt;
    half * half / (2.0 * deviation)
}

/// `|(dH)^2 psi - <(dH)^2> psi|`; zero exactly for states that move along a
/// geodesic.
pub fn geodesic_eigencondition_residual(h: &HermitianOperator, psi: &StateVector) -> Result<f64> {
    let d = DeltaPowers::new(h, psi)?;
    let r = &d.second - &d.psi * Complex64::new(d.var(), 0.0);
    Ok(r.norm())
}

/// `(v_i + e^{i alpha} v_j) / sqrt(2)` from two eigenvectors.
pub fn make_geodesic_state(
    spec: &SpectralDecomposition,
    i: usize,
    j: usize,
    alpha: f64,
) -> Result<StateVector> {
    let dim = spec.dim();
    for index in [i, j] {
        if index >= dim {
            return Err(GeomError::IndexOutOfRange { index, dim });
        }
    }
    if i == j {
        return Err(GeomError::RepeatedIndex(i));
    }
    let vi = spec.eigenvectors()[i].amplitudes();
    let vj = spec.eigenvectors()[j].amplitudes();
    StateVector::from_dvector(
        (vi + vj * Complex64::from_polar(1.0, alpha)) / Complex64::new(2f64.sqrt(), 0.0),
    )
}

/// Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli() -> [DMatrix<Complex64>; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        DMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    ]
}

/// Norm tolerance on the axis of [`two_level_hamiltonian`].
pub const AXIS_TOL: f64 = 1e-12;

/// `omega (n . sigma) + epsilon`, the general two-level Hamiltonian.
pub fn two_level_hamiltonian(omega: f64, n: [f64; 3], epsilon: f64) -> Result<HermitianOperator> {
    let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= AXIS_TOL) {
        return Err(GeomError::NonUnitAxis { norm });
    }
    if !(omega.is_finite() && epsilon.is_finite()) {
        return Err(GeomError::NonFinite("two-level parameters"));
    }
    let [sx, sy, sz] = pauli();
    let m = (sx * Complex64::new(n[0], 0.0)
        + sy * Complex64::new(n[1], 0.0)
        + sz * Complex64::new(n[2], 0.0))
        * Complex64::new(omega, 0.0)
        + DMatrix::identity(2, 2) * Complex64::new(epsilon, 0.0);
    HermitianOperator::new(m)
}

/// Moments of the energy distribution `p_k = |<v_k|psi>|^2` over the
/// eigenvalues. Shares nothing with the operator-based moment code beyond
/// the eigendecomposition.
pub fn classical_moments(spec: &SpectralDecomposition, psi: &StateVector) -> Result<MomentSet> {
    check_dims(spec.dim(), psi.dim())?;
    let weights: Vec<f64> = spec
        .eigenvectors()
        .iter()
        .map(|v| v.amplitudes().dotc(psi.amplitudes()).norm_sqr())
        .collect();
    let total: f64 = weights.iter().sum();
    let e = spec.eigenvalues();
    let mean = weights.iter().zip(e).map(|(w, x)| w * x).sum::<f64>() / total;
    let central = |k: i32| {
        weights
            .iter()
            .zip(e)
            .map(|(w, x)| w * (x - mean).powi(k))
            .sum::<f64>()
            / total
    };
    Ok(MomentSet {
        mean,
        var: central(2),
        central3: central(3),
        central4: central(4),
    })
}

/// `exp(-i H t / hbar)` by a scaled Taylor series and repeated squaring.
pub fn series_propagator(h: &HermitianOperator, t: f64, hbar: f64) -> DMatrix<Complex64> {
    let n = h.dim();
    let a = h.matrix() * Complex64::new(0.0, -t / hbar);
    let norm = a.norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let a = a / Complex64::new(2f64.powi(squarings), 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Deterministic generator for suite number `stream` under `seed`.
pub fn suite_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `(A + A^dagger) / 2` with standard normal entries, scaled to unit
/// Frobenius norm.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<HermitianOperator> {
    let a = DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let h = (&a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let norm = h.norm();
    HermitianOperator::new(h / Complex64::new(norm, 0.0))
}

/// Normalized vector with standard normal complex amplitudes.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<StateVector> {
    StateVector::from_dvector(DVector::from_fn(dim, |_, _| complex_normal(rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{curvature, torsion};
    use crate::quantum::{evolve, moments};
    use approx::assert_abs_diff_eq;

    fn uniform3() -> (HermitianOperator, StateVector) {
        (
            HermitianOperator::diagonal(&[0.0, 1.0, 3.0]).unwrap(),
            StateVector::from_real(&[1.0, 1.0, 1.0]).unwrap(),
        )
    }

    #[test]
    fn exact_power_laws_are_recovered() {
        let dts = geometric_window(1e-2, 8, 0.5).unwrap();
        let quartic: Vec<_> = dts.iter().map(|&t| (t, 7.0 * t.powi(4))).collect();
        let fit = fit_power_law(&quartic).unwrap();
        assert_abs_diff_eq!(fit.exponent, 4.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.prefactor, 7.0, epsilon = 1e-9);
        assert!(fit.residual < 1e-10);
        let quad: Vec<_> = dts.iter().map(|&t| (t, 3.0 * t * t)).collect();
        let fit = fit_power_law(&quad).unwrap();
        assert_abs_diff_eq!(fit.exponent, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.prefactor, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn fit_input_errors() {
        let dts = geometric_window(1e-2, 6, 0.5).unwrap();
        let mut curve: Vec<_> = dts.iter().map(|&t| (t, t)).collect();
        curve[3].1 = 0.0;
        assert_eq!(
            fit_power_law(&curve),
            Err(GeomError::NonPositiveValues {
                index: 3,
                value: 0.0
            })
        );
        assert!(matches!(
            fit_power_law(&curve[..4]),
            Err(GeomError::TooFewPoints { .. })
        ));
        let flat: Vec<_> = dts.iter().map(|&t| (t, 1e-20)).collect();
        assert!(matches!(
            fit_above_noise_floor(&flat),
            Err(GeomError::TooFewPoints { needed: 5, got: 0 })
        ));
    }

    #[test]
    fn window_validation() {
        assert!(geometric_window(0.0, 8, 0.5).is_err());
        assert!(geometric_window(1.0, 8, 1.0).is_err());
        assert!(geometric_window(1.0, 5, 0.5).is_err());
        let w = geometric_window(1.0, 6, 0.25).unwrap();
        assert_eq!(w.len(), 6);
        assert!(w.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn default_window_starts_at_tenth_of_gamma() {
        let k = PhysicalConstants::default();
        let (h, psi) = uniform3();
        let w = default_window(&h, &psi, &k).unwrap();
        let v = evolution_speed(&h, &psi, &k).unwrap();
        assert_abs_diff_eq!(v * 2.0 * w[0], 0.1 * k.gamma(), epsilon = 1e-15);
        assert_eq!(w.len(), 8);
        let e = StateVector::basis(3, 0).unwrap();
        assert!(default_window(&h, &e, &k).is_err());
    }

    #[test]
    fn adaptive_window_caps_the_arc() {
        let k = PhysicalConstants::default();
        let (h, psi) = uniform3();
        // kappa_bar = 1/2: only the step ratio matters.
        assert_eq!(
            adaptive_window(&h, &psi, 1.0, &k).unwrap(),
            default_window(&h, &psi, &k).unwrap()
        );
        let v = evolution_speed(&h, &psi, &k).unwrap();
        let w = adaptive_window(&h, &psi, 2.0, &k).unwrap();
        assert_abs_diff_eq!(v * 3.0 * w[0], 0.1 * k.gamma(), epsilon = 1e-15);

        // Near-eigenstate: kappa_bar >> 4, so the arc shrinks to 0.2 R.
        let near = StateVector::from_real(&[1.0, 0.05, 0.05]).unwrap();
        let kb = crate::curvature::curvature_dimensionless(&h, &near).unwrap();
        assert!(kb > 4.0);
        let w = adaptive_window(&h, &near, 1.0, &k).unwrap();
        let v = evolution_speed(&h, &near, &k).unwrap();
        assert_abs_diff_eq!(v * 2.0 * w[0], 0.2 * k.gamma() / kb.sqrt(), epsilon = 1e-15);
        assert!(adaptive_window(&h, &psi, 0.0, &k).is_err());
    }

    #[test]
    fn curvature_curve_three_level() {
        let k = PhysicalConstants::default();
        let (h, psi) = uniform3();
        let curve = curvature_deviation_curve(&h, &psi, &[1e-2], &k).unwrap();
        let expect = 4.0 / 4.0 * 98.0 / 81.0 * 1e-8;
        assert!((curve[0].1 / expect - 1.0).abs() < 0.02);

        let dts = geometric_window(1e-2, 6, 0.5).unwrap();
        let curve = curvature_deviation_curve(&h, &psi, &dts, &k).unwrap();
        let fit = fit_power_law(&curve).unwrap();
        assert!((fit.exponent - 4.0).abs() < 0.05, "{fit:?}");
        let pred = curvature_prefactor(98.0 / 81.0, &k);
        assert!(
            (fit.prefactor / pred - 1.0).abs() < 0.01,
            "{fit:?} vs {pred}"
        );
    }

    #[test]
    fn curvature_curve_vanishes_for_stationary_and_geodesic_states() {
        let k = PhysicalConstants::default();
        let (h, _) = uniform3();
        let dts = geometric_window(1e-1, 6, 0.5).unwrap();
        let e = StateVector::basis(3, 2).unwrap();
        assert!(curvature_deviation_curve(&h, &e, &dts, &k)
            .unwrap()
            .iter()
            .all(|p| p.1 == 0.0));
        let g = make_geodesic_state(&spectral(&h), 0, 2, 0.3).unwrap();
        assert!(curvature_deviation_curve(&h, &g, &dts, &k)
            .unwrap()
            .iter()
            .all(|p| p.1 <= 1e-12 * 4.0));
    }

    #[test]
    fn torsion_curve_three_level() {
        let k = PhysicalConstants::default();
        let (h, psi) = uniform3();
        let tau = 6.0 / 7.0;
        let c1 = torsion_deviation_curve(&h, &psi, &[1e-2], 1.0, &k).unwrap();
        assert!((c1[0].1 / (tau * 1e-8) - 1.0).abs() < 0.02, "{c1:?}");
        // dt' = 2 dt: dt'^2 (dt + dt')^2 / 4 = 9 dt^4.
        let c2 = torsion_deviation_curve(&h, &psi, &[1e-2], 2.0, &k).unwrap();
        assert!((c2[0].1 / (9.0 * tau * 1e-8) - 1.0).abs() < 0.02, "{c2:?}");
        assert_abs_diff_eq!(torsion_prefactor(tau, 2.0, &k), 9.0 * tau, epsilon = 1e-14);
        // dt' -> 0 leaves psi1 in the plane.
        let c0 = torsion_deviation_curve(&h, &psi, &[1e-2], 1e-6, &k).unwrap();
        assert!(c0[0].1 < 1e-18, "{c0:?}");
        assert!(torsion_deviation_curve(&h, &psi, &[1e-2], 0.0, &k).is_err());
    }

    #[test]
    fn torsion_curve_two_level_is_flat() {
        let k = PhysicalConstants::default();
        let h = two_level_hamiltonian(1.3, [0.0, 0.6, 0.8], 0.2).unwrap();
        let psi = StateVector::from_real(&[0.9, 0.3]).unwrap();
        let dts = geometric_window(1e-1, 8, 0.5).unwrap();
        let curve = torsion_deviation_curve(&h, &psi, &dts, 1.0, &k).unwrap();
        assert!(curve.iter().all(|p| p.1 <= 1e-12), "{curve:?}");
    }

    #[test]
    fn eigencondition_residual_examples() {
        let (h, psi) = uniform3();
        let s = spectral(&h);
        for alpha in [0.0, 1.0, std::f64::consts::PI] {
            let g = make_geodesic_state(&s, 0, 1, alpha).unwrap();
            assert!(geodesic_eigencondition_residual(&h, &g).unwrap() < 1e-10);
            assert!(curvature(&h, &g).unwrap() < 1e-20);
        }
        let e = StateVector::basis(3, 1).unwrap();
        assert_eq!(geodesic_eigencondition_residual(&h, &e).unwrap(), 0.0);

        // (dH)^2 psi - m2 psi with dH = diag(-4/3, -1/3, 5/3), m2 = 14/9:
        // components (16/9 - 14/9, 1/9 - 14/9, 25/9 - 14/9) / sqrt3 = (2, -13, 11) / (9 sqrt3).
        let expect = ((4.0 + 169.0 + 121.0) / 3.0f64).sqrt() / 9.0;
        assert_abs_diff_eq!(
            geodesic_eigencondition_residual(&h, &psi).unwrap(),
            expect,
            epsilon = 1e-14
        );
        // The residual squared is the curvature.
        assert_abs_diff_eq!(expect * expect, 98.0 / 81.0, epsilon = 1e-14);
    }

    #[test]
    fn geodesic_states_stay_geodesic() {
        let k = PhysicalConstants::default();
        let (h, _) = uniform3();
        let s = spectral(&h);
        let g = make_geodesic_state(&s, 1, 2, 2.2).unwrap();
        for t in [0.1, 1.7, 13.0] {
            let later = evolve(&h, &g, t, &k).unwrap();
            assert!(geodesic_eigencondition_residual(&h, &later).unwrap() < 1e-10);
        }
        assert_eq!(
            make_geodesic_state(&s, 1, 1, 0.0),
            Err(GeomError::RepeatedIndex(1))
        );
        assert!(matches!(
            make_geodesic_state(&s, 0, 3, 0.0),
            Err(GeomError::IndexOutOfRange { index: 3, dim: 3 })
        ));
    }

    #[test]
    fn two_level_examples() {
        let h = two_level_hamiltonian(2.5, [0.0, 0.0, 1.0], 0.0).unwrap();
        assert_eq!(h, HermitianOperator::diagonal(&[2.5, -2.5]).unwrap());
        let sx = two_level_hamiltonian(1.0, [1.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(sx.matrix(), &pauli()[0]);
        let s = spectral(&sx);
        assert_abs_diff_eq!(s.eigenvalues()[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues()[1], 1.0, epsilon = 1e-14);
        let r = 1.0 / 2f64.sqrt();
        let h = two_level_hamiltonian(2.0, [r, 0.0, r], 1.0).unwrap();
        let s = spectral(&h);
        assert_abs_diff_eq!(s.eigenvalues()[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.eigenvalues()[1], 3.0, epsilon = 1e-14);
        assert!(matches!(
            two_level_hamiltonian(1.0, [1.0, 1.0, 0.0], 0.0),
            Err(GeomError::NonUnitAxis { .. })
        ));
    }

    #[test]
    fn classical_moments_agree_with_operator_moments() {
        let (h, psi) = uniform3();
        let m = classical_moments(&spectral(&h), &psi).unwrap();
        assert_abs_diff_eq!(m.var, 14.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.central3, 20.0 / 27.0, epsilon = 1e-14);
        assert_abs_diff_eq!(m.central4, 98.0 / 27.0, epsilon = 1e-14);
        let mut rng = suite_rng(7, 0);
        let h = random_hermitian(&mut rng, 5).unwrap();
        let psi = random_state(&mut rng, 5).unwrap();
        let a = classical_moments(&spectral(&h), &psi).unwrap();
        let b = moments(&h, &psi).unwrap();
        for (x, y) in [
            (a.var, b.var),
            (a.central3, b.central3),
            (a.central4, b.central4),
        ] {
            assert!((x - y).abs() <= 1e-10 * y.abs().max(1e-3), "{x} vs {y}");
        }
    }

    #[test]
    fn series_propagator_agrees_with_spectral() {
        let k = PhysicalConstants::default();
        let mut rng = suite_rng(11, 0);
        let h = random_hermitian(&mut rng, 4).unwrap();
        let psi = random_state(&mut rng, 4).unwrap();
        for t in [0.01, 1.0, 37.0] {
            let u = series_propagator(&h, t, 1.0);
            let a = &u * psi.amplitudes();
            let b = evolve(&h, &psi, t, &k).unwrap();
            assert!((a - b.amplitudes()).norm() < 1e-9);
        }
    }

    #[test]
    fn random_generators_are_reproducible() {
        let a = random_hermitian(&mut suite_rng(3, 1), 4).unwrap();
        let b = random_hermitian(&mut suite_rng(3, 1), 4).unwrap();
        let c = random_hermitian(&mut suite_rng(3, 2), 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_abs_diff_eq!(a.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn ordering_on_three_level() {
        let (h, psi) = uniform3();
        let t = torsion(&h, &psi).unwrap();
        assert!(t >= 0.0 && t <= curvature(&h, &psi).unwrap());
    }
}
