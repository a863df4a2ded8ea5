//! Geodesics between two rays.
//!
//! The geodesic joining `psi0` and `psi1` is the normalized superposition
//! `C[(1 - xi) psi0 + xi e^{i phi} psi1]`, `xi` in `[0, 1]`, where the phase
//! `e^{i phi} = <psi1|psi0> / |<psi1|psi0>|` makes `<psi0| e^{i phi} psi1>`
//! real and positive. That choice depends only on the two rays, not on the
//! representatives, and it is the phase of minimal length. The same curve is
//! also available in the angular parametrization
//! `C[sin(theta/2) psi0 + cos(theta/2) e^{i phi} psi1]`, `theta` in `[0, pi]`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::geometry::raw_infidelity;
use crate::quantum::{check_dims, PhysicalConstants, StateVector};

/// Overlap modulus at or below which endpoints count as orthogonal.
pub const ORTHOGONAL_TOL: f64 = 1e-12;

/// Points in the coarse scan of [`distance_to_geodesic`].
pub const COARSE_SCAN_POINTS: usize = 64;

/// Bracket width at which golden-section refinement stops.
pub const GOLDEN_TOL: f64 = 1e-12;

/// The geodesic through two non-orthogonal rays.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicFamily {
    psi0: StateVector,
    psi1: StateVector,
    phase: Complex64,
    overlap_mod: f64,
    /// `1 - overlap_mod^2`, kept separately for precision near coincidence.
    infidelity: f64,
    aligned1: DVector<Complex64>,
}

impl GeodesicFamily {
    pub fn psi0(&self) -> &StateVector {
        &self.psi0
    }

    pub fn psi1(&self) -> &StateVector {
        &self.psi1
    }

    /// `e^{i phi}`.
    pub fn phase(&self) -> Complex64 {
        self.phase
    }

    /// `|<psi1|psi0>|`.
    pub fn overlap_mod(&self) -> f64 {
        self.overlap_mod
    }

    /// `e^{i phi} psi1`.
    pub fn aligned_endpoint(&self) -> &DVector<Complex64> {
        &self.aligned1
    }
}

/// Builds the geodesic family with the canonical phase.
pub fn geodesic_between(psi0: &StateVector, psi1: &StateVector) -> Result<GeodesicFamily> {
    check_dims(psi0.dim(), psi1.dim())?;
    let ov = psi1.amplitudes().dotc(psi0.amplitudes());
    let overlap_mod = ov.norm();
    if overlap_mod <= ORTHOGONAL_TOL {
        return Err(GeomError::OrthogonalEndpoints {
            overlap: overlap_mod,
        });
    }
    let phase = ov / overlap_mod;
    let aligned1 = psi1.amplitudes() * phase;
    let infidelity = raw_infidelity(psi0.amplitudes(), psi1.amplitudes());
    Ok(GeodesicFamily {
        psi0: psi0.clone(),
        psi1: psi1.clone(),
        phase,
        overlap_mod: overlap_mod.min(1.0),
        infidelity,
        aligned1,
    })
}

/// `C(xi) = 1 / sqrt(1 - 2 xi (1 - xi)(1 - o))` for overlap modulus `o`.
pub fn normalization_xi(overlap_mod: f64, xi: f64) -> f64 {
    1.0 / (1.0 - 2.0 * xi * (1.0 - xi) * (1.0 - overlap_mod)).sqrt()
}

/// `C(theta) = 1 / sqrt(1 + o sin(theta))` for overlap modulus `o`.
pub fn normalization_theta(overlap_mod: f64, theta: f64) -> f64 {
    1.0 / (1.0 + overlap_mod * theta.sin()).sqrt()
}

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if !(value >= min && value <= max) {
        return Err(GeomError::OutOfRange {
            name,
            value,
            min,
            max,
        });
    }
    Ok(())
}

fn combine(g: &GeodesicFamily, w0: f64, w1: f64, norm: f64) -> Result<StateVector> {
    let v = (g.psi0.amplitudes() * Complex64::new(w0, 0.0) + &g.aligned1 * Complex64::new(w1, 0.0))
        * Complex64::new(norm, 0.0);
    StateVector::from_dvector(v)
}

/// Point of the geodesic at `xi` in `[0, 1]`.
pub fn point_xi(g: &GeodesicFamily, xi: f64) -> Result<StateVector> {
    check_range("xi", xi, 0.0, 1.0)?;
    if xi == 0.0 {
        return Ok(g.psi0.clone());
    }
    combine(g, 1.0 - xi, xi, normalization_xi(g.overlap_mod, xi))
}

/// Point of the geodesic at angle `theta` in `[0, pi]`; `theta = pi` is
/// `psi0` and `theta = 0` is `e^{i phi} psi1`.
pub fn point_theta(g: &GeodesicFamily, theta: f64) -> Result<StateVector> {
    check_range("theta", theta, 0.0, std::f64::consts::PI)?;
    let half = theta / 2.0;
    combine(
        g,
        half.sin(),
        half.cos(),
        normalization_theta(g.overlap_mod, theta),
    )
}

/// Closed-form length `gamma * arccos |<psi1|psi0>|`.
pub fn geodesic_length(g: &GeodesicFamily, constants: &PhysicalConstants) -> f64 {
    constants.gamma() * g.infidelity.sqrt().atan2(g.overlap_mod)
}

/// Line element along the angular parametrization,
/// `ds/dtheta = (gamma/2) sqrt(1 - o^2) / (1 + o sin theta)`.
pub fn arc_length_integrand(g: &GeodesicFamily, constants: &PhysicalConstants, theta: f64) -> f64 {
    0.5 * constants.gamma() * g.infidelity.sqrt() / (1.0 + g.overlap_mod * theta.sin())
}

/// Composite Simpson rule on `[a, b]` with `panels` panels of two
/// subintervals each.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Minimum number of Simpson panels accepted by [`numeric_arc_length`].
pub const MIN_PANELS: usize = 16;

/// Length of the geodesic by quadrature of the closed-form line element.
pub fn numeric_arc_length(
    g: &GeodesicFamily,
    constants: &PhysicalConstants,
    panels: usize,
) -> Result<f64> {
    if panels < MIN_PANELS {
        return Err(GeomError::TooFewPoints {
            needed: MIN_PANELS,
            got: panels,
        });
    }
    Ok(simpson(
        |th| arc_length_integrand(g, constants, th),
        0.0,
        std::f64::consts::PI,
        panels,
    ))
}

/// Length of the curve `C[(1 - xi) psi0 + xi e^{i phase} psi1]` for an
/// arbitrary phase, by Simpson quadrature of the Fubini-Study speed in `xi`.
/// For the canonical phase this reproduces [`geodesic_length`]; every other
/// phase gives a longer curve.
pub fn phase_family_length(
    psi0: &StateVector,
    psi1: &StateVector,
    phase: f64,
    constants: &PhysicalConstants,
    panels: usize,
) -> Result<f64> {
    check_dims(psi0.dim(), psi1.dim())?;
    if panels < MIN_PANELS {
        return Err(GeomError::TooFewPoints {
            needed: MIN_PANELS,
            got: panels,
        });
    }
    let p0 = psi0.amplitudes();
    let p1 = psi1.amplitudes() * Complex64::from_polar(1.0, phase);
    let velocity = &p1 - p0;
    let vv = velocity.norm_squared();
    let speed = |xi: f64| {
        let chi = p0 * Complex64::new(1.0 - xi, 0.0) + &p1 * Complex64::new(xi, 0.0);
        let cc = chi.norm_squared();
        let cv = chi.dotc(&velocity).norm_sqr();
        ((vv * cc - cv).max(0.0)).sqrt() / cc
    };
    Ok(constants.gamma() * simpson(speed, 0.0, 1.0, panels))
}

/// Smallest `1 - |<probe|psi(xi)>|^2` over the geodesic and its minimizer.
pub fn geodesic_infidelity(probe: &StateVector, g: &GeodesicFamily) -> Result<(f64, f64)> {
    check_dims(probe.dim(), g.psi0.dim())?;
    let p = probe.amplitudes();
    let f = |xi: f64| {
        let chi = g.psi0.amplitudes() * Complex64::new(1.0 - xi, 0.0)
            + &g.aligned1 * Complex64::new(xi, 0.0);
        raw_infidelity(&chi, p)
    };

    let last = COARSE_SCAN_POINTS - 1;
    let grid = |j: usize| j as f64 / last as f64;
    let (best, _) =
        (0..COARSE_SCAN_POINTS)
            .map(|j| (j, f(grid(j))))
            .fold(
                (0, f64::INFINITY),
                |acc, (j, v)| if v < acc.1 { (j, v) } else { acc },
            );

    let mut lo = grid(best.saturating_sub(1));
    let mut hi = grid((best + 1).min(last));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let mut best = (f(mid), mid);
    for x in [lo, hi] {
        let v = f(x);
        if v < best.0 {
            best = (v, x);
        }
    }
    Ok(best)
}

/// Fubini-Study distance from `probe` to the closest point of the geodesic,
/// and the `xi` of that point.
pub fn distance_to_geodesic(
    probe: &StateVector,
    g: &GeodesicFamily,
    constants: &PhysicalConstants,
) -> Result<(f64, f64)> {
    let (f, xi) = geodesic_infidelity(probe, g)?;
    Ok((constants.gamma() * f.sqrt(), xi))
}
