use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use quantum_geometry::oracles::{fit_power_law, geometric_window};
use quantum_geometry::prelude::*;

fn amplitudes(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_map(|v| {
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect()
        })
        .prop_filter("nonzero", |v: &Vec<Complex64>| {
            v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-2
        })
}

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    amplitudes(dim).prop_map(|v| StateVector::new(v).unwrap())
}

fn hamiltonian(dim: usize) -> impl Strategy<Value = HermitianOperator> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim * dim).prop_map(move |v| {
        let m = DMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(v[i * dim + j].0, v[i * dim + j].1)
        });
        HermitianOperator::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0)).unwrap()
    })
}

fn pair() -> impl Strategy<Value = (StateVector, StateVector)> {
    (2usize..=6).prop_flat_map(|d| (state(d), state(d)))
}

fn system() -> impl Strategy<Value = (HermitianOperator, StateVector)> {
    (2usize..=6).prop_flat_map(|d| (hamiltonian(d), state(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_ignore_global_phase((a, b) in pair(), al in 0.0..2.0 * PI, be in 0.0..2.0 * PI) {
        let k = PhysicalConstants::default();
        let (pa, pb) = (a.with_phase(al), b.with_phase(be));
        prop_assert!((fubini_study_distance(&a, &b, &k).unwrap()
            - fubini_study_distance(&pa, &pb, &k).unwrap()).abs() < 1e-14);
        prop_assert!((wootters_distance(&a, &b, &k).unwrap()
            - wootters_distance(&pa, &pb, &k).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn fubini_study_never_exceeds_wootters((a, b) in pair()) {
        let k = PhysicalConstants::default();
        let fs = fubini_study_distance(&a, &b, &k).unwrap();
        let w = wootters_distance(&a, &b, &k).unwrap();
        // sin x <= x, and d_W <= gamma pi / 2.
        prop_assert!(fs <= w + 1e-15);
        prop_assert!(w <= k.gamma() * PI / 2.0 + 1e-15);
    }

    #[test]
    fn distances_agree_at_small_separation((a, b) in pair(), e in -6.0f64..-3.0) {
        let k = PhysicalConstants::default();
        let delta = 10f64.powf(e);
        let w = b.amplitudes() - a.amplitudes() * a.amplitudes().dotc(b.amplitudes());
        prop_assume!(w.norm() > 1e-3);
        let near = StateVector::from_dvector(
            a.amplitudes() * Complex64::new((1.0 - delta * delta).sqrt(), 0.0)
                + w.normalize() * Complex64::new(delta, 0.0),
        ).unwrap();
        let fs = fubini_study_distance(&a, &near, &k).unwrap();
        let wd = wootters_distance(&a, &near, &k).unwrap();
        prop_assert!((fs - wd).abs() / wd <= delta * delta);
    }

    #[test]
    fn geodesic_depends_only_on_rays((a, b) in pair(), al in 0.0..2.0 * PI, be in 0.0..2.0 * PI, xi in 0.0f64..=1.0) {
        let g = geodesic_between(&a, &b).unwrap();
        let h = geodesic_between(&a.with_phase(al), &b.with_phase(be)).unwrap();
        let (p, q) = (point_xi(&g, xi).unwrap(), point_xi(&h, xi).unwrap());
        prop_assert!(1.0 - inner_product(&p, &q).unwrap().norm() < 1e-12);
    }

    #[test]
    fn geodesic_splits_length_additively((a, b) in pair(), theta in 0.0..=PI) {
        let k = PhysicalConstants::default();
        let g = geodesic_between(&a, &b).unwrap();
        let mid = point_theta(&g, theta).unwrap();
        let total = geodesic_length(&g, &k);
        let parts = wootters_distance(&a, &mid, &k).unwrap() + wootters_distance(&mid, &b, &k).unwrap();
        prop_assert!((parts - total).abs() < 1e-9);
    }

    #[test]
    fn evolution_preserves_norm_and_energy((h, psi) in system(), t in 0.0f64..100.0) {
        let k = PhysicalConstants::default();
        let out = evolve(&h, &psi, t, &k).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        let (m0, m1) = (moments(&h, &psi).unwrap(), moments(&h, &out).unwrap());
        prop_assert!((m0.mean - m1.mean).abs() < 1e-10);
        prop_assert!((m0.var - m1.var).abs() < 1e-10);
        prop_assert!((curvature(&h, &psi).unwrap() - curvature(&h, &out).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn coefficients_are_ordered((h, psi) in system()) {
        let kappa = curvature(&h, &psi).unwrap();
        let tau = torsion(&h, &psi).unwrap();
        prop_assert!(tau >= 0.0);
        prop_assert!(tau <= kappa + 1e-14);
    }

    #[test]
    fn coefficients_scale_with_hamiltonian((h, psi) in system(), s in 0.1f64..10.0) {
        // kappa and tau are quartic in H; the dimensionless forms are scale-free.
        let scaled = h.scaled(s);
        let kappa = curvature(&h, &psi).unwrap();
        prop_assert!((curvature(&scaled, &psi).unwrap() - s.powi(4) * kappa).abs() <= 1e-10 * s.powi(4).max(1.0));
        let m = moments(&h, &psi).unwrap();
        prop_assume!(m.var > 1e-3);
        let a = curvature_dimensionless(&h, &psi).unwrap();
        let b = curvature_dimensionless(&scaled, &psi).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0));
    }

    #[test]
    fn plane_contains_its_generators((h, psi) in system(), dt in 1e-3f64..0.5) {
        let k = PhysicalConstants::default();
        let next = evolve(&h, &psi, dt, &k).unwrap();
        let plane = match evolution_plane(&psi, &next) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        prop_assert!(plane_deficit(&plane, &psi).unwrap() < 1e-20);
        prop_assert!(plane_deficit(&plane, &next).unwrap() < 1e-20);
    }

    #[test]
    fn fit_recovers_exact_power_laws(c in 0.01f64..100.0, p in 1.0f64..6.0, start in 1e-3f64..1.0) {
        let window = geometric_window(start, 8, 0.5).unwrap();
        let curve: Vec<(f64, f64)> = window.iter().map(|&t| (t, c * t.powf(p))).collect();
        let fit = fit_power_law(&curve).unwrap();
        prop_assert!((fit.exponent - p).abs() < 1e-9);
        prop_assert!((fit.prefactor / c - 1.0).abs() < 1e-8);
    }
}
