//! Geometry of quantum evolution under a time-independent Hamiltonian.
//!
//! Given a Hamiltonian `H` and a pure state `psi`, this crate computes the
//! Fubini-Study and Wootters distances between rays, the metric on
//! parametrized families of states, the speed of evolution, geodesics
//! between two rays, and the curvature and torsion of the evolution curve.
//! The [`oracles`] module re-derives curvature and torsion from finite-time
//! geometry, and [`verify`] runs randomized property suites over all of it.
//!
//! ```
//! use quantum_geometry::prelude::*;
//!
//! let h = HermitianOperator::diagonal(&[0.0, 1.0, 3.0]).unwrap();
//! let psi = StateVector::from_real(&[1.0, 1.0, 1.0]).unwrap();
//! let report = geometry_report(&h, &psi, &PhysicalConstants::default()).unwrap();
//! assert!((report.kappa_bar.unwrap() - 0.5).abs() < 1e-12);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvature;
pub mod error;
pub mod geodesic;
pub mod geometry;
pub mod oracles;
pub mod quantum;
pub mod verify;

pub use error::{GeomError, Result};

pub mod prelude {
    pub use crate::curvature::{
        curvature, curvature_dimensionless, curvature_radius, distance_to_plane, evolution_plane,
        geometry_report, plane_deficit, plane_overlap, torsion, torsion_dimensionless,
        EvolutionPlane, GeometryReport,
    };
    pub use crate::error::{GeomError, Result};
    pub use crate::geodesic::{
        distance_to_geodesic, geodesic_between, geodesic_length, numeric_arc_length, point_theta,
        point_xi, GeodesicFamily,
    };
    pub use crate::geometry::{
        evolution_speed, fubini_study_distance, metric_tensor, wootters_distance, MetricTensor,
        ParamFamily,
    };
    pub use crate::quantum::{
        central_moment, evolve, inner_product, moments, spectral, HermitianOperator, MomentSet,
        PhysicalConstants, SpectralDecomposition, StateVector,
    };
}
