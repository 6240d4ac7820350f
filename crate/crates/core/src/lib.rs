//! Certified chains of polygonal paths between homotopic closed curves, and
//! contour integrals that stay invariant along them.
//!
//! ```
//! use std::sync::Arc;
//! use cauchy_chain::{linear_homotopy, parse_function, verify_homotopy_invariance, DomainDescriptor, PiecewisePath, Point};
//!
//! let origin = Point::new(0.0, 0.0);
//! let inner = Arc::new(PiecewisePath::unit_circle());
//! let outer = Arc::new(PiecewisePath::circle(origin, 1.5).unwrap());
//! let sigma = linear_homotopy(inner.clone(), outer.clone()).unwrap();
//! let ring = DomainDescriptor::annulus(origin, 0.25, 3.0).unwrap();
//! let f = parse_function("1/z", vec![origin]).unwrap();
//! let report = verify_homotopy_invariance(&f, inner, outer, &sigma, &ring, 1e-10).unwrap();
//! assert!(report.passed());
//! ```

pub mod approx;
pub mod error;
pub mod geometry;
pub mod homotopy;
pub mod integrate;
pub mod paths;
pub mod verify;

/// A point of the complex plane.
pub type Point = num_complex::Complex64;

pub use approx::{polygonal_approximation, PolygonalApproximation};
pub use error::{Error, ParseError, Result};
pub use geometry::{
    dist_to_carrier, dist_to_complement, inflate_contains, well_contained, CompactCarrier, ContainmentCertificate,
    DistanceBounds, DomainDescriptor, Membership,
};
pub use homotopy::{
    build_chain, homotopy_carrier, linear_homotopy, star_null_homotopy, Chain, Homotopy, LinkCertificate,
};
pub use integrate::{
    contour_integral, integral_along_chain, parse_expr, parse_function, AnalyticFunction, ChainIntegrals, Expr,
    IntegralResult,
};
pub use paths::{
    carrier_of_path, sup_distance, ClosedPath, Modulus, Path, PiecewisePath, Segment, SmoothSegment, TabulatedModulus,
};
pub use verify::{
    quantize_winding, verify_homotopy_invariance, verify_null_homotopic, winding_integral, winding_number, Verdict,
    VerificationReport,
};
