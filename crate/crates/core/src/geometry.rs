//! Compact sets represented as finite nets, and the open domains they must
//! sit inside.
//!
//! A [`CompactCarrier`] is a nonempty finite list of points together with a
//! resolution `η`: every point of the represented set lies within `η` of the
//! net and every net point lies within `η` of the set. Distances to the set are
//! therefore only known up to an interval of width `η`, and every predicate in
//! this module folds that error in before comparing.

use crate::error::{Error, Result};
use crate::Point;
use rstar::RTree;
use std::fmt;

/// A finite `η`-net standing in for a totally bounded compact set.
#[derive(Clone)]
pub struct CompactCarrier {
    net: Vec<Point>,
    resolution: f64,
    index: RTree<[f64; 2]>,
}

impl fmt::Debug for CompactCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompactCarrier")
            .field("points", &self.net.len())
            .field("resolution", &self.resolution)
            .finish()
    }
}

impl CompactCarrier {
    pub fn new(net: Vec<Point>, resolution: f64) -> Result<Self> {
        if net.is_empty() {
            return Err(Error::InvalidArgument("carrier net must be nonempty".into()));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "carrier resolution must be positive and finite, got {resolution}"
            )));
        }
        if let Some(bad) = net.iter().find(|z| !is_finite(**z)) {
            return Err(Error::InvalidArgument(format!("non-finite net point {bad}")));
        }
        let index = RTree::bulk_load(net.iter().map(|z| [z.re, z.im]).collect());
        Ok(Self { net, resolution, index })
    }

    pub fn net(&self) -> &[Point] {
        &self.net
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Distance from `z` to the nearest net point.
    pub fn nearest_net_distance(&self, z: Point) -> f64 {
        let nearest = self
            .index
            .nearest_neighbor(&[z.re, z.im])
            .expect("carrier net is nonempty");
        (z - Point::new(nearest[0], nearest[1])).norm()
    }

    /// Axis-aligned bounding box of the net as `(lower-left, upper-right)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        let env = self.index.root().envelope();
        let (lo, hi) = (env.lower(), env.upper());
        (Point::new(lo[0], lo[1]), Point::new(hi[0], hi[1]))
    }
}

pub(crate) fn is_finite(z: Point) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// A closed interval `[lo, hi]` of certified bounds on a real quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceBounds {
    pub lo: f64,
    pub hi: f64,
}

impl DistanceBounds {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }
}

/// Two-sided bounds on `ρ(z, K)`.
///
/// With `d` the distance to the nearest net point, the true distance lies in
/// `[max(d - η, 0), d]`.
pub fn dist_to_carrier(z: Point, carrier: &CompactCarrier) -> DistanceBounds {
    let d = carrier.nearest_net_distance(z);
    DistanceBounds {
        lo: (d - carrier.resolution).max(0.0),
        hi: d,
    }
}

/// Outcome of testing membership in an inflation `K_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// The distance interval straddles `r`.
    Uncertain,
}

/// Decides `z ∈ K_r = {w : ρ(w, K) ≤ r}` as far as the net allows.
pub fn inflate_contains(carrier: &CompactCarrier, r: f64, z: Point) -> Membership {
    let bounds = dist_to_carrier(z, carrier);
    if bounds.hi <= r {
        Membership::Inside
    } else if bounds.lo > r {
        Membership::Outside
    } else {
        Membership::Uncertain
    }
}

/// An open subset of the plane with a closed-form distance to its complement.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainDescriptor {
    Disk { center: Point, radius: f64 },
    Annulus { center: Point, inner: f64, outer: f64 },
    Rectangle { lo: Point, hi: Point },
    PuncturedPlane { points: Vec<Point> },
}

impl DomainDescriptor {
    pub fn disk(center: Point, radius: f64) -> Result<Self> {
        let d = Self::Disk { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn annulus(center: Point, inner: f64, outer: f64) -> Result<Self> {
        let d = Self::Annulus { center, inner, outer };
        d.validate()?;
        Ok(d)
    }

    pub fn rectangle(lo: Point, hi: Point) -> Result<Self> {
        let d = Self::Rectangle { lo, hi };
        d.validate()?;
        Ok(d)
    }

    pub fn punctured_plane(points: Vec<Point>) -> Result<Self> {
        let d = Self::PuncturedPlane { points };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match self {
            Self::Disk { center, radius } => {
                if !is_finite(*center) || !(*radius > 0.0 && radius.is_finite()) {
                    return bad(format!("disk needs a finite center and positive radius, got {radius}"));
                }
            }
            Self::Annulus { center, inner, outer } => {
                if !is_finite(*center) || !(*inner >= 0.0 && inner < outer && outer.is_finite()) {
                    return bad(format!("annulus radii must satisfy 0 <= {inner} < {outer}"));
                }
            }
            Self::Rectangle { lo, hi } => {
                if !is_finite(*lo) || !is_finite(*hi) || !(lo.re < hi.re && lo.im < hi.im) {
                    return bad(format!("rectangle corners {lo} and {hi} are not ordered"));
                }
            }
            Self::PuncturedPlane { points } => {
                if points.is_empty() {
                    return bad("punctured plane needs at least one excluded point".into());
                }
                if points.iter().any(|p| !is_finite(*p)) {
                    return bad("excluded points must be finite".into());
                }
                for (i, p) in points.iter().enumerate() {
                    if points[i + 1..].contains(p) {
                        return bad(format!("excluded point {p} listed twice"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lower bound on `ρ(z, ℂ \ U)`, exact for every descriptor shape.
///
/// A nonpositive value means `z` is not certifiably inside `U`.
pub fn dist_to_complement(z: Point, domain: &DomainDescriptor) -> f64 {
    match domain {
        DomainDescriptor::Disk { center, radius } => radius - (z - center).norm(),
        DomainDescriptor::Annulus { center, inner, outer } => {
            let r = (z - center).norm();
            (r - inner).min(outer - r)
        }
        DomainDescriptor::Rectangle { lo, hi } => (z.re - lo.re).min(hi.re - z.re).min(z.im - lo.im).min(hi.im - z.im),
        DomainDescriptor::PuncturedPlane { points } => {
            points.iter().map(|p| (z - p).norm()).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Evidence that `K_r ⊂ U` for the stated margin `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContainmentCertificate {
    /// The certified inflation radius `r`.
    pub margin: f64,
    pub net_resolution: f64,
    /// Minimum of `dist_to_complement` over the net.
    pub min_clearance: f64,
}

/// Certifies `K ⊂⊂ U`.
///
/// With `m` the minimum clearance of the net, the margin is `r = (m - η) / 2`.
/// Any `w` with `ρ(w, K) ≤ r` is within `r + η < m` of a net point, so
/// `K_r ⊂ U`. The margin must also exceed `2η`.
pub fn well_contained(carrier: &CompactCarrier, domain: &DomainDescriptor) -> Result<ContainmentCertificate> {
    domain.validate()?;
    let eta = carrier.resolution();
    let min_clearance = carrier
        .net()
        .iter()
        .map(|z| dist_to_complement(*z, domain))
        .fold(f64::INFINITY, f64::min);
    let margin = (min_clearance - eta) / 2.0;
    if min_clearance - eta > 0.0 && margin > 2.0 * eta {
        Ok(ContainmentCertificate {
            margin,
            net_resolution: eta,
            min_clearance,
        })
    } else {
        Err(Error::ContainmentNotCertified {
            min_clearance,
            resolution: eta,
            required: 2.0 * eta,
        })
    }
}
