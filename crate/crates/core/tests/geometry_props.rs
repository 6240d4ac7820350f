mod common;

use cauchy_chain::{
    carrier_of_path, dist_to_carrier, dist_to_complement, well_contained, CompactCarrier, DomainDescriptor, Path,
    PiecewisePath, Point,
};
use common::{closed_path, origin, point};
use proptest::prelude::*;
use std::f64::consts::TAU;

/// Distance from `z` to a curve, by dense sampling followed by golden-section
/// refinement around the best sample. Periodic curves may be refined across
/// the parameter seam.
fn curve_distance(z: Point, curve: impl Fn(f64) -> Point, a: f64, b: f64, periodic: bool) -> f64 {
    let n = 4096;
    let h = (b - a) / n as f64;
    let d = |t: f64| (curve(t) - z).norm();
    let best = (0..=n)
        .map(|k| a + h * k as f64)
        .min_by(|x, y| d(*x).total_cmp(&d(*y)))
        .unwrap();
    let (mut lo, mut hi) = if periodic {
        (best - h, best + h)
    } else {
        ((best - h).max(a), (best + h).min(b))
    };
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let m1 = hi - phi * (hi - lo);
        let m2 = lo + phi * (hi - lo);
        if d(m1) < d(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    d(0.5 * (lo + hi)).min(d(best))
}

fn circle_distance(z: Point, c: Point, r: f64) -> f64 {
    curve_distance(z, |t| c + Point::from_polar(r, t), 0.0, TAU, true)
}

fn segment_distance(z: Point, p: Point, q: Point) -> f64 {
    curve_distance(z, |t| p + (q - p) * t, 0.0, 1.0, false)
}

fn brute_net_distance(z: Point, k: &CompactCarrier) -> f64 {
    k.net().iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min)
}

proptest! {
    #[test]
    fn carrier_interval_brackets_net_and_true_distance(path in closed_path(), eta in 0.01..0.5f64, z in point(4.0)) {
        let k = carrier_of_path(&path, eta).unwrap();
        let b = dist_to_carrier(z, &k);
        prop_assert!(b.width() <= 2.0 * eta);
        prop_assert_eq!(b.hi, brute_net_distance(z, &k));
        // The true distance to the path, sampled densely, lies in the interval.
        let true_d = (0..=20_000)
            .map(|j| (path.eval(j as f64 / 20_000.0) - z).norm())
            .fold(f64::INFINITY, f64::min);
        prop_assert!(b.lo <= true_d + 1e-12);
        prop_assert!(true_d <= b.hi + 1e-12);
    }

    #[test]
    fn carrier_bounds_are_one_lipschitz(path in closed_path(), eta in 0.01..0.5f64, z in point(4.0), dz in point(0.5)) {
        let k = carrier_of_path(&path, eta).unwrap();
        let (b0, b1) = (dist_to_carrier(z, &k), dist_to_carrier(z + dz, &k));
        let d = dz.norm();
        prop_assert!((b0.lo - b1.lo).abs() <= d + 1e-12);
        prop_assert!((b0.hi - b1.hi).abs() <= d + 1e-12);
    }

    #[test]
    fn well_contained_margin_is_spot_checked(
        path in closed_path(),
        eta in 0.02..0.2f64,
        r in 2.5..6.0f64,
        probes in prop::collection::vec((0.0..1.0f64, 0.0..TAU), 50),
    ) {
        let k = carrier_of_path(&path, eta).unwrap();
        let u = DomainDescriptor::disk(origin(), r).unwrap();
        if let Ok(cert) = well_contained(&k, &u) {
            for (j, (s, theta)) in probes.iter().enumerate() {
                let zeta = k.net()[j * 7919 % k.net().len()];
                let w = zeta + Point::from_polar(s * cert.margin, *theta);
                prop_assert!(dist_to_complement(w, &u) > 0.0);
            }
        }
    }

    #[test]
    fn disk_distance_matches_boundary_oracle(c in point(2.0), r in 0.5..3.0f64, s in 0.0..0.999f64, th in 0.0..TAU) {
        let u = DomainDescriptor::disk(c, r).unwrap();
        let z = c + Point::from_polar(s * r, th);
        prop_assert!((dist_to_complement(z, &u) - circle_distance(z, c, r)).abs() <= 1e-9);
    }

    #[test]
    fn annulus_distance_matches_boundary_oracle(
        c in point(2.0), inner in 0.1..1.0f64, width in 0.2..2.0f64, s in 0.001..0.999f64, th in 0.0..TAU,
    ) {
        let outer = inner + width;
        let u = DomainDescriptor::annulus(c, inner, outer).unwrap();
        let z = c + Point::from_polar(inner + s * width, th);
        let oracle = circle_distance(z, c, inner).min(circle_distance(z, c, outer));
        prop_assert!((dist_to_complement(z, &u) - oracle).abs() <= 1e-9);
    }

    #[test]
    fn rectangle_distance_matches_boundary_oracle(lo in point(2.0), w in 0.1..3.0f64, h in 0.1..3.0f64, s in 0.001..0.999f64, t in 0.001..0.999f64) {
        let hi = lo + Point::new(w, h);
        let u = DomainDescriptor::rectangle(lo, hi).unwrap();
        let z = lo + Point::new(s * w, t * h);
        let corners = [lo, Point::new(hi.re, lo.im), hi, Point::new(lo.re, hi.im)];
        let oracle = (0..4)
            .map(|j| segment_distance(z, corners[j], corners[(j + 1) % 4]))
            .fold(f64::INFINITY, f64::min);
        prop_assert!((dist_to_complement(z, &u) - oracle).abs() <= 1e-9);
    }

    #[test]
    fn punctured_plane_distance_is_nearest_puncture(points in prop::collection::vec(point(3.0), 1..6), z in point(4.0)) {
        let u = DomainDescriptor::punctured_plane(points.clone()).unwrap();
        let oracle = points.iter().map(|p| (p - z).norm()).fold(f64::INFINITY, f64::min);
        prop_assert!((dist_to_complement(z, &u) - oracle).abs() <= 1e-9);
    }
}

#[test]
fn net_of_circle_with_known_point_count() {
    let k = carrier_of_path(&PiecewisePath::unit_circle(), 0.1).unwrap();
    // δ = 0.1/2π gives ⌈2π/0.1⌉ = 63 steps, so 64 samples with the endpoint repeated.
    assert_eq!(k.net().len(), 64);
    let b = dist_to_carrier(Point::new(2.0, 0.0), &k);
    assert_eq!(b.hi, 1.0);
    assert_eq!(b.lo, 0.9);
}
