#![allow(dead_code)]

use cauchy_chain::{PiecewisePath, Point};
use proptest::prelude::*;
use std::f64::consts::TAU;

pub fn origin() -> Point {
    Point::new(0.0, 0.0)
}

pub fn point(radius: f64) -> impl Strategy<Value = Point> {
    (-radius..radius, -radius..radius).prop_map(|(x, y)| Point::new(x, y))
}

/// Vertices at increasing angles around `center`, so the polyline is simple
/// and star-shaped about `center`. With at least four vertices and angular
/// gaps within a factor of two of each other, every gap is below `π` and
/// `center` lies strictly inside.
pub fn star_vertices(center: Point, max_radius: f64) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0..1.0f64, 0.2..1.0f64), 4..12).prop_map(move |raw| {
        let mut gaps: Vec<(f64, f64)> = raw.iter().map(|&(g, r)| (1.0 + g, r)).collect();
        let total: f64 = gaps.iter().map(|g| g.0).sum();
        let mut angle = 0.0;
        gaps.iter_mut()
            .map(|(g, r)| {
                angle += *g / total * TAU;
                center + Point::from_polar(*r * max_radius, angle)
            })
            .collect()
    })
}

pub fn star_polyline(center: Point, max_radius: f64) -> impl Strategy<Value = PiecewisePath> {
    star_vertices(center, max_radius).prop_map(|v| PiecewisePath::polyline(&v, true).unwrap())
}

/// Circles, ellipses, squares and star-shaped polylines.
pub fn closed_path() -> impl Strategy<Value = PiecewisePath> {
    prop_oneof![
        (point(1.0), 0.1..2.0f64).prop_map(|(c, r)| PiecewisePath::circle(c, r).unwrap()),
        (point(1.0), 0.1..2.0f64, 0.1..2.0f64).prop_map(|(c, a, b)| PiecewisePath::ellipse(c, a, b).unwrap()),
        (0.1..2.0f64).prop_map(|h| PiecewisePath::square(h).unwrap()),
        point(1.0).prop_flat_map(|c| star_polyline(c, 1.5)),
    ]
}

/// Open or closed polylines with 2 to 8 vertices.
pub fn polyline() -> impl Strategy<Value = PiecewisePath> {
    (prop::collection::vec(point(2.0), 2..8), any::<bool>())
        .prop_filter_map("degenerate", |(v, closed)| PiecewisePath::polyline(&v, closed).ok())
}

/// Uniform samples `x_k = a + (b - a)k/n`, `k = 0..=n`.
pub fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |k| a + (b - a) * k as f64 / n as f64)
}
