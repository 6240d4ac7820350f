//! Certified polygonal approximation of closed paths.
//!
//! Given a closed path `f` on `[0, 1]` and `ε > 0`, take `δ = δ_f(ε/3)`
//! (clipped below 1), the uniform partition `x_i = i/n` with
//! `n = ⌊1/δ⌋ + 1` so every gap is shorter than `δ`, and interpolate `f`
//! linearly between consecutive `f(x_i)`. On `[x_i, x_{i+1}]`,
//!
//! ```text
//! |f(x) - g(x)| ≤ |f(x) - f(x_i)| + λ_i(x)·|f(x_{i+1}) - f(x_i)| < ε/3 + ε/3
//! ```
//!
//! so the polyline `g` is within `2ε/3` of `f` and agrees with it at every
//! partition point, including both ends.

use crate::error::{Error, Result};
use crate::paths::{Path, PiecewisePath, Segment};

/// The largest `f64` strictly below one.
pub(crate) const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// A polyline together with its certified sup-distance to the source path.
#[derive(Debug, Clone)]
pub struct PolygonalApproximation {
    pub polyline: PiecewisePath,
    /// Certified bound on `‖f - g‖`, equal to `2ε/3`.
    pub bound: f64,
    /// The mesh `δ` the partition was built from.
    pub delta: f64,
}

impl PolygonalApproximation {
    pub fn segment_count(&self) -> usize {
        self.polyline.segments().len()
    }
}

/// Partition size `⌊1/δ⌋ + 1` for `δ = min(δ_raw, 1⁻)`.
pub(crate) fn uniform_partition(raw_delta: f64) -> (f64, usize) {
    let delta = raw_delta.min(BELOW_ONE);
    (delta, (1.0 / delta).floor() as usize + 1)
}

pub fn polygonal_approximation<P: Path + ?Sized>(path: &P, eps: f64) -> Result<PolygonalApproximation> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let interval = path.interval();
    if interval != (0.0, 1.0) {
        return Err(Error::MismatchedDomains {
            left: interval,
            right: (0.0, 1.0),
        });
    }
    if path.eval(0.0) != path.eval(1.0) {
        return Err(Error::InvalidArgument("path to approximate is not closed".into()));
    }
    let (delta, n) = uniform_partition(path.modulus().witness(eps / 3.0)?);
    let nodes: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let vertices: Vec<_> = nodes.iter().map(|&x| path.eval(x)).collect();
    let segments = vertices.windows(2).map(|w| Segment::line(w[0], w[1])).collect();
    let polyline = PiecewisePath::new(nodes, segments, true)?;
    Ok(PolygonalApproximation {
        polyline,
        bound: 2.0 * eps / 3.0,
        delta,
    })
}
