//! Contour integrals `∫_γ f = ∫ f(γ(t))·γ'(t) dt` of analytic functions along
//! piecewise differentiable paths.

mod expr;
pub mod quadrature;

pub use expr::{parse_expr, Expr, GuardTripped, DIVISION_GUARD};

use crate::error::{Error, Result};
use crate::geometry::dist_to_carrier;
use crate::homotopy::Chain;
use crate::paths::{carrier_of_path, Path, PiecewisePath};
use crate::Point;
use quadrature::{integrate_adaptive, AdaptiveError};
use rayon::prelude::*;

/// Points closer than this to a declared singularity are not evaluated.
pub const EVALUATION_GUARD: f64 = 1e-12;
/// Required clearance between a path's carrier and every declared singularity.
pub const SINGULARITY_CLEARANCE: f64 = 1e-9;
/// Bisections allowed per segment.
pub const MAX_BISECTIONS: u32 = 40;
/// Largest net sampled while certifying clearance from singularities.
const CLEARANCE_NET_BUDGET: usize = 4_000_000;

/// An expression in `z` together with the points where it may fail to be
/// analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticFunction {
    expr: Expr,
    singularities: Vec<Point>,
}

impl AnalyticFunction {
    pub fn new(expr: Expr, singularities: Vec<Point>) -> Self {
        Self { expr, singularities }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn singularities(&self) -> &[Point] {
        &self.singularities
    }

    fn nearest_singularity(&self, z: Point) -> Option<(Point, f64)> {
        self.singularities
            .iter()
            .map(|&s| (s, (z - s).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    fn tripped(&self, z: Point) -> Error {
        let (singularity, distance) = self.nearest_singularity(z).unwrap_or((z, 0.0));
        Error::NearSingularity {
            point: z,
            singularity,
            distance,
        }
    }

    /// Evaluates `f(z)`, refusing points within [`EVALUATION_GUARD`] of a
    /// declared singularity and guarded divisions by near-zero values.
    pub fn eval(&self, z: Point) -> Result<Point> {
        if let Some((_, d)) = self.nearest_singularity(z) {
            if d <= EVALUATION_GUARD {
                return Err(self.tripped(z));
            }
        }
        self.eval_unchecked(z)
    }

    /// Evaluation with only the division guard, for points already known to be
    /// clear of the declared singularities.
    fn eval_unchecked(&self, z: Point) -> Result<Point> {
        self.expr.eval(z).map_err(|GuardTripped| self.tripped(z))
    }
}

pub fn parse_function(text: &str, singularities: Vec<Point>) -> Result<AnalyticFunction> {
    Ok(AnalyticFunction::new(parse_expr(text)?, singularities))
}

/// Value, error estimate and cost of a contour integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: Point,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Certifies that the carrier of `path` stays more than `clearance` away from
/// every point in `points`, refining the carrier net as needed.
pub(crate) fn certify_clearance(path: &PiecewisePath, points: &[Point], clearance: f64) -> Result<()> {
    let length: f64 = path.segments().iter().map(|s| s.derivative_bound()).sum();
    let (a, b) = path.interval();
    let net_size = |eta: f64| path.lipschitz() * (b - a) / eta;
    let mut eta = if length > 0.0 { length / 64.0 } else { 1.0 };
    let mut pending: Vec<Point> = points.to_vec();
    while !pending.is_empty() {
        let carrier = carrier_of_path(path, eta)?;
        let mut uncertain = Vec::new();
        for s in pending {
            let bounds = dist_to_carrier(s, &carrier);
            if bounds.lo > clearance {
                continue;
            }
            let nearest = carrier
                .net()
                .iter()
                .copied()
                .min_by(|p, q| (p - s).norm().total_cmp(&(q - s).norm()))
                .expect("nonempty net");
            let refusal = Error::NearSingularity {
                point: nearest,
                singularity: s,
                distance: bounds.hi,
            };
            if bounds.hi <= clearance {
                return Err(refusal);
            }
            uncertain.push((s, refusal));
        }
        eta /= 16.0;
        if let Some((_, refusal)) = uncertain.first() {
            if net_size(eta) > CLEARANCE_NET_BUDGET as f64 {
                return Err(refusal.clone());
            }
        }
        pending = uncertain.into_iter().map(|(s, _)| s).collect();
    }
    Ok(())
}

/// `∫_γ f`, integrating each segment over its local parameter.
///
/// The tolerance is shared among segments in proportion to their derivative
/// bounds (their lengths, for lines and arcs). Fails with
/// [`Error::NearSingularity`] when the carrier comes within
/// [`SINGULARITY_CLEARANCE`] of a declared singularity.
pub fn contour_integral(f: &AnalyticFunction, path: &PiecewisePath, tol: f64) -> Result<IntegralResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    certify_clearance(path, f.singularities(), SINGULARITY_CLEARANCE)?;

    let total_bound: f64 = path.segments().iter().map(|s| s.derivative_bound()).sum();
    let mut result = IntegralResult {
        value: Point::new(0.0, 0.0),
        error_estimate: 0.0,
        evaluations: 0,
    };
    if total_bound == 0.0 {
        return Ok(result);
    }
    for (index, segment) in path.segments().iter().enumerate() {
        let bound = segment.derivative_bound();
        if bound == 0.0 {
            continue;
        }
        let allocated = tol * bound / total_bound;
        let integrand = |lambda: f64| -> Result<Point> {
            Ok(f.eval_unchecked(segment.point(lambda))? * segment.derivative(lambda))
        };
        let piece = integrate_adaptive(&integrand, 0.0, 1.0, allocated, MAX_BISECTIONS).map_err(|e| match e {
            AdaptiveError::Integrand(e) => e,
            AdaptiveError::DepthExceeded { estimate } => Error::ToleranceNotReached {
                segment: index,
                estimate,
                allocated,
            },
        })?;
        result.value += piece.value;
        result.error_estimate += piece.error;
        result.evaluations += piece.evaluations;
    }
    Ok(result)
}

/// Integrals along every chain member, with the largest pairwise deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainIntegrals {
    pub results: Vec<IntegralResult>,
    pub deviation: f64,
}

pub fn integral_along_chain(f: &AnalyticFunction, chain: &Chain, tol: f64) -> Result<ChainIntegrals> {
    let results = chain
        .members()
        .par_iter()
        .enumerate()
        .map(|(index, member)| {
            contour_integral(f, member, tol).map_err(|e| Error::ChainMember {
                index,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainIntegrals {
        deviation: max_pairwise_deviation(&results),
        results,
    })
}

pub(crate) fn max_pairwise_deviation(results: &[IntegralResult]) -> f64 {
    let mut worst = 0.0f64;
    for (j, a) in results.iter().enumerate() {
        for b in &results[j + 1..] {
            worst = worst.max((a.value - b.value).norm());
        }
    }
    worst
}
