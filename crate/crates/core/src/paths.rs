//! Paths with explicit moduli of continuity.
//!
//! Two representations live here. [`ClosedPath`] wraps an arbitrary evaluator
//! and is what homotopy slices produce; it can be sampled and approximated but
//! not integrated. [`PiecewisePath`] is a finite sequence of continuously
//! differentiable [`Segment`]s and is the only kind of path a contour integral
//! is taken along.

use crate::error::{Error, Result};
use crate::geometry::{is_finite, CompactCarrier, DistanceBounds};
use crate::Point;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

/// Relative gap allowed where two segments meet.
const JOIN_TOLERANCE: f64 = 1e-12;

/// A modulus of continuity `ε ↦ δ(ε)`: `|x - x'| ≤ δ(ε)` implies
/// `|γ(x) - γ(x')| ≤ ε`.
#[derive(Debug, Clone, PartialEq)]
pub enum Modulus {
    /// `δ(ε) = ε / L`. A zero constant gives `δ = ∞`.
    Lipschitz(f64),
    Tabulated(TabulatedModulus),
}

/// Monotone `(ε, δ)` samples backed by a Lipschitz bound for small `ε`.
///
/// `δ(ε)` is the larger of `ε / tail_lipschitz` and the `δ` of the largest
/// tabulated `ε_k ≤ ε`. Both witnesses are valid, so their maximum is too.
/// An infinite tail constant means no bound below the smallest sample, where
/// `δ` is then `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedModulus {
    samples: Vec<(f64, f64)>,
    tail_lipschitz: f64,
}

impl TabulatedModulus {
    pub fn new(samples: Vec<(f64, f64)>, tail_lipschitz: f64) -> Result<Self> {
        if tail_lipschitz.is_nan() || tail_lipschitz <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tail Lipschitz constant must be positive, got {tail_lipschitz}"
            )));
        }
        let positive = samples
            .iter()
            .all(|&(e, d)| e > 0.0 && d > 0.0 && e.is_finite() && d.is_finite());
        let monotone = samples.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1);
        if !positive || !monotone {
            return Err(Error::InvalidArgument(
                "tabulated modulus samples must be positive with increasing epsilon and nondecreasing delta".into(),
            ));
        }
        Ok(Self {
            samples,
            tail_lipschitz,
        })
    }

    fn delta(&self, eps: f64) -> f64 {
        let k = self.samples.partition_point(|&(e, _)| e <= eps);
        let tabulated = if k == 0 { 0.0 } else { self.samples[k - 1].1 };
        tabulated.max(eps / self.tail_lipschitz)
    }
}

impl Modulus {
    /// The `δ` witnessing `ε`. Returns `0` for nonpositive `ε`.
    pub fn delta(&self, eps: f64) -> f64 {
        if eps.is_nan() || eps <= 0.0 {
            return 0.0;
        }
        match self {
            Modulus::Lipschitz(l) if *l == 0.0 => f64::INFINITY,
            Modulus::Lipschitz(l) => eps / l,
            Modulus::Tabulated(t) => t.delta(eps),
        }
    }

    /// Modulus of `x ↦ γ(a + factor·x)`.
    pub fn rescaled(&self, factor: f64) -> Modulus {
        match self {
            Modulus::Lipschitz(l) => Modulus::Lipschitz(l * factor),
            Modulus::Tabulated(t) => Modulus::Tabulated(TabulatedModulus {
                samples: t.samples.iter().map(|&(e, d)| (e, d / factor)).collect(),
                tail_lipschitz: t.tail_lipschitz * factor,
            }),
        }
    }

    /// Modulus on `(t, x)` pairs of a map with
    /// `|σ(t,x) - σ(t',x')| ≤ |γ(x) - γ(x')| + s·|t - t'|`, where `self` is the
    /// modulus of `γ`.
    pub fn plus_time_lipschitz(&self, s: f64) -> Modulus {
        match self {
            Modulus::Lipschitz(l) => Modulus::Lipschitz(l + s),
            // Half of each tabulated ε goes to the space term, half to time.
            Modulus::Tabulated(t) => Modulus::Tabulated(TabulatedModulus {
                samples: t
                    .samples
                    .iter()
                    .map(|&(e, d)| (2.0 * e, if s > 0.0 { d.min(e / s) } else { d }))
                    .collect(),
                tail_lipschitz: t.tail_lipschitz + s,
            }),
        }
    }

    /// [`delta`](Self::delta), refusing `ε` too small for the modulus to witness.
    pub fn witness(&self, eps: f64) -> Result<f64> {
        let d = self.delta(eps);
        if d > 0.0 {
            Ok(d)
        } else {
            Err(Error::InvalidEpsilon(eps))
        }
    }

    pub fn lipschitz_constant(&self) -> Option<f64> {
        match self {
            Modulus::Lipschitz(l) => Some(*l),
            Modulus::Tabulated(_) => None,
        }
    }
}

/// A uniformly continuous map from a compact parameter interval into the plane.
pub trait Path: Send + Sync {
    /// The parameter interval `[a, b]`.
    fn interval(&self) -> (f64, f64);

    fn eval(&self, x: f64) -> Point;

    fn modulus(&self) -> Modulus;
}

impl<P: Path + ?Sized> Path for Arc<P> {
    fn interval(&self) -> (f64, f64) {
        (**self).interval()
    }

    fn eval(&self, x: f64) -> Point {
        (**self).eval(x)
    }

    fn modulus(&self) -> Modulus {
        (**self).modulus()
    }
}

type Evaluator = Arc<dyn Fn(f64) -> Point + Send + Sync>;

/// A closed path given by an evaluator.
///
/// Closedness holds by construction: evaluating at `b` returns the value at
/// `a`, so `γ(a) = γ(b)` bit for bit.
#[derive(Clone)]
pub struct ClosedPath {
    a: f64,
    b: f64,
    evaluator: Evaluator,
    modulus: Modulus,
}

impl fmt::Debug for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosedPath")
            .field("interval", &(self.a, self.b))
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl ClosedPath {
    pub fn new<F>(a: f64, b: f64, evaluator: F, modulus: Modulus) -> Result<Self>
    where
        F: Fn(f64) -> Point + Send + Sync + 'static,
    {
        check_interval(a, b)?;
        Ok(Self {
            a,
            b,
            evaluator: Arc::new(evaluator),
            modulus,
        })
    }

    pub fn constant(c: Point) -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            evaluator: Arc::new(move |_| c),
            modulus: Modulus::Lipschitz(0.0),
        }
    }

    /// Wraps any closed path. The caller asserts `p(a) = p(b)`; the wrapper
    /// enforces it.
    pub fn from_path<P: Path + 'static>(p: P) -> Self {
        let (a, b) = p.interval();
        let modulus = p.modulus();
        Self {
            a,
            b,
            evaluator: Arc::new(move |x| p.eval(x)),
            modulus,
        }
    }

    /// Affine reparametrization onto `[0, 1]`.
    pub fn to_unit_interval(&self) -> Self {
        if self.a == 0.0 && self.b == 1.0 {
            return self.clone();
        }
        let (a, len) = (self.a, self.b - self.a);
        let inner = Arc::clone(&self.evaluator);
        Self {
            a: 0.0,
            b: 1.0,
            evaluator: Arc::new(move |x| inner(a + len * x)),
            modulus: self.modulus.rescaled(len),
        }
    }
}

impl Path for ClosedPath {
    fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn eval(&self, x: f64) -> Point {
        if x >= self.b || x <= self.a {
            (self.evaluator)(self.a)
        } else {
            (self.evaluator)(x)
        }
    }

    fn modulus(&self) -> Modulus {
        self.modulus.clone()
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "parameter interval [{a}, {b}] is not proper"
        )))
    }
}

/// A continuously differentiable piece given a local parameter `λ ∈ [0, 1]`.
#[derive(Clone)]
pub enum Segment {
    /// `(1 - λ)·start + λ·end`.
    Line {
        start: Point,
        end: Point,
    },
    /// `center + radius·e^{iθ}` with `θ` moving linearly between the angles.
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        end_angle: f64,
    },
    Smooth(SmoothSegment),
}

/// A user-supplied `C¹` piece.
#[derive(Clone)]
pub struct SmoothSegment {
    point: Evaluator,
    derivative: Evaluator,
    derivative_bound: f64,
}

impl SmoothSegment {
    /// `derivative_bound` must dominate `|derivative(λ)|` on `[0, 1]`.
    pub fn new<F, D>(point: F, derivative: D, derivative_bound: f64) -> Result<Self>
    where
        F: Fn(f64) -> Point + Send + Sync + 'static,
        D: Fn(f64) -> Point + Send + Sync + 'static,
    {
        if !(derivative_bound >= 0.0 && derivative_bound.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "derivative bound must be finite and nonnegative, got {derivative_bound}"
            )));
        }
        Ok(Self {
            point: Arc::new(point),
            derivative: Arc::new(derivative),
            derivative_bound,
        })
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Line { start, end } => write!(f, "Line({start} -> {end})"),
            Segment::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => write!(f, "Arc(center {center}, radius {radius}, {start_angle} -> {end_angle})"),
            Segment::Smooth(s) => write!(f, "Smooth(bound {})", s.derivative_bound),
        }
    }
}

impl Segment {
    pub fn line(start: Point, end: Point) -> Self {
        Segment::Line { start, end }
    }

    pub fn arc(center: Point, radius: f64, start_angle: f64, end_angle: f64) -> Self {
        Segment::Arc {
            center,
            radius,
            start_angle,
            end_angle,
        }
    }

    pub fn point(&self, lambda: f64) -> Point {
        match self {
            Segment::Line { start, end } => start * (1.0 - lambda) + end * lambda,
            Segment::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => {
                let theta = (1.0 - lambda) * start_angle + lambda * end_angle;
                center + Point::from_polar(*radius, theta)
            }
            Segment::Smooth(s) => (s.point)(lambda),
        }
    }

    /// `d/dλ` of [`Segment::point`].
    pub fn derivative(&self, lambda: f64) -> Point {
        match self {
            Segment::Line { start, end } => end - start,
            Segment::Arc {
                radius,
                start_angle,
                end_angle,
                ..
            } => {
                let theta = (1.0 - lambda) * start_angle + lambda * end_angle;
                Point::i() * Point::from_polar(*radius, theta) * (end_angle - start_angle)
            }
            Segment::Smooth(s) => (s.derivative)(lambda),
        }
    }

    /// Upper bound on `|d/dλ|` over the segment.
    pub fn derivative_bound(&self) -> f64 {
        match self {
            Segment::Line { start, end } => (end - start).norm(),
            Segment::Arc {
                radius,
                start_angle,
                end_angle,
                ..
            } => radius * (end_angle - start_angle).abs(),
            Segment::Smooth(s) => s.derivative_bound,
        }
    }

    pub fn start(&self) -> Point {
        self.point(0.0)
    }

    pub fn end(&self) -> Point {
        self.point(1.0)
    }

    /// The same piece traversed backwards.
    pub fn reversed(&self) -> Segment {
        match self {
            Segment::Line { start, end } => Segment::line(*end, *start),
            Segment::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => Segment::arc(*center, *radius, *end_angle, *start_angle),
            Segment::Smooth(s) => {
                let (p, d) = (Arc::clone(&s.point), Arc::clone(&s.derivative));
                Segment::Smooth(SmoothSegment {
                    point: Arc::new(move |l| p(1.0 - l)),
                    derivative: Arc::new(move |l| -d(1.0 - l)),
                    derivative_bound: s.derivative_bound,
                })
            }
        }
    }

    /// Splits at local parameter `at ∈ (0, 1)`.
    pub fn split(&self, at: f64) -> (Segment, Segment) {
        match self {
            Segment::Line { start, end } => {
                let mid = self.point(at);
                (Segment::line(*start, mid), Segment::line(mid, *end))
            }
            Segment::Arc {
                center,
                radius,
                start_angle,
                end_angle,
            } => {
                let mid = (1.0 - at) * start_angle + at * end_angle;
                (
                    Segment::arc(*center, *radius, *start_angle, mid),
                    Segment::arc(*center, *radius, mid, *end_angle),
                )
            }
            Segment::Smooth(s) => {
                let piece = |lo: f64, len: f64| {
                    let (p, d) = (Arc::clone(&s.point), Arc::clone(&s.derivative));
                    Segment::Smooth(SmoothSegment {
                        point: Arc::new(move |l| p(lo + len * l)),
                        derivative: Arc::new(move |l| d(lo + len * l) * len),
                        derivative_bound: s.derivative_bound * len,
                    })
                };
                (piece(0.0, at), piece(at, 1.0 - at))
            }
        }
    }
}

/// A piecewise continuously differentiable path.
///
/// Segment `j` covers `[s_j, s_{j+1}]` through `λ = (x - s_j) / (s_{j+1} - s_j)`.
/// At a breakpoint the path takes the value of the segment that starts there,
/// and a closed path evaluated at `b` returns its value at `a`.
#[derive(Clone)]
pub struct PiecewisePath {
    breakpoints: Arc<[f64]>,
    segments: Arc<[Segment]>,
    closed: bool,
    lipschitz: f64,
}

impl fmt::Debug for PiecewisePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PiecewisePath")
            .field("interval", &self.interval())
            .field("segments", &self.segments.len())
            .field("closed", &self.closed)
            .field("lipschitz", &self.lipschitz)
            .finish()
    }
}

impl PiecewisePath {
    pub fn new(breakpoints: Vec<f64>, segments: Vec<Segment>, closed: bool) -> Result<Self> {
        if segments.is_empty() || breakpoints.len() != segments.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints cannot bound {} segments",
                breakpoints.len(),
                segments.len()
            )));
        }
        if breakpoints.iter().any(|s| !s.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "breakpoints must be finite and strictly increasing".into(),
            ));
        }
        for (j, seg) in segments.iter().enumerate() {
            let bound = seg.derivative_bound();
            if !bound.is_finite() || !is_finite(seg.start()) || !is_finite(seg.end()) {
                return Err(Error::InvalidArgument(format!("segment {j} is not finite")));
            }
        }
        for (j, pair) in segments.windows(2).enumerate() {
            check_join(pair[0].end(), pair[1].start(), j + 1)?;
        }
        if closed {
            check_join(segments[segments.len() - 1].end(), segments[0].start(), segments.len())?;
        }
        let lipschitz = segments
            .iter()
            .zip(breakpoints.windows(2))
            .map(|(seg, w)| seg.derivative_bound() / (w[1] - w[0]))
            .fold(0.0, f64::max);
        Ok(Self {
            breakpoints: breakpoints.into(),
            segments: segments.into(),
            closed,
            lipschitz,
        })
    }

    /// Segments on uniform breakpoints `j/m` of `[0, 1]`.
    pub fn uniform(segments: Vec<Segment>, closed: bool) -> Result<Self> {
        let m = segments.len();
        let breakpoints = (0..=m).map(|j| j as f64 / m as f64).collect();
        Self::new(breakpoints, segments, closed)
    }

    pub fn constant(c: Point) -> Self {
        Self::new(vec![0.0, 1.0], vec![Segment::line(c, c)], true).expect("constant path is valid")
    }

    /// Polyline through `vertices`, parametrized proportionally to arc length
    /// on `[0, 1]`. A closed polyline gets an edge back to the first vertex.
    /// Zero-length edges are dropped.
    pub fn polyline(vertices: &[Point], closed: bool) -> Result<Self> {
        let mut pts: Vec<Point> = vertices.to_vec();
        if closed {
            if let Some(&first) = vertices.first() {
                pts.push(first);
            }
        }
        let mut segments = Vec::with_capacity(pts.len());
        for w in pts.windows(2) {
            if w[0] != w[1] {
                segments.push(Segment::line(w[0], w[1]));
            }
        }
        if segments.is_empty() {
            return match vertices.first() {
                Some(&c) => Ok(Self::constant(c)),
                None => Err(Error::InvalidArgument("polyline needs vertices".into())),
            };
        }
        let total: f64 = segments.iter().map(Segment::derivative_bound).sum();
        let mut breakpoints = Vec::with_capacity(segments.len() + 1);
        let mut acc = 0.0;
        breakpoints.push(0.0);
        for seg in &segments[..segments.len() - 1] {
            acc += seg.derivative_bound();
            breakpoints.push(acc / total);
        }
        breakpoints.push(1.0);
        Self::new(breakpoints, segments, closed)
    }

    /// Counterclockwise circle on `[0, 1]`, starting at `center + radius`.
    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "circle radius {radius} must be positive"
            )));
        }
        Self::new(vec![0.0, 1.0], vec![Segment::arc(center, radius, 0.0, TAU)], true)
    }

    pub fn unit_circle() -> Self {
        Self::circle(Point::new(0.0, 0.0), 1.0).expect("unit circle is valid")
    }

    /// `center + a·cos(2πx) + i·b·sin(2πx)` on `[0, 1]`.
    pub fn ellipse(center: Point, a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "ellipse semi-axes {a}, {b} must be positive"
            )));
        }
        let seg = SmoothSegment::new(
            move |l| {
                let (s, c) = (TAU * l).sin_cos();
                center + Point::new(a * c, b * s)
            },
            move |l| {
                let (s, c) = (TAU * l).sin_cos();
                Point::new(-a * s, b * c) * TAU
            },
            TAU * a.max(b),
        )?;
        Self::new(vec![0.0, 1.0], vec![Segment::Smooth(seg)], true)
    }

    /// Axis-aligned square with corners `±h ± ih`, counterclockwise from `h - ih`.
    pub fn square(half_side: f64) -> Result<Self> {
        if !(half_side > 0.0 && half_side.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "square half-side {half_side} must be positive"
            )));
        }
        let h = half_side;
        Self::polyline(
            &[
                Point::new(h, -h),
                Point::new(h, h),
                Point::new(-h, h),
                Point::new(-h, -h),
            ],
            true,
        )
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// The Lipschitz constant `max_j bound_j / (s_{j+1} - s_j)`.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Values at the breakpoints, including the final one.
    pub fn vertices(&self) -> Vec<Point> {
        self.breakpoints.iter().map(|&s| self.eval(s)).collect()
    }

    /// Same carrier traversed backwards on the same interval.
    pub fn reversed(&self) -> Self {
        let (a, b) = self.interval();
        let breakpoints = self.breakpoints.iter().rev().map(|&s| a + b - s).collect();
        let segments = self.segments.iter().rev().map(Segment::reversed).collect();
        Self::new(breakpoints, segments, self.closed).expect("reversal preserves validity")
    }

    /// Splits segment `index` at local parameter `at`, leaving the path unchanged.
    pub fn split_segment(&self, index: usize, at: f64) -> Result<Self> {
        if index >= self.segments.len() || !(at > 0.0 && at < 1.0) {
            return Err(Error::InvalidArgument(format!("cannot split segment {index} at {at}")));
        }
        let (left, right) = self.segments[index].split(at);
        let (s0, s1) = (self.breakpoints[index], self.breakpoints[index + 1]);
        let mut breakpoints = self.breakpoints.to_vec();
        breakpoints.insert(index + 1, s0 + at * (s1 - s0));
        let mut segments = self.segments.to_vec();
        segments.splice(index..=index, [left, right]);
        Self::new(breakpoints, segments, self.closed)
    }

    /// Affine reparametrization onto `[0, 1]`. Segments are untouched, so the
    /// carrier and the contour integral are unchanged.
    pub fn to_unit_interval(&self) -> Self {
        let (a, b) = self.interval();
        if a == 0.0 && b == 1.0 {
            return self.clone();
        }
        let len = b - a;
        let mut breakpoints: Vec<f64> = self.breakpoints.iter().map(|&s| (s - a) / len).collect();
        breakpoints[0] = 0.0;
        *breakpoints.last_mut().expect("nonempty") = 1.0;
        Self::new(breakpoints, self.segments.to_vec(), self.closed).expect("affine map preserves validity")
    }
}

fn check_join(left: Point, right: Point, index: usize) -> Result<()> {
    let gap = (left - right).norm();
    if gap <= JOIN_TOLERANCE * (1.0 + left.norm()) {
        Ok(())
    } else {
        Err(Error::Discontinuous { index, gap })
    }
}

impl Path for PiecewisePath {
    fn interval(&self) -> (f64, f64) {
        (self.breakpoints[0], self.breakpoints[self.breakpoints.len() - 1])
    }

    fn eval(&self, x: f64) -> Point {
        let (a, b) = self.interval();
        if x <= a {
            return self.segments[0].start();
        }
        if x >= b {
            return if self.closed {
                self.segments[0].start()
            } else {
                self.segments[self.segments.len() - 1].end()
            };
        }
        let j = self.breakpoints.partition_point(|&s| s <= x) - 1;
        let (s0, s1) = (self.breakpoints[j], self.breakpoints[j + 1]);
        self.segments[j].point((x - s0) / (s1 - s0))
    }

    fn modulus(&self) -> Modulus {
        Modulus::Lipschitz(self.lipschitz)
    }
}

/// Number of uniform steps of length at most `delta` covering `len`.
pub(crate) fn steps_for(len: f64, delta: f64) -> usize {
    if delta.is_infinite() {
        0
    } else {
        ((len / delta).ceil() as usize).max(1)
    }
}

/// An `η`-net of `car(γ)`, sampling at parameter steps of at most `δ(η)`.
pub fn carrier_of_path<P: Path + ?Sized>(path: &P, eta: f64) -> Result<CompactCarrier> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidArgument(format!("net resolution {eta} must be positive")));
    }
    let (a, b) = path.interval();
    let n = steps_for(b - a, path.modulus().witness(eta)?);
    let net = if n == 0 {
        vec![path.eval(a)]
    } else {
        (0..=n).map(|k| path.eval(a + (b - a) * k as f64 / n as f64)).collect()
    };
    CompactCarrier::new(net, eta)
}

/// Certified bounds on `‖p - q‖`: `lo` is the largest sampled `|p - q|` on a
/// grid of step `min(δ_p(tol), δ_q(tol))` and `hi = lo + 2·tol`. Two
/// constant paths give exact bounds.
pub fn sup_distance<P, Q>(p: &P, q: &Q, tol: f64) -> Result<DistanceBounds>
where
    P: Path + ?Sized,
    Q: Path + ?Sized,
{
    let (pi, qi) = (p.interval(), q.interval());
    if pi != qi {
        return Err(Error::MismatchedDomains { left: pi, right: qi });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let (a, b) = pi;
    let delta = p.modulus().witness(tol)?.min(q.modulus().witness(tol)?);
    let n = steps_for(b - a, delta);
    let lo = (0..=n)
        .map(|k| {
            let x = if n == 0 { a } else { a + (b - a) * k as f64 / n as f64 };
            (p.eval(x) - q.eval(x)).norm()
        })
        .fold(0.0, f64::max);
    Ok(DistanceBounds {
        lo,
        hi: if n == 0 { lo } else { lo + 2.0 * tol },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dist_to_carrier;

    #[test]
    fn lipschitz_and_tabulated_moduli() {
        assert_eq!(Modulus::Lipschitz(2.0).delta(1.0), 0.5);
        assert_eq!(Modulus::Lipschitz(0.0).delta(1.0), f64::INFINITY);
        let t = TabulatedModulus::new(vec![(0.1, 0.05), (1.0, 0.8)], 10.0).unwrap();
        let m = Modulus::Tabulated(t);
        assert_eq!(m.delta(0.01), 0.001);
        assert_eq!(m.delta(0.5), 0.05);
        assert_eq!(m.delta(2.0), 0.8);
        assert!(TabulatedModulus::new(vec![(1.0, 0.5), (0.5, 0.6)], 1.0).is_err());
        assert!(TabulatedModulus::new(vec![(0.5, 0.6), (1.0, 0.5)], 1.0).is_err());
    }

    #[test]
    fn constant_path_carrier_is_a_single_point() {
        let c = Point::new(0.5, 2.0);
        for eta in [1.0, 0.01] {
            let k = carrier_of_path(&PiecewisePath::constant(c), eta).unwrap();
            assert_eq!(k.net(), &[c]);
        }
    }

    #[test]
    fn unit_circle_carrier() {
        let k = carrier_of_path(&PiecewisePath::unit_circle(), 0.1).unwrap();
        assert_eq!(k.net().len(), 64);
        assert!(k.net().iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn square_carrier_distance_from_center() {
        let sq = PiecewisePath::square(1.0).unwrap();
        let k = carrier_of_path(&sq, 0.2).unwrap();
        assert!(dist_to_carrier(Point::new(0.0, 0.0), &k).contains(1.0));
    }

    #[test]
    fn sup_distance_examples() {
        let c = PiecewisePath::unit_circle();
        let b = sup_distance(&c, &c, 1e-3).unwrap();
        assert_eq!(b.lo, 0.0);
        assert_eq!(b.hi, 2e-3);

        let shifted = PiecewisePath::circle(Point::new(0.1, 0.0), 1.0).unwrap();
        let b = sup_distance(&c, &shifted, 1e-3).unwrap();
        assert!((b.lo - 0.1).abs() < 1e-12 && b.hi > 0.1);

        let big = PiecewisePath::circle(Point::new(0.0, 0.0), 2.0).unwrap();
        assert!(sup_distance(&c, &big, 1e-3).unwrap().contains(1.0));
    }

    #[test]
    fn sup_distance_requires_matching_domains() {
        let c = PiecewisePath::unit_circle();
        let wide = ClosedPath::new(0.0, 2.0, |_| Point::new(0.0, 0.0), Modulus::Lipschitz(0.0)).unwrap();
        assert!(matches!(
            sup_distance(&c, &wide, 0.1),
            Err(Error::MismatchedDomains { .. })
        ));
    }

    #[test]
    fn closed_path_is_closed_bitwise() {
        let p = ClosedPath::new(0.0, 1.0, |x| Point::from_polar(1.0, TAU * x), Modulus::Lipschitz(TAU)).unwrap();
        assert_eq!(p.eval(0.0), p.eval(1.0));
        let circle = PiecewisePath::unit_circle();
        assert_eq!(circle.eval(0.0), circle.eval(1.0));
    }

    #[test]
    fn reparametrization() {
        let c = PiecewisePath::unit_circle();
        let same = c.to_unit_interval();
        assert_eq!(same.breakpoints(), c.breakpoints());

        let p = ClosedPath::new(
            0.0,
            2.0,
            |x| Point::from_polar(1.0, std::f64::consts::PI * x),
            Modulus::Lipschitz(std::f64::consts::PI),
        )
        .unwrap();
        let u = p.to_unit_interval();
        assert_eq!(u.interval(), (0.0, 1.0));
        assert_eq!(u.modulus(), Modulus::Lipschitz(TAU));
        assert_eq!(u.eval(0.3), p.eval(0.6));
        assert_eq!(u.eval(1.0), u.eval(0.0));
    }

    #[test]
    fn piecewise_reparametrization_scales_lipschitz() {
        let segs = vec![Segment::arc(Point::new(0.0, 0.0), 1.0, 0.0, TAU)];
        let p = PiecewisePath::new(vec![0.0, 2.0], segs, true).unwrap();
        let u = p.to_unit_interval();
        assert!((u.lipschitz() - 2.0 * p.lipschitz()).abs() < 1e-12);
        assert_eq!(u.eval(0.25), p.eval(0.5));
    }

    #[test]
    fn rejects_gaps() {
        let segs = vec![
            Segment::line(Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
            Segment::line(Point::new(1.0, 0.5), Point::new(0.0, 0.0)),
        ];
        assert!(matches!(
            PiecewisePath::uniform(segs, true),
            Err(Error::Discontinuous { index: 1, .. })
        ));
        let open = vec![Segment::line(Point::new(0.0, 0.0), Point::new(1.0, 0.0))];
        assert!(PiecewisePath::uniform(open, true).is_err());
    }

    #[test]
    fn polyline_vertices_and_arc_length() {
        let sq = PiecewisePath::square(1.0).unwrap();
        assert_eq!(sq.segments().len(), 4);
        assert_eq!(sq.breakpoints(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(sq.lipschitz(), 8.0);
        let v = sq.vertices();
        assert_eq!(v[0], v[4]);
        assert_eq!(v[2], Point::new(-1.0, 1.0));
    }

    #[test]
    fn reversal_and_split_preserve_points() {
        let e = PiecewisePath::ellipse(Point::new(0.0, 0.0), 2.0, 1.0).unwrap();
        let r = e.reversed();
        assert!((r.eval(0.3) - e.eval(0.7)).norm() < 1e-14);
        let s = e.split_segment(0, 0.4).unwrap();
        for x in [0.1, 0.39, 0.4, 0.77] {
            assert!((s.eval(x) - e.eval(x)).norm() < 1e-14);
        }
    }
}
