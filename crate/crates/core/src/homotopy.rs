//! Homotopies of closed paths and the certified chain construction.
//!
//! [`build_chain`] discretizes a homotopy `σ` between two piecewise
//! differentiable closed paths into a finite sequence
//! `γ₀, φ₁, …, φ_{n-1}, γ₁` in which consecutive members are uniformly close.
//! The steps:
//!
//! 1. take `K` to be an `η`-net of the range of `σ`, refining `η` until
//!    `K_r ⊂ U` is certified with `r > 4η`;
//! 2. set `ε = r/2`, so that `K_ε ⊂⊂ U` with room for the approximants, which
//!    live in `K_{ε/6}`;
//! 3. choose `t_i = i/n` with `1/n` below `δ_σ(ε/6)`, so neighbouring slices
//!    are within `ε/6` of each other;
//! 4. replace every interior slice `σ_{t_i}` by a polyline `φ_i` within
//!    `ε/6` of it.
//!
//! The triangle inequality then gives `‖γ₀ - φ₁‖ ≤ ε/3`,
//! `‖φ_i - φ_{i+1}‖ ≤ ε/2` and `‖φ_{n-1} - γ₁‖ ≤ ε/3`. Every link is also
//! cross-checked by sampling.

use crate::approx::{polygonal_approximation, uniform_partition};
use crate::error::{Error, Result};
use crate::geometry::{
    inflate_contains, well_contained, CompactCarrier, ContainmentCertificate, DistanceBounds, DomainDescriptor,
    Membership,
};
use crate::paths::{steps_for, sup_distance, ClosedPath, Modulus, Path, PiecewisePath};
use crate::Point;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

type Evaluator2 = Arc<dyn Fn(f64, f64) -> Point + Send + Sync>;
type SliceModulus = Arc<dyn Fn(f64) -> Modulus + Send + Sync>;

/// Maximum discrepancy tolerated between a homotopy's end slices and the
/// paths handed to [`build_chain`].
pub const ENDPOINT_TOLERANCE: f64 = 1e-9;
const ENDPOINT_SAMPLES: usize = 1000;
/// Halvings of the net resolution attempted after the first try.
pub const MAX_REFINEMENTS: usize = 8;
/// Largest homotopy grid sampled while searching for a containment margin.
pub const GRID_BUDGET: usize = 16_000_000;

/// A continuous map `σ : [0,1]² → ℂ` whose time slices `σ_t = σ(t, ·)` are
/// closed paths.
#[derive(Clone)]
pub struct Homotopy {
    evaluator: Evaluator2,
    modulus: Modulus,
    slice_modulus: Option<SliceModulus>,
    start: Arc<dyn Path>,
    end: Arc<dyn Path>,
}

impl fmt::Debug for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Homotopy")
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

impl Homotopy {
    /// `modulus` acts on the euclidean distance between `(t, x)` pairs.
    pub fn new<F>(evaluator: F, modulus: Modulus, start: Arc<dyn Path>, end: Arc<dyn Path>) -> Self
    where
        F: Fn(f64, f64) -> Point + Send + Sync + 'static,
    {
        Self {
            evaluator: Arc::new(evaluator),
            modulus,
            slice_modulus: None,
            start,
            end,
        }
    }

    /// Supplies a sharper modulus for individual slices. Each returned modulus
    /// must be valid for `x ↦ σ(t, x)`.
    pub fn with_slice_modulus<F>(mut self, f: F) -> Self
    where
        F: Fn(f64) -> Modulus + Send + Sync + 'static,
    {
        self.slice_modulus = Some(Arc::new(f));
        self
    }

    /// `σ(t, x)`, with `σ(t, 1) = σ(t, 0)` exactly.
    pub fn eval(&self, t: f64, x: f64) -> Point {
        let t = t.clamp(0.0, 1.0);
        let x = if x >= 1.0 || x <= 0.0 { 0.0 } else { x };
        (self.evaluator)(t, x)
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn slice_modulus(&self, t: f64) -> Modulus {
        match &self.slice_modulus {
            Some(f) => f(t),
            None => self.modulus.clone(),
        }
    }

    /// The closed path `σ_t`.
    pub fn slice(&self, t: f64) -> ClosedPath {
        let evaluator = Arc::clone(&self.evaluator);
        ClosedPath::new(0.0, 1.0, move |x| evaluator(t, x), self.slice_modulus(t)).expect("unit interval is proper")
    }

    pub fn start(&self) -> &Arc<dyn Path> {
        &self.start
    }

    pub fn end(&self) -> &Arc<dyn Path> {
        &self.end
    }
}

fn on_unit_interval(p: Arc<dyn Path>) -> Arc<dyn Path> {
    if p.interval() == (0.0, 1.0) {
        p
    } else {
        Arc::new(ClosedPath::from_path(p).to_unit_interval())
    }
}

/// Upper bound on `sup_x |γ(x) - c|`.
fn sup_distance_to_point(path: &Arc<dyn Path>, c: Point) -> Result<f64> {
    let constant = ClosedPath::constant(c);
    let tol = 1e-3 * (1.0 + (path.eval(0.0) - c).norm());
    Ok(sup_distance(path, &constant, tol)?.hi)
}

/// `σ(t, x) = (1 - t)·γ(x) + t·center`, contracting `γ` onto `center`.
///
/// The modulus is `lipschitz(L_γ + sup|γ - center|)` and slice `t` is
/// `(1 - t)·L_γ`-Lipschitz.
pub fn star_null_homotopy(path: Arc<dyn Path>, center: Point) -> Result<Homotopy> {
    let gamma = on_unit_interval(path);
    let reach = sup_distance_to_point(&gamma, center)?;
    let space = gamma.modulus();
    let modulus = space.plus_time_lipschitz(reach);
    let g = Arc::clone(&gamma);
    let h = Homotopy::new(
        move |t, x| g.eval(x) * (1.0 - t) + center * t,
        modulus,
        gamma,
        Arc::new(ClosedPath::constant(center)),
    );
    Ok(match space {
        Modulus::Lipschitz(l) => h.with_slice_modulus(move |t| Modulus::Lipschitz((1.0 - t) * l)),
        tabulated => h.with_slice_modulus(move |_| tabulated.clone()),
    })
}

/// `σ(t, x) = (1 - t)·γ₀(x) + t·γ₁(x)`.
///
/// Both endpoints need Lipschitz moduli; the homotopy is
/// `lipschitz(max(L₀, L₁) + ‖γ₀ - γ₁‖)`.
pub fn linear_homotopy(gamma0: Arc<dyn Path>, gamma1: Arc<dyn Path>) -> Result<Homotopy> {
    let (i0, i1) = (gamma0.interval(), gamma1.interval());
    if i0 != i1 {
        return Err(Error::MismatchedDomains { left: i0, right: i1 });
    }
    let (g0, g1) = (on_unit_interval(gamma0), on_unit_interval(gamma1));
    let (l0, l1) = match (g0.modulus(), g1.modulus()) {
        (Modulus::Lipschitz(a), Modulus::Lipschitz(b)) => (a, b),
        _ => {
            return Err(Error::InvalidArgument(
                "linear homotopy needs Lipschitz endpoint moduli".into(),
            ))
        }
    };
    let tol = 1e-3 * (1.0 + (g0.eval(0.0) - g1.eval(0.0)).norm());
    let gap = sup_distance(&g0, &g1, tol)?.hi;
    let (a, b) = (Arc::clone(&g0), Arc::clone(&g1));
    Ok(Homotopy::new(
        move |t, x| a.eval(x) * (1.0 - t) + b.eval(x) * t,
        Modulus::Lipschitz(l0.max(l1) + gap),
        g0,
        g1,
    )
    .with_slice_modulus(move |t| Modulus::Lipschitz((1.0 - t) * l0 + t * l1)))
}

/// Grid intervals per axis used by [`homotopy_carrier`] at resolution `eta`.
fn grid_steps(sigma: &Homotopy, eta: f64) -> Result<usize> {
    Ok(steps_for(1.0, sigma.modulus().witness(eta)? / std::f64::consts::SQRT_2))
}

/// Number of net points [`homotopy_carrier`] would produce.
pub fn carrier_grid_size(sigma: &Homotopy, eta: f64) -> Result<usize> {
    let m = grid_steps(sigma, eta)?;
    Ok(m.saturating_add(1).saturating_mul(m.saturating_add(1)))
}

/// An `η`-net of the range of `σ`, from a uniform grid on `[0,1]²` with
/// spacing at most `δ_σ(η)/√2`.
pub fn homotopy_carrier(sigma: &Homotopy, eta: f64) -> Result<CompactCarrier> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidArgument(format!("net resolution {eta} must be positive")));
    }
    let m = grid_steps(sigma, eta)?;
    if m == 0 {
        return CompactCarrier::new(vec![sigma.eval(0.0, 0.0)], eta);
    }
    let step = |k: usize| k as f64 / m as f64;
    let net = (0..=m)
        .flat_map(|i| (0..=m).map(move |j| (step(i), step(j))))
        .map(|(t, x)| sigma.eval(t, x))
        .collect();
    CompactCarrier::new(net, eta)
}

/// A certified bound on one link `‖member_j - member_{j+1}‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkCertificate {
    /// `ε/3` for the two outer links, `ε/2` for interior ones.
    pub bound: f64,
    /// Sampled bounds from [`sup_distance`].
    pub sampled: DistanceBounds,
}

/// The sequence `γ₀, φ₁, …, φ_{n-1}, γ₁` with its certificates.
#[derive(Debug, Clone)]
pub struct Chain {
    members: Vec<Arc<PiecewisePath>>,
    times: Vec<f64>,
    epsilon: f64,
    links: Vec<LinkCertificate>,
    containment: ContainmentCertificate,
    carrier: CompactCarrier,
}

impl Chain {
    pub fn members(&self) -> &[Arc<PiecewisePath>] {
        &self.members
    }

    /// `t_0, …, t_n`; member `i` is (an approximation of) `σ_{t_i}`.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn links(&self) -> &[LinkCertificate] {
        &self.links
    }

    /// Certificate for `K_r ⊂ U`; `ε = r/2`.
    pub fn containment(&self) -> &ContainmentCertificate {
        &self.containment
    }

    /// The net `K` of the homotopy's range.
    pub fn carrier(&self) -> &CompactCarrier {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `(member, vertex)` indices of approximant vertices certifiably outside
    /// `K_{ε/6}`. Empty for every valid chain.
    pub fn vertices_outside(&self) -> Vec<(usize, usize)> {
        let r = self.epsilon / 6.0;
        let last = self.members.len() - 1;
        self.members
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 0 && *i != last)
            .flat_map(|(i, m)| {
                m.vertices()
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| inflate_contains(&self.carrier, r, *v) == Membership::Outside)
                    .map(move |(k, _)| (i, k))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

fn check_end_slice(sigma: &Homotopy, t: f64, path: &PiecewisePath) -> Result<()> {
    let discrepancy = (0..=ENDPOINT_SAMPLES)
        .map(|k| {
            let x = k as f64 / ENDPOINT_SAMPLES as f64;
            (sigma.eval(t, x) - path.eval(x)).norm()
        })
        .fold(0.0, f64::max);
    if discrepancy <= ENDPOINT_TOLERANCE {
        Ok(())
    } else {
        Err(Error::EndpointMismatch { t, discrepancy })
    }
}

fn diameter_estimate(sigma: &Homotopy) -> f64 {
    const M: usize = 32;
    let (mut lo, mut hi) = (
        Point::new(f64::INFINITY, f64::INFINITY),
        Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
    );
    for i in 0..=M {
        for j in 0..=M {
            let z = sigma.eval(i as f64 / M as f64, j as f64 / M as f64);
            lo = Point::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Point::new(hi.re.max(z.re), hi.im.max(z.im));
        }
    }
    (hi - lo).norm()
}

/// Finds `K` and a certified margin `r > 4η` by halving `η`.
fn certify_carrier(sigma: &Homotopy, domain: &DomainDescriptor) -> Result<(CompactCarrier, ContainmentCertificate)> {
    let diameter = diameter_estimate(sigma);
    let mut eta = if diameter > 0.0 { 0.05 * diameter } else { 0.05 };
    let mut last_error = None;
    for _ in 0..=MAX_REFINEMENTS {
        if carrier_grid_size(sigma, eta).map_or(true, |n| n > GRID_BUDGET) {
            break;
        }
        let carrier = homotopy_carrier(sigma, eta)?;
        match well_contained(&carrier, domain) {
            Ok(cert) if cert.margin > 4.0 * eta => return Ok((carrier, cert)),
            Ok(cert) => {
                last_error = Some(Error::ContainmentNotCertified {
                    min_clearance: cert.min_clearance,
                    resolution: eta,
                    required: 4.0 * eta,
                })
            }
            // A net point is a value of σ, so it is genuinely outside U.
            Err(Error::ContainmentNotCertified { min_clearance, .. }) if min_clearance <= 0.0 => {
                return Err(Error::ContainmentNotCertified {
                    min_clearance,
                    resolution: eta,
                    required: 4.0 * eta,
                })
            }
            Err(e) => last_error = Some(e),
        }
        eta /= 2.0;
    }
    Err(last_error.unwrap_or(Error::ContainmentNotCertified {
        min_clearance: f64::NAN,
        resolution: eta,
        required: 4.0 * eta,
    }))
}

/// Builds the certified chain from `γ₀` to `γ₁` along `σ` inside `U`.
///
/// Paths not on `[0, 1]` are reparametrized first; otherwise the first and
/// last members are the given `Arc`s themselves.
pub fn build_chain(
    sigma: &Homotopy,
    gamma0: Arc<PiecewisePath>,
    gamma1: Arc<PiecewisePath>,
    domain: &DomainDescriptor,
) -> Result<Chain> {
    let unit = |p: Arc<PiecewisePath>| -> Result<Arc<PiecewisePath>> {
        if !p.is_closed() {
            return Err(Error::InvalidArgument("chain endpoints must be closed paths".into()));
        }
        Ok(if p.interval() == (0.0, 1.0) {
            p
        } else {
            Arc::new(p.to_unit_interval())
        })
    };
    let (gamma0, gamma1) = (unit(gamma0)?, unit(gamma1)?);
    check_end_slice(sigma, 0.0, &gamma0)?;
    check_end_slice(sigma, 1.0, &gamma1)?;

    let (carrier, containment) = certify_carrier(sigma, domain)?;
    let epsilon = containment.margin / 2.0;

    let (_, n) = uniform_partition(sigma.modulus().witness(epsilon / 6.0)?);
    let times: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();

    let approximants = times[1..n]
        .par_iter()
        .map(|&t| polygonal_approximation(&sigma.slice(t), epsilon / 6.0).map(|a| Arc::new(a.polyline)))
        .collect::<Result<Vec<_>>>()?;

    let mut members = Vec::with_capacity(n + 1);
    members.push(gamma0);
    members.extend(approximants);
    members.push(gamma1);

    let check_tol = epsilon / 24.0;
    let links = members
        .par_windows(2)
        .enumerate()
        .map(|(j, pair)| {
            let bound = if j == 0 || j == n - 1 {
                epsilon / 3.0
            } else {
                epsilon / 2.0
            };
            let sampled = sup_distance(&*pair[0], &*pair[1], check_tol)?;
            if sampled.lo > bound {
                return Err(Error::CertificateViolation {
                    link: j,
                    sampled_lower: sampled.lo,
                    analytic: bound,
                });
            }
            Ok(LinkCertificate { bound, sampled })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Chain {
        members,
        times,
        epsilon,
        links,
        containment,
        carrier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dist_to_carrier;
    use std::f64::consts::TAU;

    fn origin() -> Point {
        Point::new(0.0, 0.0)
    }

    fn circle(r: f64) -> Arc<PiecewisePath> {
        Arc::new(PiecewisePath::circle(origin(), r).unwrap())
    }

    #[test]
    fn star_of_constant_is_constant() {
        let c = Point::new(0.5, 0.5);
        let h = star_null_homotopy(Arc::new(ClosedPath::constant(c)), c).unwrap();
        for (t, x) in [(0.0, 0.0), (0.3, 0.7), (1.0, 0.2)] {
            assert_eq!(h.eval(t, x), c);
        }
        assert_eq!(homotopy_carrier(&h, 0.1).unwrap().net(), &[c]);
    }

    #[test]
    fn star_slice_of_unit_circle() {
        let h = star_null_homotopy(circle(1.0), origin()).unwrap();
        let s = h.slice(0.5);
        for k in 0..16 {
            let x = k as f64 / 16.0;
            assert!((s.eval(x) - Point::from_polar(0.5, TAU * x)).norm() < 1e-15);
        }
        assert_eq!(h.eval(1.0, 0.3), origin());
    }

    #[test]
    fn linear_homotopy_of_identical_paths() {
        let c = circle(1.0);
        let h = linear_homotopy(c.clone(), c.clone()).unwrap();
        for t in [0.0, 0.25, 1.0] {
            for x in [0.0, 0.1, 0.6] {
                assert!((h.eval(t, x) - c.eval(x)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn linear_homotopy_of_circles_scales_radius() {
        let h = linear_homotopy(circle(1.0), circle(1.5)).unwrap();
        for t in [0.0, 0.4, 1.0] {
            let z = h.eval(t, 0.3);
            assert!((z.norm() - (1.0 + 0.5 * t)).abs() < 1e-14);
        }
        assert!(matches!(h.modulus(), Modulus::Lipschitz(l) if *l > TAU * 1.5 + 0.5 - 1e-9));
    }

    #[test]
    fn circle_to_square_slices_are_closed() {
        let sq: Arc<dyn Path> = Arc::new(PiecewisePath::square(1.0).unwrap());
        let h = linear_homotopy(circle(1.0), sq).unwrap();
        for k in 0..=20 {
            let t = k as f64 / 20.0;
            assert_eq!(h.eval(t, 0.0), h.eval(t, 1.0));
        }
    }

    #[test]
    fn linear_homotopy_rejects_mismatched_domains() {
        let wide: Arc<dyn Path> = Arc::new(
            PiecewisePath::new(
                vec![0.0, 2.0],
                vec![crate::paths::Segment::arc(origin(), 1.0, 0.0, TAU)],
                true,
            )
            .unwrap(),
        );
        assert!(matches!(
            linear_homotopy(circle(1.0), wide),
            Err(Error::MismatchedDomains { .. })
        ));
    }

    #[test]
    fn ring_and_disk_carriers() {
        let ring = homotopy_carrier(&linear_homotopy(circle(1.0), circle(1.5)).unwrap(), 0.05).unwrap();
        let b = dist_to_carrier(origin(), &ring);
        assert!(b.lo <= 1.0 && (b.hi - 1.0).abs() < 1e-12);
        assert!(dist_to_carrier(Point::new(1.25, 0.0), &ring).lo == 0.0);

        let disk = homotopy_carrier(&star_null_homotopy(circle(1.0), origin()).unwrap(), 0.05).unwrap();
        assert_eq!(dist_to_carrier(origin(), &disk).lo, 0.0);
        assert!(dist_to_carrier(Point::new(2.0, 0.0), &disk).contains(1.0));
    }

    #[test]
    fn constant_homotopy_chain() {
        let c = circle(1.0);
        let h = linear_homotopy(c.clone(), c.clone()).unwrap();
        let u = DomainDescriptor::annulus(origin(), 0.25, 3.0).unwrap();
        let chain = build_chain(&h, c.clone(), c.clone(), &u).unwrap();
        assert!(Arc::ptr_eq(&chain.members()[0], &c));
        assert!(Arc::ptr_eq(chain.members().last().unwrap(), &c));
        let eps = chain.epsilon();
        for m in chain.members() {
            let b = sup_distance(&**m, &*c, eps / 100.0).unwrap();
            assert!(b.lo <= eps / 6.0);
        }
        assert!(chain.vertices_outside().is_empty());
    }

    #[test]
    fn star_into_puncture_is_refused() {
        let h = star_null_homotopy(circle(1.0), origin()).unwrap();
        let u = DomainDescriptor::punctured_plane(vec![origin()]).unwrap();
        let err = build_chain(&h, circle(1.0), Arc::new(PiecewisePath::constant(origin())), &u).unwrap_err();
        assert!(matches!(err, Error::ContainmentNotCertified { min_clearance, .. } if min_clearance <= 0.0));
    }

    #[test]
    fn endpoint_mismatch_is_detected() {
        let h = linear_homotopy(circle(1.0), circle(1.5)).unwrap();
        let u = DomainDescriptor::annulus(origin(), 0.25, 3.0).unwrap();
        let err = build_chain(&h, circle(1.0), circle(1.4), &u).unwrap_err();
        assert!(matches!(err, Error::EndpointMismatch { t, .. } if t == 1.0));
    }
}
