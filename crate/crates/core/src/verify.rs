//! End-to-end checks that contour integrals are invariant along certified
//! chains, plus a winding-number oracle.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::DomainDescriptor;
use crate::homotopy::{build_chain, star_null_homotopy, Chain, Homotopy, LinkCertificate};
use crate::integrate::{
    certify_clearance, contour_integral, integral_along_chain, AnalyticFunction, Expr, IntegralResult,
};
use crate::paths::PiecewisePath;
use crate::Point;

/// Deviations up to this multiple of the quadrature tolerance pass.
pub const THRESHOLD_FACTOR: f64 = 10.0;
/// Required clearance between a path and the point a winding number is taken about.
pub const WINDING_CLEARANCE: f64 = 1e-6;
/// Largest distance from an integer accepted before rounding a winding number.
pub const WINDING_SLACK: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSummary {
    pub members: usize,
    pub epsilon: f64,
    pub margin: f64,
    pub net_resolution: f64,
    pub min_clearance: f64,
    pub carrier_points: usize,
}

impl ChainSummary {
    fn of(chain: &Chain) -> Self {
        let c = chain.containment();
        Self {
            members: chain.len(),
            epsilon: chain.epsilon(),
            margin: c.margin,
            net_resolution: c.net_resolution,
            min_clearance: c.min_clearance,
            carrier_points: chain.carrier().net().len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub summary: ChainSummary,
    pub integrals: Vec<IntegralResult>,
    /// Largest `|I_j - I_k|` over all pairs of members.
    pub deviation: f64,
    pub tol: f64,
    pub threshold: f64,
    /// `|∫_γ f|` when verifying a null-homotopy.
    pub null_integral: Option<f64>,
    pub verdict: Verdict,
    pub links: Vec<LinkCertificate>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn first_integral(&self) -> Point {
        self.integrals.first().map_or(Point::new(0.0, 0.0), |r| r.value)
    }

    pub fn last_integral(&self) -> Point {
        self.integrals.last().map_or(Point::new(0.0, 0.0), |r| r.value)
    }
}

fn fmt_complex(z: Point) -> String {
    format!(
        "{:.16e} {} {:.16e}i",
        z.re,
        if z.im < 0.0 { '-' } else { '+' },
        z.im.abs()
    )
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        writeln!(f, "chain")?;
        writeln!(f, "  members          {}", s.members)?;
        writeln!(f, "  epsilon          {:.16e}", s.epsilon)?;
        writeln!(f, "  margin           {:.16e}", s.margin)?;
        writeln!(f, "  net resolution   {:.16e}", s.net_resolution)?;
        writeln!(f, "  min clearance    {:.16e}", s.min_clearance)?;
        writeln!(f, "  carrier points   {}", s.carrier_points)?;
        writeln!(f, "links")?;
        for (j, link) in self.links.iter().enumerate() {
            writeln!(
                f,
                "  {j:>4}  bound {:.6e}  sampled [{:.6e}, {:.6e}]",
                link.bound, link.sampled.lo, link.sampled.hi
            )?;
        }
        writeln!(f, "integrals")?;
        for (j, r) in self.integrals.iter().enumerate() {
            writeln!(f, "  {j:>4}  {}  err {:.3e}", fmt_complex(r.value), r.error_estimate)?;
        }
        writeln!(f, "deviation          {:.16e}", self.deviation)?;
        if let Some(v) = self.null_integral {
            writeln!(f, "|integral|         {v:.17e}")?;
        }
        writeln!(f, "threshold          {:.16e}", self.threshold)?;
        write!(f, "verdict            {}", self.verdict)
    }
}

fn report(chain: &Chain, f: &AnalyticFunction, tol: f64, null: bool) -> Result<VerificationReport> {
    let integrals = integral_along_chain(f, chain, tol)?;
    let threshold = THRESHOLD_FACTOR * tol;
    let null_integral = null.then(|| integrals.results[0].value.norm());
    let pass = integrals.deviation <= threshold && null_integral.is_none_or(|v| v <= threshold);
    Ok(VerificationReport {
        summary: ChainSummary::of(chain),
        integrals: integrals.results,
        deviation: integrals.deviation,
        tol,
        threshold,
        null_integral,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        links: chain.links().to_vec(),
    })
}

/// Builds the chain for `σ` and checks that `f` integrates to the same value
/// along every member.
pub fn verify_homotopy_invariance(
    f: &AnalyticFunction,
    gamma0: Arc<PiecewisePath>,
    gamma1: Arc<PiecewisePath>,
    sigma: &Homotopy,
    domain: &DomainDescriptor,
    tol: f64,
) -> Result<VerificationReport> {
    let chain = build_chain(sigma, gamma0, gamma1, domain)?;
    report(&chain, f, tol, false)
}

/// Contracts `γ` onto `center` along straight lines and checks `∫_γ f = 0`.
pub fn verify_null_homotopic(
    f: &AnalyticFunction,
    gamma: Arc<PiecewisePath>,
    center: Point,
    domain: &DomainDescriptor,
    tol: f64,
) -> Result<VerificationReport> {
    let sigma = star_null_homotopy(gamma.clone(), center)?;
    let chain = build_chain(&sigma, gamma, Arc::new(PiecewisePath::constant(center)), domain)?;
    report(&chain, f, tol, true)
}

/// `(1/2πi)·∮_γ dz/(z - a)` before rounding.
pub fn winding_integral(gamma: &PiecewisePath, a: Point, tol: f64) -> Result<Point> {
    if !gamma.is_closed() {
        return Err(Error::InvalidArgument("winding number needs a closed path".into()));
    }
    certify_clearance(gamma, &[a], WINDING_CLEARANCE)?;
    let f = AnalyticFunction::new(
        Expr::Div(
            Box::new(Expr::Const(Point::new(1.0, 0.0))),
            Box::new(Expr::Sub(Box::new(Expr::Var), Box::new(Expr::Const(a)))),
        ),
        vec![a],
    );
    let r = contour_integral(&f, gamma, tol)?;
    Ok(r.value / Point::new(0.0, std::f64::consts::TAU))
}

pub fn winding_number(gamma: &PiecewisePath, a: Point, tol: f64) -> Result<i64> {
    quantize_winding(winding_integral(gamma, a, tol)?)
}

/// Rounds a value from [`winding_integral`] to the nearest integer, refusing
/// values more than [`WINDING_SLACK`] away from one.
pub fn quantize_winding(w: Point) -> Result<i64> {
    let n = w.re.round();
    if (w - Point::new(n, 0.0)).norm() > WINDING_SLACK {
        return Err(Error::NonIntegerWinding { value: w.re });
    }
    Ok(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::linear_homotopy;
    use crate::integrate::parse_function;

    fn origin() -> Point {
        Point::new(0.0, 0.0)
    }

    #[test]
    fn winding_examples() {
        let c = PiecewisePath::unit_circle();
        assert_eq!(winding_number(&c, origin(), 1e-10).unwrap(), 1);
        assert_eq!(winding_number(&c, Point::new(3.0, 0.0), 1e-10).unwrap(), 0);
        assert_eq!(winding_number(&c.reversed(), origin(), 1e-10).unwrap(), -1);
        let w = winding_integral(&c, Point::new(0.3, -0.2), 1e-10).unwrap();
        assert!((w - Point::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn winding_refuses_points_on_the_path() {
        let c = PiecewisePath::unit_circle();
        assert!(matches!(
            winding_number(&c, Point::new(0.0, 1.0), 1e-8),
            Err(Error::NearSingularity { .. })
        ));
    }

    #[test]
    fn constant_homotopy_passes() {
        let c = Arc::new(PiecewisePath::unit_circle());
        let sigma = linear_homotopy(c.clone(), c.clone()).unwrap();
        let u = DomainDescriptor::annulus(origin(), 0.5, 2.0).unwrap();
        let f = parse_function("1/z", vec![origin()]).unwrap();
        let rep = verify_homotopy_invariance(&f, c.clone(), c, &sigma, &u, 1e-10).unwrap();
        assert!(rep.passed());
        assert!(rep.deviation <= 2e-10);
    }

    #[test]
    fn square_is_null_homotopic_for_exp() {
        let sq = Arc::new(PiecewisePath::square(1.0).unwrap());
        let u = DomainDescriptor::disk(origin(), 2.0).unwrap();
        let f = parse_function("exp(z)", vec![]).unwrap();
        let rep = verify_null_homotopic(&f, sq, origin(), &u, 1e-10).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.null_integral.unwrap() <= 1e-9);
        assert_eq!(rep.last_integral(), origin());
    }

    #[test]
    fn circle_around_puncture_is_refused() {
        let c = Arc::new(PiecewisePath::unit_circle());
        let u = DomainDescriptor::punctured_plane(vec![origin()]).unwrap();
        let f = parse_function("1/z", vec![origin()]).unwrap();
        let err = verify_null_homotopic(&f, c, origin(), &u, 1e-10).unwrap_err();
        assert!(matches!(err, Error::ContainmentNotCertified { .. }), "{err:?}");
    }
}
