//! CSV tables and JSON summaries.
//!
//! CSV numbers carry 17 significant digits; JSON numbers use the shortest
//! representation that reads back to the same `f64`. Both are deterministic.

use std::fmt::Write;
use std::sync::Arc;

use cauchy_chain::{IntegralResult, PiecewisePath, Point, VerificationReport};
use serde_json::{json, Value};

pub fn fmt_complex(z: Point) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e} {sign} {:.16e}i", z.re, z.im.abs())
}

pub fn complex_json(z: Point) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `index,t,re,im` for the vertices of a path, closing vertex included.
pub fn path_csv(path: &PiecewisePath) -> String {
    let mut s = String::from("index,t,re,im\n");
    for (k, (t, v)) in path.breakpoints().iter().zip(path.vertices()).enumerate() {
        let _ = writeln!(s, "{k},{},{},{}", num(*t), num(v.re), num(v.im));
    }
    s
}

/// `index,re,im` for a set of points.
pub fn points_csv(points: &[Point]) -> String {
    let mut s = String::from("index,re,im\n");
    for (k, v) in points.iter().enumerate() {
        let _ = writeln!(s, "{k},{},{}", num(v.re), num(v.im));
    }
    s
}

/// `member,index,t,re,im` for every vertex of every chain member.
pub fn chain_csv(members: &[Arc<PiecewisePath>]) -> String {
    let mut s = String::from("member,index,t,re,im\n");
    for (m, path) in members.iter().enumerate() {
        for (k, (t, v)) in path.breakpoints().iter().zip(path.vertices()).enumerate() {
            let _ = writeln!(s, "{m},{k},{},{},{}", num(*t), num(v.re), num(v.im));
        }
    }
    s
}

/// `member,re,im,error_estimate`.
pub fn integrals_csv(results: &[IntegralResult]) -> String {
    let mut s = String::from("member,re,im,error_estimate\n");
    for (m, r) in results.iter().enumerate() {
        let _ = writeln!(
            s,
            "{m},{},{},{}",
            num(r.value.re),
            num(r.value.im),
            num(r.error_estimate)
        );
    }
    s
}

pub fn report_json(report: &VerificationReport) -> Value {
    let integrals: Vec<_> = report
        .integrals
        .iter()
        .map(|r| json!({ "re": r.value.re, "im": r.value.im, "error_estimate": r.error_estimate }))
        .collect();
    let mut v = json!({
        "verdict": report.verdict.to_string(),
        "deviation": report.deviation,
        "threshold": report.threshold,
        "tol": report.tol,
        "epsilon": report.summary.epsilon,
        "margin": report.summary.margin,
        "members": report.summary.members,
        "integrals": integrals,
    });
    if let Some(x) = report.null_integral {
        v["null_integral"] = json!(x);
    }
    v
}
