//! The TOML spec document read by `--spec`.
//!
//! ```toml
//! version = 1
//!
//! [paths]
//! inner = "unit_circle"
//! outer = "circle(1.5)"
//!
//! [homotopy]
//! kind = "linear"      # linear | star | constant
//! from = "inner"
//! to = "outer"         # linear only
//! # center = "0"       # star only
//!
//! [domain]
//! kind = "annulus"     # disk | annulus | rectangle | punctured_plane
//! center = "0"
//! inner = 0.25
//! outer = 3.0
//!
//! [function]
//! expr = "1/z"
//! poles = ["0"]
//!
//! [tolerances]
//! tol = 1e-10
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use cauchy_chain::{
    linear_homotopy, star_null_homotopy, AnalyticFunction, DomainDescriptor, Homotopy, PiecewisePath, Point,
};
use serde::Deserialize;

use crate::builtin::{parse_path, parse_point, SyntaxError};

pub const SCHEMA_VERSION: u32 = 1;

/// A point written as a number, a constant expression or an `[re, im]` pair.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Real(f64),
    Pair([f64; 2]),
    Text(String),
}

impl PointValue {
    fn resolve(&self) -> Result<Point, SyntaxError> {
        match self {
            PointValue::Real(x) => Ok(Point::new(*x, 0.0)),
            PointValue::Pair([re, im]) => Ok(Point::new(*re, *im)),
            PointValue::Text(s) => parse_point(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomotopyKind {
    Linear,
    Star,
    Constant,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopySpec {
    pub kind: HomotopyKind,
    pub from: String,
    pub to: Option<String>,
    pub center: Option<PointValue>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Disk { center: PointValue, radius: f64 },
    Annulus { center: PointValue, inner: f64, outer: f64 },
    Rectangle { lo: PointValue, hi: PointValue },
    PuncturedPlane { points: Vec<PointValue> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub expr: String,
    #[serde(default)]
    pub poles: Vec<PointValue>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub tol: Option<f64>,
    pub eps: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    #[serde(default)]
    pub paths: BTreeMap<String, String>,
    pub homotopy: Option<HomotopySpec>,
    pub domain: Option<DomainSpec>,
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// A homotopy with the chain endpoints it connects.
pub struct ResolvedHomotopy {
    pub sigma: Homotopy,
    pub start: Arc<PiecewisePath>,
    pub end: Arc<PiecewisePath>,
    /// Set for star homotopies, which contract `start` onto this point.
    pub center: Option<Point>,
}

pub struct ResolvedSpec {
    pub paths: BTreeMap<String, Arc<PiecewisePath>>,
    pub homotopy: Option<ResolvedHomotopy>,
    pub domain: Option<DomainDescriptor>,
    pub function: Option<AnalyticFunction>,
    pub tolerances: Tolerances,
}

fn err(msg: impl Into<String>) -> SyntaxError {
    SyntaxError(msg.into())
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, SyntaxError> {
        let doc: SpecDocument = toml::from_str(text).map_err(|e| err(format!("spec: {e}")))?;
        if doc.version != SCHEMA_VERSION {
            return Err(err(format!(
                "spec: unsupported version {} (expected {SCHEMA_VERSION})",
                doc.version
            )));
        }
        Ok(doc)
    }

    pub fn resolve(&self) -> Result<ResolvedSpec, SyntaxError> {
        let mut paths = BTreeMap::new();
        for (name, text) in &self.paths {
            let p = parse_path(text).map_err(|e| err(format!("paths.{name}: {e}")))?;
            paths.insert(name.clone(), Arc::new(p));
        }
        let lookup = |name: &str| {
            paths
                .get(name)
                .cloned()
                .ok_or_else(|| err(format!("homotopy: unknown path {name:?}")))
        };

        let homotopy = match &self.homotopy {
            None => None,
            Some(h) => {
                let start = lookup(&h.from)?;
                let core = |e: cauchy_chain::Error| err(format!("homotopy: {e}"));
                Some(match h.kind {
                    HomotopyKind::Linear => {
                        let to = h.to.as_deref().ok_or_else(|| err("homotopy: linear needs `to`"))?;
                        let end = lookup(to)?;
                        let sigma = linear_homotopy(start.clone(), end.clone()).map_err(core)?;
                        ResolvedHomotopy {
                            sigma,
                            start,
                            end,
                            center: None,
                        }
                    }
                    HomotopyKind::Constant => {
                        let sigma = linear_homotopy(start.clone(), start.clone()).map_err(core)?;
                        ResolvedHomotopy {
                            sigma,
                            end: start.clone(),
                            start,
                            center: None,
                        }
                    }
                    HomotopyKind::Star => {
                        let center = h
                            .center
                            .as_ref()
                            .ok_or_else(|| err("homotopy: star needs `center`"))?
                            .resolve()?;
                        let sigma = star_null_homotopy(start.clone(), center).map_err(core)?;
                        ResolvedHomotopy {
                            sigma,
                            start,
                            end: Arc::new(PiecewisePath::constant(center)),
                            center: Some(center),
                        }
                    }
                })
            }
        };

        let domain = self.domain.as_ref().map(resolve_domain).transpose()?;
        let function = match &self.function {
            None => None,
            Some(f) => {
                let poles = f.poles.iter().map(PointValue::resolve).collect::<Result<Vec<_>, _>>()?;
                Some(cauchy_chain::parse_function(&f.expr, poles).map_err(|e| err(format!("function: {e}")))?)
            }
        };
        Ok(ResolvedSpec {
            paths,
            homotopy,
            domain,
            function,
            tolerances: self.tolerances.clone(),
        })
    }
}

fn resolve_domain(d: &DomainSpec) -> Result<DomainDescriptor, SyntaxError> {
    let built = match d {
        DomainSpec::Disk { center, radius } => DomainDescriptor::disk(center.resolve()?, *radius),
        DomainSpec::Annulus { center, inner, outer } => DomainDescriptor::annulus(center.resolve()?, *inner, *outer),
        DomainSpec::Rectangle { lo, hi } => DomainDescriptor::rectangle(lo.resolve()?, hi.resolve()?),
        DomainSpec::PuncturedPlane { points } => {
            DomainDescriptor::punctured_plane(points.iter().map(PointValue::resolve).collect::<Result<_, _>>()?)
        }
    };
    built.map_err(|e| err(format!("domain: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = include_str!("../../../specs/annulus_demo.spec");

    #[test]
    fn demo_resolves() {
        let spec = SpecDocument::parse(DEMO).unwrap().resolve().unwrap();
        assert_eq!(spec.paths.len(), 2);
        assert!(spec.homotopy.is_some());
        assert!(spec.domain.is_some());
        assert_eq!(spec.function.unwrap().singularities(), &[Point::new(0.0, 0.0)]);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(SpecDocument::parse("version = 2").is_err());
        assert!(SpecDocument::parse("paths = {}").is_err());
        assert!(SpecDocument::parse("version = 1\nextra = 3").is_err());
        let dangling = "version = 1\n[homotopy]\nkind = \"linear\"\nfrom = \"a\"\nto = \"b\"";
        assert!(SpecDocument::parse(dangling).unwrap().resolve().is_err());
    }

    #[test]
    fn point_forms() {
        let doc = "version = 1\n[domain]\nkind = \"rectangle\"\nlo = [-1.0, -2.0]\nhi = \"1 + 2*i\"";
        let spec = SpecDocument::parse(doc).unwrap().resolve().unwrap();
        assert_eq!(
            spec.domain.unwrap(),
            DomainDescriptor::rectangle(Point::new(-1.0, -2.0), Point::new(1.0, 2.0)).unwrap()
        );
    }
}
