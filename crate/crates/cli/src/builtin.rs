//! Textual forms of points, built-in paths and domains.

use cauchy_chain::{parse_expr, DomainDescriptor, Expr, PiecewisePath, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct SyntaxError(pub String);

impl std::fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SyntaxError {}

type Parsed<T> = Result<T, SyntaxError>;

/// A constant expression such as `-0.5`, `i` or `1 + 2*i`.
pub fn parse_point(text: &str) -> Parsed<Point> {
    let expr = parse_expr(text).map_err(|e| SyntaxError(format!("invalid point {text:?}: {e}")))?;
    match expr {
        Expr::Const(c) => Ok(c),
        _ => Err(SyntaxError(format!("{text:?} is not a constant"))),
    }
}

pub fn parse_real(text: &str) -> Parsed<f64> {
    let z = parse_point(text)?;
    if z.im != 0.0 {
        return Err(SyntaxError(format!("{text:?} is not real")));
    }
    Ok(z.re)
}

/// Comma-separated points, e.g. the `--poles` flag. Empty text gives none.
pub fn parse_point_list(text: &str) -> Parsed<Vec<Point>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_args(text)?.into_iter().map(parse_point).collect()
}

/// Splits on commas that are not nested in parentheses.
fn split_args(text: &str) -> Parsed<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(SyntaxError(format!("unbalanced parentheses in {text:?}")));
        }
    }
    if depth != 0 {
        return Err(SyntaxError(format!("unbalanced parentheses in {text:?}")));
    }
    parts.push(text[start..].trim());
    Ok(parts)
}

/// Splits `name(args)` into the name and its arguments; a bare name has none.
fn call(text: &str) -> Parsed<(&str, Vec<&str>)> {
    let text = text.trim();
    match text.find('(') {
        None => Ok((text, Vec::new())),
        Some(open) => {
            let inner = text[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| SyntaxError(format!("missing ')' in {text:?}")))?;
            Ok((text[..open].trim(), split_args(inner)?))
        }
    }
}

fn arity(name: &str, args: &[&str], expected: &[usize]) -> Parsed<()> {
    if expected.contains(&args.len()) {
        Ok(())
    } else {
        Err(SyntaxError(format!(
            "{name} takes {} arguments, got {}",
            expected.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or "),
            args.len()
        )))
    }
}

fn core(e: cauchy_chain::Error) -> SyntaxError {
    SyntaxError(e.to_string())
}

/// `unit_circle`, `circle(r[, center])`, `ellipse(a, b[, center])`,
/// `square(s)` or `polyline(v1, v2, ...)`. Polylines are closed.
pub fn parse_path(text: &str) -> Parsed<PiecewisePath> {
    let (name, args) = call(text)?;
    let origin = Point::new(0.0, 0.0);
    let center = |k: usize| args.get(k).map_or(Ok(origin), |s| parse_point(s));
    match name {
        "unit_circle" => {
            arity(name, &args, &[0])?;
            Ok(PiecewisePath::unit_circle())
        }
        "circle" => {
            arity(name, &args, &[1, 2])?;
            PiecewisePath::circle(center(1)?, parse_real(args[0])?).map_err(core)
        }
        "ellipse" => {
            arity(name, &args, &[2, 3])?;
            PiecewisePath::ellipse(center(2)?, parse_real(args[0])?, parse_real(args[1])?).map_err(core)
        }
        "square" => {
            arity(name, &args, &[1])?;
            PiecewisePath::square(parse_real(args[0])?).map_err(core)
        }
        "polyline" => {
            if args.len() < 2 {
                return Err(SyntaxError("polyline needs at least two vertices".into()));
            }
            let vertices = args.iter().map(|s| parse_point(s)).collect::<Parsed<Vec<_>>>()?;
            PiecewisePath::polyline(&vertices, true).map_err(core)
        }
        _ => Err(SyntaxError(format!("unknown path {name:?}"))),
    }
}

/// `disk(c, r)`, `annulus(c, inner, outer)`, `rectangle(lo, hi)` or
/// `punctured_plane(p1, ...)`.
pub fn parse_domain(text: &str) -> Parsed<DomainDescriptor> {
    let (name, args) = call(text)?;
    match name {
        "disk" => {
            arity(name, &args, &[2])?;
            DomainDescriptor::disk(parse_point(args[0])?, parse_real(args[1])?).map_err(core)
        }
        "annulus" => {
            arity(name, &args, &[3])?;
            DomainDescriptor::annulus(parse_point(args[0])?, parse_real(args[1])?, parse_real(args[2])?).map_err(core)
        }
        "rectangle" => {
            arity(name, &args, &[2])?;
            DomainDescriptor::rectangle(parse_point(args[0])?, parse_point(args[1])?).map_err(core)
        }
        "punctured_plane" => {
            let points = args.iter().map(|s| parse_point(s)).collect::<Parsed<Vec<_>>>()?;
            DomainDescriptor::punctured_plane(points).map_err(core)
        }
        _ => Err(SyntaxError(format!("unknown domain {name:?}"))),
    }
}
