//! Line-oriented text formats for matrices, cones, polytopes, bases and
//! decomposition reports. `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::caratheodory::{Decomposition, DescentAction, DescentTrace, Strategy};
use crate::error::{Error, Result};
use crate::exactlin::{join, IntMatrix, IntVector};
use crate::geometry::{ConeH, Polytope};
use crate::hilbert::HilbertBasis;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_ints(line: usize, s: &str) -> Result<IntVector> {
    s.split_whitespace()
        .map(|t| BigInt::from_str(t).map_err(|_| parse_err(line, format!("not an integer: {t:?}"))))
        .collect()
}

fn parse_count(line: usize, t: &str) -> Result<usize> {
    t.parse()
        .map_err(|_| parse_err(line, format!("not a count: {t:?}")))
}

/// Reads `<keyword> <a> <b>` followed by `rows_of(a, b)` rows of `width_of(a, b)` integers.
fn read_block(
    text: &str,
    keyword: &str,
    rows_of: fn(usize, usize) -> usize,
    width_of: fn(usize, usize) -> usize,
) -> Result<(usize, usize, Vec<IntVector>)> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != keyword {
        return Err(parse_err(
            hl,
            format!("expected header `{keyword} <n> <m>`"),
        ));
    }
    let a = parse_count(hl, parts[1])?;
    let b = parse_count(hl, parts[2])?;
    let (count, width) = (rows_of(a, b), width_of(a, b));
    let mut rows = Vec::with_capacity(count);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if rows.len() == count {
            return Err(parse_err(ln, format!("expected {count} rows, found more")));
        }
        let r = parse_ints(ln, l)?;
        if r.len() != width {
            return Err(parse_err(
                ln,
                format!("expected {width} entries, found {}", r.len()),
            ));
        }
        rows.push(r);
    }
    if rows.len() != count {
        return Err(parse_err(
            last,
            format!("expected {count} rows, found {}", rows.len()),
        ));
    }
    Ok((a, b, rows))
}

/// `matrix <rows> <cols>` followed by the rows.
pub fn read_matrix(text: &str) -> Result<IntMatrix> {
    let (_, cols, rows) = read_block(text, "matrix", |r, _| r, |_, c| c)?;
    IntMatrix::from_rows(rows, cols)
}

pub fn write_matrix(a: &IntMatrix) -> String {
    a.to_text("matrix")
}

/// `cone <n> <m>` followed by `m` rows of `A`; the cone is `{x : Ax >= 0}`.
pub fn read_cone_matrix(text: &str) -> Result<IntMatrix> {
    let (n, _, rows) = read_block(text, "cone", |_, m| m, |n, _| n)?;
    IntMatrix::from_rows(rows, n)
}

pub fn read_cone(text: &str) -> Result<ConeH> {
    ConeH::new(read_cone_matrix(text)?)
}

pub fn write_cone(a: &IntMatrix) -> String {
    format!("cone {} {}\n{}", a.cols(), a.rows(), body(a.row_iter()))
}

/// `polytope <n> <m>` followed by `m` rows `a_i b_i` of `Ax <= b`.
pub fn read_polytope(text: &str) -> Result<Polytope> {
    let (n, _, rows) = read_block(text, "polytope", |_, m| m, |n, _| n + 1)?;
    let b = rows.iter().map(|r| r[n].clone()).collect();
    let a = rows.into_iter().map(|mut r| {
        r.truncate(n);
        r
    });
    Polytope::new(IntMatrix::from_rows(a.collect(), n)?, b)
}

pub fn write_polytope(p: &Polytope) -> String {
    let a = p.matrix();
    let rows = a
        .row_iter()
        .zip(p.rhs())
        .map(|(r, b)| format!("{} {}", join(r), b));
    let mut s = format!("polytope {} {}\n", a.cols(), a.rows());
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

/// `hilbert <n> <t>` followed by `t` elements; returns `(n, elements)`.
pub fn read_basis_elements(text: &str) -> Result<(usize, Vec<IntVector>)> {
    let (n, _, rows) = read_block(text, "hilbert", |_, t| t, |n, _| n)?;
    Ok((n, rows))
}

pub fn write_basis(hb: &HilbertBasis) -> String {
    write_elements(hb.dim(), hb.elements())
}

/// Writes sorted elements in the basis format.
pub fn write_elements(n: usize, elements: &[IntVector]) -> String {
    let mut sorted = elements.to_vec();
    sorted.sort();
    format!(
        "hilbert {} {}\n{}",
        n,
        sorted.len(),
        body(sorted.iter().map(|v| v.as_slice()))
    )
}

/// A single line of integers.
pub fn read_vector(text: &str) -> Result<IntVector> {
    let mut lines = content_lines(text);
    let (ln, l) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "expected a single line"));
    }
    parse_ints(ln, l)
}

fn body<'a>(rows: impl Iterator<Item = &'a [BigInt]>) -> String {
    let mut s = String::new();
    for r in rows {
        s.push_str(&join(r));
        s.push('\n');
    }
    s
}

/// Machine-readable report:
///
/// ```text
/// point 7 -3
/// strategy oracle
/// length 2
/// certified_bound none
/// term 1 : 1 0
/// term 3 : 2 -1
/// ```
///
/// followed, when a trace is given, by `trace <steps>` and one `step` line each.
pub fn write_report(d: &Decomposition, trace: Option<&DescentTrace>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "point {}", join(&d.point));
    let _ = writeln!(s, "strategy {}", d.strategy);
    let _ = writeln!(s, "length {}", d.length());
    match d.certified_bound {
        Some(b) => {
            let _ = writeln!(s, "certified_bound {b}");
        }
        None => s.push_str("certified_bound none\n"),
    }
    for (h, k) in &d.terms {
        let _ = writeln!(s, "term {k} : {}", join(h));
    }
    if let Some(t) = trace {
        let _ = writeln!(s, "trace {}", t.steps.len());
        for step in &t.steps {
            let _ = write!(
                s,
                "step {} dim {} at {}",
                step.action.name(),
                step.dim_after,
                join(&step.point)
            );
            match &step.action {
                DescentAction::InteriorStep {
                    element,
                    multiplier,
                } => {
                    let _ = write!(s, " : {multiplier} x {}", join(element));
                }
                DescentAction::FaceProjection { rows } => {
                    let _ = write!(s, " : rows {}", join(rows));
                }
                DescentAction::PigeonholeStep { point } => {
                    let _ = write!(s, " : {}", join(point));
                }
                DescentAction::TerminalOracle { terms } => {
                    let parts: Vec<String> = terms
                        .iter()
                        .map(|(h, k)| format!("{k} x {}", join(h)))
                        .collect();
                    let _ = write!(s, " : {}", parts.join(" + "));
                }
                DescentAction::Stuck => {}
            }
            s.push('\n');
        }
    }
    s
}

/// Reads the decomposition part of a report; trace lines are skipped.
pub fn read_report(text: &str) -> Result<Decomposition> {
    let mut point = None;
    let mut strategy = None;
    let mut length = None;
    let mut bound = None;
    let mut terms = Vec::new();
    for (ln, l) in content_lines(text) {
        let (key, rest) = l.split_once(' ').unwrap_or((l, ""));
        match key {
            "point" => point = Some(parse_ints(ln, rest)?),
            "strategy" => {
                strategy = Some(
                    Strategy::from_tag(rest.trim())
                        .ok_or_else(|| parse_err(ln, format!("unknown strategy {rest:?}")))?,
                )
            }
            "length" => length = Some(parse_count(ln, rest.trim())?),
            "certified_bound" => {
                bound = Some(match rest.trim() {
                    "none" => None,
                    v => Some(parse_count(ln, v)?),
                })
            }
            "term" => {
                let (k, h) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, "expected `term <k> : <element>`"))?;
                let k =
                    BigInt::from_str(k.trim()).map_err(|_| parse_err(ln, "bad multiplicity"))?;
                terms.push((parse_ints(ln, h)?, k));
            }
            "trace" | "step" => {}
            _ => return Err(parse_err(ln, format!("unknown key {key:?}"))),
        }
    }
    let point = point.ok_or_else(|| parse_err(0, "missing point"))?;
    let strategy = strategy.ok_or_else(|| parse_err(0, "missing strategy"))?;
    let d = Decomposition {
        point,
        terms,
        strategy,
        certified_bound: bound.unwrap_or(None),
    };
    if length.is_some_and(|l| l != d.length()) {
        return Err(parse_err(0, "length does not match the number of terms"));
    }
    Ok(d)
}
