//! Plain-text polygon format.
//!
//! ```text
//! RLPOLY 1
//! # comment
//! components 1
//! component closed 4
//! 0 0 0
//! 1 0 0
//! 1 1 0
//! 0 1 0
//! ```

use std::fmt::Write as _;

use ropelength::{Component, PolyCurve, Vec3};
use thiserror::Error;

pub const HEADER: &str = "RLPOLY 1";

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; the last line plus one for an unexpected end of input.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based numbers; blank and `#` lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse(text: &str) -> Result<PolyCurve, ParseError> {
    let end = text.lines().count() + 1;
    let mut lines = content_lines(text);
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| err(end, format!("expected {what}")))
    };

    let (n, header) = next("header")?;
    if header.split_whitespace().collect::<Vec<_>>() != ["RLPOLY", "1"] {
        return Err(err(n, format!("expected `{HEADER}`, found `{header}`")));
    }

    let (n, line) = next("`components <k>`")?;
    let count = match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["components", k] => k
            .parse::<usize>()
            .map_err(|_| err(n, format!("bad component count `{k}`")))?,
        _ => return Err(err(n, format!("expected `components <k>`, found `{line}`"))),
    };
    if count == 0 {
        return Err(err(n, "a curve needs at least one component"));
    }

    let mut components = Vec::with_capacity(count);
    let mut header_lines = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, line) = next("`component <closed|open> <count>`")?;
        let (closed, verts) = match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["component", kind, k] => {
                let closed = match kind {
                    "closed" => true,
                    "open" => false,
                    _ => {
                        return Err(err(
                            n,
                            format!("expected `closed` or `open`, found `{kind}`"),
                        ))
                    }
                };
                let k = k
                    .parse::<usize>()
                    .map_err(|_| err(n, format!("bad vertex count `{k}`")))?;
                (closed, k)
            }
            _ => {
                return Err(err(
                    n,
                    format!("expected `component <closed|open> <count>`, found `{line}`"),
                ))
            }
        };
        header_lines.push(n);
        let mut vertices = Vec::with_capacity(verts);
        for _ in 0..verts {
            let (n, line) = next("a vertex")?;
            let coords: Vec<&str> = line.split_whitespace().collect();
            if coords.len() != 3 {
                return Err(err(
                    n,
                    format!("expected 3 coordinates, found {}", coords.len()),
                ));
            }
            let mut xyz = [0.0; 3];
            for (slot, c) in xyz.iter_mut().zip(&coords) {
                *slot = c
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(n, format!("bad coordinate `{c}`")))?;
            }
            vertices.push(Vec3::from(xyz));
        }
        components.push(Component::new(vertices, closed));
    }
    if let Some((n, line)) = lines.next() {
        return Err(err(
            n,
            format!("unexpected content after last component: `{line}`"),
        ));
    }

    PolyCurve::new(components).map_err(|e| {
        let line = match &e {
            ropelength::Error::InvalidComponent { component, .. }
            | ropelength::Error::NonFinite { component, .. } => header_lines[*component],
            _ => header_lines[0],
        };
        err(line, e.to_string())
    })
}

/// Coordinates use the shortest decimal form that reads back exactly.
pub fn write(curve: &PolyCurve) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "components {}", curve.components().len());
    for c in curve.components() {
        let kind = if c.is_closed() { "closed" } else { "open" };
        let _ = writeln!(out, "component {kind} {}", c.vertex_count());
        for v in c.vertices() {
            let _ = writeln!(out, "{} {} {}", v.x, v.y, v.z);
        }
    }
    out
}
