//! Text formats.
//!
//! ```text
//! POLY <n>            PRA <n>               VG <n>
//! <x> <y>             V <i> <deg>           E <i> <j>
//! ...                 <deg-1 radians>       ...
//!                     ...
//! ```
//!
//! Numbers are written with 17 significant digits; any finite decimal is
//! accepted on input. Graph edges are written with `i < j` in lexicographic
//! order.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::geom::Point;
use crate::oracle::{AngleData, Polygon, VisibilityGraph};
use crate::scalar::{format_sig17, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.lines().map(str::trim).collect();
        while lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        Lines { lines, pos: 0 }
    }

    /// Next line and its 1-based number.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok((self.pos, l))
            }
            None => err(self.pos + 1, format!("unexpected end of input, expected {what}")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.lines.len() {
            return err(self.pos + 1, "unexpected trailing content");
        }
        Ok(())
    }
}

fn number<N: FromStr>(line: usize, token: &str, what: &str) -> Result<N, ParseError> {
    token
        .parse()
        .or_else(|_| err(line, format!("invalid {what} `{token}`")))
}

fn real<T: Scalar>(line: usize, token: &str) -> Result<T, ParseError> {
    let v: T = number(line, token, "number")?;
    if !v.is_finite() {
        return err(line, format!("non-finite number `{token}`"));
    }
    Ok(v)
}

fn header(lines: &mut Lines<'_>, tag: &str) -> Result<usize, ParseError> {
    let (ln, l) = lines.next(tag)?;
    let mut it = l.split_whitespace();
    if it.next() != Some(tag) {
        return err(ln, format!("expected `{tag} <n>` header"));
    }
    let n = it
        .next()
        .map_or_else(|| err(ln, "missing vertex count"), |t| number(ln, t, "count"))?;
    if it.next().is_some() {
        return err(ln, "unexpected token after vertex count");
    }
    Ok(n)
}

pub fn write_poly<T: Scalar>(p: &Polygon<T>) -> String {
    let mut s = format!("POLY {}\n", p.len());
    for v in p.vertices() {
        let _ = writeln!(s, "{} {}", format_sig17(v.x.as_f64()), format_sig17(v.y.as_f64()));
    }
    s
}

pub fn parse_poly<T: Scalar>(text: &str) -> Result<Polygon<T>, ParseError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "POLY")?;
    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let (ln, l) = lines.next(&format!("vertex {k}"))?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 2 {
            return err(ln, format!("expected `<x> <y>`, got {} tokens", tokens.len()));
        }
        vertices.push(Point::new(real(ln, tokens[0])?, real(ln, tokens[1])?));
    }
    lines.finish()?;
    Ok(Polygon::new(vertices))
}

pub fn write_angles<T: Scalar>(d: &AngleData<T>) -> String {
    let mut s = format!("PRA {}\n", d.n());
    for i in 0..d.n() {
        let _ = writeln!(s, "V {i} {}", d.degree(i));
        let row: Vec<String> = d.gaps(i).iter().map(|a| format_sig17(a.as_f64())).collect();
        let _ = writeln!(s, "{}", row.join(" "));
    }
    s
}

pub fn parse_angles<T: Scalar>(text: &str) -> Result<AngleData<T>, ParseError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "PRA")?;
    let mut gaps = Vec::with_capacity(n);
    for i in 0..n {
        let (ln, l) = lines.next(&format!("`V {i} <deg>`"))?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != "V" {
            return err(ln, format!("expected `V {i} <deg>`"));
        }
        let index: usize = number(ln, tokens[1], "vertex index")?;
        if index != i {
            return err(ln, format!("vertex block {index} out of order, expected {i}"));
        }
        let deg: usize = number(ln, tokens[2], "degree")?;
        let (ln, l) = lines.next(&format!("angles of vertex {i}"))?;
        let row = l
            .split_whitespace()
            .map(|t| real(ln, t))
            .collect::<Result<Vec<T>, _>>()?;
        if row.len() + 1 != deg {
            return err(
                ln,
                format!("vertex {i} has degree {deg} but {} angles", row.len()),
            );
        }
        gaps.push(row);
    }
    lines.finish()?;
    Ok(AngleData::new(gaps))
}

pub fn write_graph(g: &VisibilityGraph) -> String {
    let mut s = format!("VG {}\n", g.n());
    for (i, j) in g.edges() {
        let _ = writeln!(s, "E {i} {j}");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<VisibilityGraph, ParseError> {
    let mut lines = Lines::new(text);
    let n = header(&mut lines, "VG")?;
    let mut g = VisibilityGraph::empty(n);
    while lines.pos < lines.lines.len() {
        let (ln, l) = lines.next("edge")?;
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != "E" {
            return err(ln, "expected `E <i> <j>`");
        }
        let i: usize = number(ln, tokens[1], "vertex index")?;
        let j: usize = number(ln, tokens[2], "vertex index")?;
        if i >= j || j >= n {
            return err(ln, format!("edge ({i}, {j}) needs i < j < {n}"));
        }
        if !g.insert(i, j) {
            return err(ln, format!("duplicate edge ({i}, {j})"));
        }
    }
    Ok(g)
}
