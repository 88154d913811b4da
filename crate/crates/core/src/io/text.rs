//! Plain-text formats.
//!
//! Edge list: `n m`, then `m` lines `u v` with 0-based endpoints.
//!
//! Distance matrix: `n`, then the `n(n-1)/2` strict-upper-triangle entries in
//! row-major order, whitespace separated. A file may hold several matrices
//! back to back.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::DistanceMatrix;

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().flat_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        l.split_whitespace().map(move |t| (i + 1, t))
    })
}

fn number<T: std::str::FromStr>(tok: Option<(usize, &str)>, what: &str) -> Result<T> {
    let (line, t) =
        tok.ok_or_else(|| Error::Parse(format!("unexpected end of input reading {what}")))?;
    t.parse()
        .map_err(|_| Error::Parse(format!("line {line}: expected {what}, found {t:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut it = tokens(text);
    let n: usize = number(it.next(), "vertex count")?;
    let m: usize = number(it.next(), "edge count")?;
    let mut g = Graph::new(n);
    for _ in 0..m {
        let u: usize = number(it.next(), "edge endpoint")?;
        let v: usize = number(it.next(), "edge endpoint")?;
        if g.n() > u.max(v) && g.has_edge(u, v) {
            return Err(Error::Structural(format!("duplicate edge ({u},{v})")));
        }
        g.try_add_edge(u, v)?;
    }
    if let Some((line, t)) = it.next() {
        return Err(Error::Parse(format!(
            "line {line}: trailing token {t:?} after {m} edges"
        )));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn parse_matrices(text: &str) -> Result<Vec<DistanceMatrix>> {
    let mut it = tokens(text).peekable();
    let mut out = Vec::new();
    while it.peek().is_some() {
        let n: usize = number(it.next(), "point count")?;
        let k = n * n.saturating_sub(1) / 2;
        let mut upper = Vec::with_capacity(k);
        for _ in 0..k {
            upper.push(number::<u32>(it.next(), "distance")?);
        }
        out.push(DistanceMatrix::from_upper_triangle(n, &upper)?);
    }
    Ok(out)
}

/// One row of the upper triangle per line.
pub fn write_matrix(d: &DistanceMatrix) -> String {
    let n = d.len();
    let mut s = format!("{n}\n");
    for i in 0..n.saturating_sub(1) {
        let row: Vec<String> = (i + 1..n).map(|j| d.get(i, j).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}
