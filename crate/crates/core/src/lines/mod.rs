//! Lines generated by vertex pairs at distance two, and the machinery built
//! on them for bipartite graphs.

mod assign;
mod proof_sets;

pub use assign::{construct_g, GAssignment};
pub(crate) use proof_sets::proof_sets_with;
pub use proof_sets::{compute_proof_sets, Hypotheses, ProofSets};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{all_pairs, collect_lines, DistanceMatrix, Line, Pair};
use crate::pointset::PointSet;

/// `d(y,v) - d(x,v)` for a pair `x`, `y` at distance two.
///
/// Ranges over `-2..=2`, and over `{-2, 0, 2}` on the line through `x`, `y`.
pub fn delta(d: &DistanceMatrix, x: usize, y: usize, v: usize) -> Result<i32> {
    let n = d.len();
    if x >= n || y >= n || v >= n {
        return Err(Error::Domain(format!("point out of range for n={n}")));
    }
    if d.get(x, y) != 2 {
        return Err(Error::Domain(format!(
            "delta needs d(x,y) = 2, got d({x},{y}) = {}",
            d.get(x, y)
        )));
    }
    Ok(d.get(y, v) as i32 - d.get(x, v) as i32)
}

const NO_LINE: u32 = u32::MAX;

/// The distinct lines generated by pairs at distance two.
#[derive(Debug, Clone, Serialize)]
pub struct Distance2Census {
    pub n: usize,
    pub lines: Vec<Line>,
    pub ell2: usize,
    #[serde(skip)]
    index: Vec<u32>,
}

impl Distance2Census {
    pub fn from_metric(d: &DistanceMatrix) -> Result<Self> {
        if d.diameter() < 2 {
            return Err(Error::Domain(format!(
                "no pair at distance two (diameter {})",
                d.diameter()
            )));
        }
        Ok(Self::build(d))
    }

    /// Like [`from_metric`](Self::from_metric) but yields an empty census
    /// when no pair is at distance two.
    pub fn build(d: &DistanceMatrix) -> Self {
        let n = d.len();
        let lines = collect_lines(d, all_pairs(n).filter(|&(x, y)| d.get(x, y) == 2));
        let mut index = vec![NO_LINE; n * n];
        for (k, l) in lines.iter().enumerate() {
            for &(x, y) in &l.generators {
                index[x * n + y] = k as u32;
                index[y * n + x] = k as u32;
            }
        }
        Distance2Census {
            n,
            ell2: lines.len(),
            lines,
            index,
        }
    }

    /// Position in `lines` of the line generated by `x`, `y`, if they are at
    /// distance two.
    pub fn line_index(&self, x: usize, y: usize) -> Option<usize> {
        match self.index[x * self.n + y] {
            NO_LINE => None,
            k => Some(k as usize),
        }
    }

    pub fn line_of(&self, x: usize, y: usize) -> Option<&Line> {
        self.line_index(x, y).map(|k| &self.lines[k])
    }

    /// Number of distance-two pairs generating the same line as `x`, `y`.
    pub fn width(&self, x: usize, y: usize) -> Option<usize> {
        self.line_of(x, y).map(Line::width)
    }

    /// Width -> number of lines with that width.
    pub fn width_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for l in &self.lines {
            *h.entry(l.width()).or_insert(0) += 1;
        }
        h
    }
}

pub fn distance2_census(g: &Graph) -> Result<Distance2Census> {
    Distance2Census::from_metric(&g.shortest_path_metric()?)
}

/// Distinct lines of `d` generated by pairs at distance two inside `within`.
/// Lines are still taken in the whole space.
pub fn distance2_lines_within(d: &DistanceMatrix, within: &PointSet) -> Vec<Line> {
    let pts = within.to_vec();
    let pairs = pts.iter().enumerate().flat_map(|(i, &x)| {
        pts[i + 1..]
            .iter()
            .filter(move |&&y| d.get(x, y) == 2)
            .map(move |&y| (x, y))
    });
    collect_lines(d, pairs.collect::<Vec<Pair>>())
}

pub fn lines_over_subset(g: &Graph, within: &PointSet) -> Result<Vec<Line>> {
    Ok(distance2_lines_within(&g.shortest_path_metric()?, within))
}

/// Whether some shortest `y`–`t` path runs through `x` and then `s`:
/// `d(y,t) = d(y,x)+d(x,t) = d(y,x)+d(x,s)+d(s,t) = d(y,s)+d(s,t)`.
pub fn yxst_holds(d: &DistanceMatrix, y: usize, x: usize, s: usize, t: usize) -> bool {
    let yt = d.get(y, t);
    let yx = d.get(y, x);
    yt == yx + d.get(x, t)
        && yt == yx + d.get(x, s) + d.get(s, t)
        && yt == d.get(y, s) + d.get(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::line;

    fn metric(g: &Graph) -> DistanceMatrix {
        g.shortest_path_metric().unwrap()
    }

    #[test]
    fn delta_values() {
        let d = metric(&Graph::cycle(4));
        assert_eq!(delta(&d, 0, 2, 2).unwrap(), -2);
        assert_eq!(delta(&d, 0, 2, 0).unwrap(), 2);
        assert_eq!(delta(&d, 0, 2, 1).unwrap(), 0);
        assert!(delta(&d, 0, 1, 1).is_err());
    }

    #[test]
    fn c4_single_wide_line() {
        let c = distance2_census(&Graph::cycle(4)).unwrap();
        assert_eq!(c.ell2, 1);
        assert_eq!(c.lines[0].width(), 2);
        assert_eq!(c.width(1, 3), Some(2));
        assert_eq!(c.width(0, 1), None);
    }

    #[test]
    fn complete_graph_rejected() {
        assert!(distance2_census(&Graph::complete(4)).is_err());
        assert_eq!(Distance2Census::build(&metric(&Graph::complete(4))).ell2, 0);
    }

    #[test]
    fn k33_six_lines() {
        assert_eq!(
            distance2_census(&Graph::complete_bipartite(3, 3))
                .unwrap()
                .ell2,
            6
        );
    }

    #[test]
    fn subset_lines() {
        let g = Graph::cycle(6);
        let all = g.vertices();
        assert_eq!(
            lines_over_subset(&g, &all).unwrap(),
            distance2_census(&g).unwrap().lines
        );
        assert!(lines_over_subset(&g, &PointSet::from_indices(6, [3]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn widths_match_recount() {
        let d = metric(&Graph::hypercube(3));
        let c = Distance2Census::build(&d);
        for l in &c.lines {
            let recount = all_pairs(8)
                .filter(|&(x, y)| d.get(x, y) == 2 && line(&d, x, y).unwrap() == l.points)
                .count();
            assert_eq!(recount, l.width());
        }
    }

    #[test]
    fn yxst_examples() {
        let p4 = metric(&Graph::path(4));
        assert!(yxst_holds(&p4, 0, 1, 2, 3));
        assert!(!yxst_holds(&p4, 0, 1, 2, 0));
        let c6 = metric(&Graph::cycle(6));
        assert!(yxst_holds(&c6, 0, 1, 2, 3));
    }
}
