//! Finite integer metric spaces and the line operator.
//!
//! For distinct points `x`, `y` the line they generate is
//! `{z : d(x,y) = d(x,z) + d(z,y)  or  d(x,y) = |d(x,z) - d(z,y)|}`.
//! A line equal to the whole point set is universal, and so is any pair
//! generating it.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// An unordered point pair, stored with `.0 < .1`.
pub type Pair = (usize, usize);

#[inline]
pub fn pair(a: usize, b: usize) -> Pair {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Symmetric matrix of nonnegative integer distances.
///
/// Construction only checks that the input is square; [`validate_metric`]
/// reports axiom violations separately so invalid input can be diagnosed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            d.extend(row);
        }
        Ok(DistanceMatrix { n, d })
    }

    /// Builds a symmetric matrix from the strict upper triangle in row-major
    /// order (`(0,1), (0,2), ..., (1,2), ...`).
    pub fn from_upper_triangle(n: usize, upper: &[u32]) -> Result<Self> {
        let want = n * n.saturating_sub(1) / 2;
        if upper.len() != want {
            return Err(Error::Structural(format!(
                "expected {want} upper-triangle entries for n={n}, got {}",
                upper.len()
            )));
        }
        let mut d = vec![0; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                d[i * n + j] = upper[k];
                d[j * n + i] = upper[k];
                k += 1;
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    /// Fills from a function on `i < j`; the result is symmetric with zero
    /// diagonal by construction.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut d = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        DistanceMatrix { n, d }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.d[i * self.n..(i + 1) * self.n]
    }

    pub fn upper_triangle(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// Points at exactly distance `r` from `v`.
    pub fn sphere(&self, v: usize, r: u32) -> PointSet {
        PointSet::from_indices(self.n, (0..self.n).filter(|&u| self.get(v, u) == r))
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.n).map(|i| self.row(i)).collect();
        f.debug_struct("DistanceMatrix")
            .field("n", &self.n)
            .field("d", &rows)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonzeroDiagonal {
        i: usize,
        value: u32,
    },
    ZeroDistance {
        i: usize,
        j: usize,
    },
    Asymmetry {
        i: usize,
        j: usize,
        dij: u32,
        dji: u32,
    },
    /// `d(i,j) > d(i,k) + d(k,j)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonzeroDiagonal { i, value } => {
                write!(f, "d({i},{i}) = {value}, expected 0")
            }
            Violation::ZeroDistance { i, j } => write!(f, "d({i},{j}) = 0 for distinct points"),
            Violation::Asymmetry { i, j, dij, dji } => {
                write!(f, "asymmetry: d({i},{j}) = {dij} but d({j},{i}) = {dji}")
            }
            Violation::Triangle { i, j, k } => {
                write!(
                    f,
                    "triangle violation at ({i},{j},{k}): d({i},{j}) > d({i},{k}) + d({k},{j})"
                )
            }
        }
    }
}

/// Every violated metric axiom; empty iff `d` is a metric.
pub fn validate_metric(d: &DistanceMatrix) -> Vec<Violation> {
    let n = d.len();
    let mut out = Vec::new();
    for i in 0..n {
        if d.get(i, i) != 0 {
            out.push(Violation::NonzeroDiagonal {
                i,
                value: d.get(i, i),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (d.get(i, j), d.get(j, i));
            if a != b {
                out.push(Violation::Asymmetry {
                    i,
                    j,
                    dij: a,
                    dji: b,
                });
            }
            if a == 0 || b == 0 {
                out.push(Violation::ZeroDistance { i, j });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dij = d.get(i, j) as u64;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if dij > d.get(i, k) as u64 + d.get(k, j) as u64 {
                    out.push(Violation::Triangle { i, j, k });
                }
            }
        }
    }
    out
}

/// True iff every off-diagonal distance is at most `k`.
pub fn is_k_metric(d: &DistanceMatrix, k: u32) -> bool {
    let n = d.len();
    (0..n).all(|i| (i + 1..n).all(|j| d.get(i, j) <= k))
}

#[inline]
fn on_line(d: &DistanceMatrix, x: usize, y: usize, z: usize) -> bool {
    let dxy = d.get(x, y);
    let (a, b) = (d.get(x, z), d.get(z, y));
    dxy == a + b || dxy == a.abs_diff(b)
}

/// The line generated by `x` and `y`, evaluated point by point.
pub fn line(d: &DistanceMatrix, x: usize, y: usize) -> Result<PointSet> {
    if x == y {
        return Err(Error::Domain(format!(
            "line needs two distinct points, got {x} twice"
        )));
    }
    check_point(d, x)?;
    check_point(d, y)?;
    Ok(line_points(d, x, y))
}

pub(crate) fn line_points(d: &DistanceMatrix, x: usize, y: usize) -> PointSet {
    PointSet::from_indices(d.len(), (0..d.len()).filter(|&z| on_line(d, x, y, z)))
}

fn check_point(d: &DistanceMatrix, p: usize) -> Result<()> {
    if p >= d.len() {
        return Err(Error::Domain(format!(
            "point {p} out of range for n={}",
            d.len()
        )));
    }
    Ok(())
}

/// Distance spheres around every point, used to evaluate lines with set
/// operations instead of a per-point scan.
pub struct LineKernel {
    n: usize,
    /// `layers[x][k]` = points at distance `k` from `x`.
    layers: Vec<Vec<PointSet>>,
}

impl LineKernel {
    pub fn new(d: &DistanceMatrix) -> Self {
        let n = d.len();
        let diam = d.diameter() as usize;
        let layers = (0..n)
            .map(|x| {
                let mut l = vec![PointSet::empty(n); diam + 1];
                for z in 0..n {
                    l[d.get(x, z) as usize].insert(z);
                }
                l
            })
            .collect();
        LineKernel { n, layers }
    }

    /// `line(x, y)` when `d(x,y) = dxy`.
    pub fn line(&self, x: usize, y: usize, dxy: u32) -> PointSet {
        let dxy = dxy as usize;
        let lx = &self.layers[x];
        let ly = &self.layers[y];
        let top = ly.len();
        let mut out = PointSet::empty(self.n);
        for (k, sx) in lx.iter().enumerate() {
            if sx.is_empty() {
                continue;
            }
            let mut partner = PointSet::empty(self.n);
            if k <= dxy && dxy - k < top {
                partner.union_with(&ly[dxy - k]);
            }
            if k + dxy < top {
                partner.union_with(&ly[k + dxy]);
            }
            if k >= dxy {
                partner.union_with(&ly[k - dxy]);
            }
            partner.intersect_with(sx);
            out.union_with(&partner);
        }
        out
    }
}

/// A distinct line with every pair that generates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Line {
    pub points: PointSet,
    pub generators: Vec<Pair>,
}

impl Line {
    pub fn width(&self) -> usize {
        self.generators.len()
    }
}

/// Evaluates the given pairs and merges them by point set. Lines come out
/// ordered by their lexicographically first generator.
pub(crate) fn collect_lines(
    d: &DistanceMatrix,
    pairs: impl IntoIterator<Item = Pair>,
) -> Vec<Line> {
    let kernel = LineKernel::new(d);
    let mut raw: Vec<(PointSet, Pair)> = pairs
        .into_iter()
        .map(|(x, y)| (kernel.line(x, y, d.get(x, y)), (x, y)))
        .collect();
    // Stable, so generators stay in pair order within a bucket.
    raw.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lines: Vec<Line> = Vec::new();
    for (points, p) in raw {
        match lines.last_mut() {
            Some(l) if l.points == points => l.generators.push(p),
            _ => lines.push(Line {
                points,
                generators: vec![p],
            }),
        }
    }
    for l in &mut lines {
        l.generators.sort_unstable();
    }
    lines.sort_by_key(|l| l.generators[0]);
    lines
}

pub fn all_pairs(n: usize) -> impl Iterator<Item = Pair> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, Serialize)]
pub struct LineCensus {
    pub n: usize,
    pub lines: Vec<Line>,
    pub ell: usize,
    pub ell_star: usize,
    pub up: usize,
}

impl LineCensus {
    pub fn universal_line(&self) -> Option<&Line> {
        self.lines.iter().find(|l| l.points.len() == self.n)
    }

    pub fn find(&self, points: &PointSet) -> Option<&Line> {
        self.lines.iter().find(|l| &l.points == points)
    }

    pub fn is_universal_pair(&self, p: Pair) -> bool {
        self.universal_line()
            .is_some_and(|l| l.generators.binary_search(&p).is_ok())
    }
}

/// All distinct lines of `d` with `ell`, `ell_star` and the universal-pair
/// count.
pub fn line_census(d: &DistanceMatrix) -> Result<LineCensus> {
    let n = d.len();
    if n < 2 {
        return Err(Error::Domain(format!(
            "line census needs at least 2 points, got {n}"
        )));
    }
    let lines = collect_lines(d, all_pairs(n));
    let up = lines
        .iter()
        .find(|l| l.points.len() == n)
        .map_or(0, |l| l.width());
    let ell = lines.len();
    let ell_star = ell - usize::from(up > 0);
    Ok(LineCensus {
        n,
        lines,
        ell,
        ell_star,
        up,
    })
}

/// Pairs whose line is the whole space.
pub fn universal_pairs(d: &DistanceMatrix) -> Vec<Pair> {
    let n = d.len();
    all_pairs(n)
        .filter(|&(x, y)| line_points(d, x, y).len() == n)
        .collect()
}

/// Twin pairs `(v, v')`: `d(v,v') != 1` and every other point is
/// equidistant from both.
pub fn twin_pairs(d: &DistanceMatrix) -> Vec<Pair> {
    let n = d.len();
    all_pairs(n)
        .filter(|&(a, b)| is_twin_pair(d, a, b))
        .collect()
}

pub fn is_twin_pair(d: &DistanceMatrix, a: usize, b: usize) -> bool {
    a != b
        && d.get(a, b) != 1
        && (0..d.len()).all(|u| u == a || u == b || d.get(a, u) == d.get(b, u))
}

/// The subspace on all points except `a`. Points above `a` shift down by one.
pub fn restrict(d: &DistanceMatrix, a: usize) -> Result<DistanceMatrix> {
    let n = d.len();
    if n < 2 {
        return Err(Error::Domain(format!(
            "cannot remove a point from a space of size {n}"
        )));
    }
    check_point(d, a)?;
    let keep: Vec<usize> = (0..n).filter(|&i| i != a).collect();
    Ok(DistanceMatrix::from_fn(n - 1, |i, j| {
        d.get(keep[i], keep[j])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn metric_of(g: &Graph) -> DistanceMatrix {
        g.shortest_path_metric().unwrap()
    }

    fn ps(n: usize, v: &[usize]) -> PointSet {
        PointSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn triangle_violation_reported() {
        let d = DistanceMatrix::from_upper_triangle(3, &[1, 3, 1]).unwrap();
        let report = validate_metric(&d);
        assert!(report.contains(&Violation::Triangle { i: 0, j: 2, k: 1 }));
    }

    #[test]
    fn graph_metric_is_valid() {
        assert!(validate_metric(&metric_of(&Graph::cycle(4))).is_empty());
    }

    #[test]
    fn asymmetry_reported() {
        let d = DistanceMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap();
        let report = validate_metric(&d);
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::Asymmetry { i: 0, j: 1, .. })));
    }

    #[test]
    fn non_square_is_structural() {
        let err = DistanceMatrix::from_rows(vec![vec![0, 1], vec![1]]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn k_metric() {
        assert!(is_k_metric(&metric_of(&Graph::cycle(4)), 2));
        assert!(!is_k_metric(&metric_of(&Graph::path(3)), 1));
        let d = DistanceMatrix::from_upper_triangle(4, &[1, 2, 2, 1, 2, 1]).unwrap();
        assert!(is_k_metric(&d, 2));
    }

    #[test]
    fn line_rejects_equal_points() {
        let d = metric_of(&Graph::cycle(4));
        assert!(matches!(line(&d, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn c4_lines_universal() {
        let d = metric_of(&Graph::cycle(4));
        for (x, y) in all_pairs(4) {
            assert_eq!(line(&d, x, y).unwrap(), PointSet::full(4));
        }
        let c = line_census(&d).unwrap();
        assert_eq!((c.ell, c.ell_star, c.up), (1, 0, 6));
        assert_eq!(universal_pairs(&d).len(), 6);
        assert_eq!(twin_pairs(&d), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn k23_census() {
        let d = metric_of(&Graph::complete_bipartite(2, 3));
        let c = line_census(&d).unwrap();
        assert_eq!(c.ell, 4);
        assert_eq!(c.up, 7);
        assert_eq!(c.ell_star, 3);
        assert_eq!(twin_pairs(&d).len(), 4);
    }

    #[test]
    fn p3_pairs() {
        let d = metric_of(&Graph::path(3));
        assert_eq!(universal_pairs(&d).len(), 3);
        assert_eq!(twin_pairs(&d), vec![(0, 2)]);
    }

    #[test]
    fn census_needs_two_points() {
        let d = DistanceMatrix::from_rows(vec![vec![0]]).unwrap();
        assert!(matches!(line_census(&d), Err(Error::Domain(_))));
    }

    #[test]
    fn restriction() {
        let d = metric_of(&Graph::cycle(4));
        let r = restrict(&d, 0).unwrap();
        assert_eq!(r.upper_triangle(), vec![1, 2, 1]);
        // K_{2,3} without a degree-3 vertex: a star whose leaves sit at distance 2.
        let k = metric_of(&Graph::complete_bipartite(2, 3));
        let r = restrict(&k, 0).unwrap();
        assert!(validate_metric(&r).is_empty());
        assert_eq!(r.get(0, 1), 1);
        assert!([(1, 2), (1, 3), (2, 3)]
            .iter()
            .all(|&(i, j)| r.get(i, j) == 2));
        let one = DistanceMatrix::from_rows(vec![vec![0]]).unwrap();
        assert!(restrict(&one, 0).is_err());
    }

    #[test]
    fn kernel_agrees_on_fixture() {
        let d = metric_of(&Graph::cycle(7));
        let k = LineKernel::new(&d);
        for (x, y) in all_pairs(7) {
            assert_eq!(k.line(x, y, d.get(x, y)), line_points(&d, x, y));
        }
        // Only the antipodal vertex 4 is equidistant from 0 and 1.
        assert_eq!(line(&d, 0, 1).unwrap(), ps(7, &[0, 1, 2, 3, 5, 6]));
    }
}
