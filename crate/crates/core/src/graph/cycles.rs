//! Induced (chordless) cycles.

use std::ops::ControlFlow;

use super::Graph;
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Largest graph the cycle enumerator accepts unless told otherwise.
pub const DEFAULT_CYCLE_MAX_N: usize = 16;

/// Calls `visit` once per induced cycle of length `>= min_len`.
///
/// Each cycle starts at its minimum vertex and is walked in the direction
/// whose second vertex is smaller than its last, so rotations and
/// reflections are reported once. Order is deterministic: by start vertex,
/// then depth-first with neighbors in increasing order.
pub fn for_each_induced_cycle(
    g: &Graph,
    min_len: usize,
    max_n: usize,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    if g.n() > max_n {
        return Err(Error::Resource(format!(
            "induced-cycle enumeration is limited to n <= {max_n}, got n = {}",
            g.n()
        )));
    }
    let min_len = min_len.max(3);
    let mut path = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        path.clear();
        path.push(s);
        if extend(g, s, min_len, &mut path, &mut visit).is_break() {
            break;
        }
    }
    Ok(())
}

fn extend(
    g: &Graph,
    s: usize,
    min_len: usize,
    path: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let head = *path.last().unwrap();
    for w in g.neighbors(head).iter() {
        if w <= s || path.contains(&w) {
            continue;
        }
        // No chord from w back into the path, except to the head (and to s
        // when w closes the cycle).
        let inner = if path.len() > 2 {
            &path[1..path.len() - 1]
        } else {
            &[][..]
        };
        if inner.iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        if path.len() >= 2 && g.has_edge(w, s) {
            if path.len() + 1 >= min_len && path[1] < w {
                path.push(w);
                let flow = visit(path);
                path.pop();
                flow?;
            }
            continue;
        }
        path.push(w);
        let flow = extend(g, s, min_len, path, visit);
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Every induced cycle of length `>= min_len`, under the default size bound.
pub fn enumerate_induced_cycles(g: &Graph, min_len: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_induced_cycle(g, min_len, DEFAULT_CYCLE_MAX_N, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Vertices lying on some induced cycle of length at least six.
///
/// Works per vertex instead of listing cycles: `v` qualifies iff two
/// non-adjacent neighbors `a`, `b` of `v` are joined by an induced path of
/// length at least four whose interior avoids the closed neighborhood of `v`.
pub fn long_induced_cycle_vertices(g: &Graph) -> PointSet {
    let n = g.n();
    let mut out = PointSet::empty(n);
    for v in 0..n {
        let nbrs = g.neighbors(v).to_vec();
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        'pairs: for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let interior = g.vertices().difference(&closed);
                let mut path = vec![a];
                if induced_path(g, b, &interior, &mut path) {
                    out.insert(v);
                    break 'pairs;
                }
            }
        }
    }
    out
}

/// DFS for an induced path from the last vertex of `path` to `target` with
/// at least four edges, interior drawn from `interior`.
fn induced_path(g: &Graph, target: usize, interior: &PointSet, path: &mut Vec<usize>) -> bool {
    let head = *path.last().unwrap();
    for w in g.neighbors(head).intersection(interior).iter() {
        if path.contains(&w) || path[..path.len() - 1].iter().any(|&p| g.has_edge(w, p)) {
            continue;
        }
        if g.has_edge(w, target) {
            // w must be the last interior vertex; edges = path.len() + 1.
            if path.len() + 1 >= 4 {
                return true;
            }
            continue;
        }
        path.push(w);
        if induced_path(g, target, interior, path) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c6_has_one_long_cycle() {
        let c = enumerate_induced_cycles(&Graph::cycle(6), 6).unwrap();
        assert_eq!(c, vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(long_induced_cycle_vertices(&Graph::cycle(6)).len(), 6);
    }

    #[test]
    fn c4_has_none() {
        assert!(enumerate_induced_cycles(&Graph::cycle(4), 6)
            .unwrap()
            .is_empty());
        assert!(long_induced_cycle_vertices(&Graph::cycle(4)).is_empty());
        assert_eq!(
            enumerate_induced_cycles(&Graph::cycle(4), 3).unwrap().len(),
            1
        );
    }

    #[test]
    fn k4_triangles() {
        assert_eq!(
            enumerate_induced_cycles(&Graph::complete(4), 3)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn cube_six_cycles() {
        let q3 = Graph::hypercube(3);
        assert_eq!(enumerate_induced_cycles(&q3, 6).unwrap().len(), 4);
        assert_eq!(long_induced_cycle_vertices(&q3).len(), 8);
    }

    #[test]
    fn size_bound() {
        let g = Graph::cycle(20);
        assert!(matches!(
            enumerate_induced_cycles(&g, 6),
            Err(Error::Resource(_))
        ));
        assert!(for_each_induced_cycle(&g, 6, 20, |_| ControlFlow::Continue(())).is_ok());
    }
}
