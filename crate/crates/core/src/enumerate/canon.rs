//! Canonical labeling by partition refinement and individualization.
//!
//! The canonical form is the graph6 string of the relabeling whose
//! column-wise upper-triangle bit string is smallest among all leaves of the
//! search tree. Leaves are discrete equitable partitions; the tree branches on
//! the first non-singleton cell.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::graph6;

/// Largest graph accepted by [`canonical_form`].
pub const CANON_MAX_N: usize = 24;

type Cells = Vec<Vec<usize>>;

/// Splits cells by neighbor counts into every cell until stable. Subcells
/// are ordered by their count signature, so the result does not depend on
/// the input labeling.
fn refine(g: &Graph, cells: &mut Cells) {
    let n = g.n();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let k = cells.len();
        let mut next: Cells = Vec::with_capacity(n);
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u16>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u16; k];
                    for w in g.neighbors(v).iter() {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        let done = next.len() == k;
        *cells = next;
        if done {
            return;
        }
    }
}

/// Upper triangle, column by column, packed most-significant bit first so
/// that word-wise comparison is bit-string comparison.
fn key(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; bits.div_ceil(64).max(1)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(order[i], order[j]) {
                out[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    out
}

/// Swapping `u` and `v` is an automorphism iff they have the same
/// neighbors apart from each other.
fn swappable(g: &Graph, u: usize, v: usize) -> bool {
    let mut a = g.neighbors(u).clone();
    let mut b = g.neighbors(v).clone();
    a.remove(v);
    b.remove(u);
    a == b
}

fn search(g: &Graph, mut cells: Cells, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let k = key(g, &order);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            *best = Some((k, order));
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| swappable(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut child = cells.clone();
        child[target].retain(|&w| w != v);
        child.insert(target, vec![v]);
        search(g, child, best);
    }
}

/// The relabeled graph realizing the canonical form, and the map from old
/// to new labels.
pub fn canonical_labeling(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(Error::Resource(format!(
            "canonical labeling is limited to n <= {CANON_MAX_N}, got n = {n}"
        )));
    }
    if n == 0 {
        return Ok((Graph::new(0), Vec::new()));
    }
    let mut best = None;
    search(g, vec![(0..n).collect()], &mut best);
    let (_, order) = best.expect("search reaches a leaf");
    let mut label = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    let mut h = Graph::new(n);
    for (u, v) in g.edges() {
        h.add_edge(label[u], label[v]);
    }
    Ok((h, label))
}

/// A string equal for two graphs exactly when they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<String> {
    Ok(graph6::encode(&canonical_labeling(g)?.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Graph, perm: &[usize]) -> Graph {
        let mut h = Graph::new(g.n());
        for (u, v) in g.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        h
    }

    #[test]
    fn invariant_under_relabeling() {
        let c4 = Graph::cycle(4);
        let f = canonical_form(&c4).unwrap();
        for perm in [[1, 0, 2, 3], [2, 3, 1, 0], [0, 2, 1, 3]] {
            assert_eq!(canonical_form(&relabel(&c4, &perm)).unwrap(), f);
        }
    }

    #[test]
    fn distinguishes() {
        let f = |g: &Graph| canonical_form(g).unwrap();
        assert_ne!(f(&Graph::cycle(4)), f(&Graph::path(4)));
        assert_ne!(f(&Graph::complete_bipartite(2, 3)), f(&Graph::cycle(5)));
        // Same degree sequence, not isomorphic.
        let two_triangles = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert_ne!(f(&Graph::cycle(6)), f(&two_triangles));
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for n in [1, 8, 16] {
            assert_eq!(
                canonical_form(&Graph::complete(n)).unwrap(),
                graph6::encode(&Graph::complete(n))
            );
            canonical_form(&Graph::new(n)).unwrap();
        }
        canonical_form(&Graph::hypercube(4)).unwrap();
    }

    #[test]
    fn labeling_is_an_isomorphism() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let (h, label) = canonical_labeling(&g).unwrap();
        assert_eq!(relabel(&g, &label), h);
    }
}
