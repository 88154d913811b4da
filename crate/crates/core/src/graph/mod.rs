//! Simple undirected graphs and the metric they induce.

mod cycles;
mod structure;

pub use cycles::{
    enumerate_induced_cycles, for_each_induced_cycle, long_induced_cycle_vertices,
    DEFAULT_CYCLE_MAX_N,
};
pub use structure::{structure_summary, StructureSummary};

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Pair};
use crate::pointset::PointSet;

/// Simple undirected graph on vertices `0..n`, stored as neighbor sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<PointSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![PointSet::empty(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[Pair]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Structural(format!(
                "edge ({u},{v}) out of range for n={n}"
            )));
        }
        if u == v {
            return Err(Error::Structural(format!("self-loop at vertex {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds `{u,v}`; adding an existing edge is a no-op.
    ///
    /// Panics if an endpoint is out of range or `u == v`.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at vertex {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &PointSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(PointSet::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Pair> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn vertices(&self) -> PointSet {
        PointSet::full(self.n())
    }

    /// Subgraph induced by `keep`, relabeled to `0..keep.len()` in increasing
    /// order. Returns the graph and the old index of each new vertex.
    pub fn induced(&self, keep: &PointSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = keep.to_vec();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            pos[v] = i;
        }
        let mut h = Graph::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].iter() {
                if pos[w] != usize::MAX && pos[w] > i {
                    h.add_edge(i, pos[w]);
                }
            }
        }
        (h, map)
    }

    /// Vertices reachable from `src` moving only through `allowed`.
    pub fn reachable_within(&self, src: usize, allowed: &PointSet) -> PointSet {
        let n = self.n();
        let mut seen = PointSet::empty(n);
        if !allowed.contains(src) {
            return seen;
        }
        seen.insert(src);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = PointSet::empty(n);
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(allowed);
            next.difference_with(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reachable_within(0, &self.vertices()).len() == self.n()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<u32>> {
        let n = self.n();
        let mut dist = vec![None; n];
        dist[src] = Some(0);
        let mut seen = PointSet::empty(n);
        seen.insert(src);
        let mut frontier = seen.clone();
        let mut r = 0;
        while !frontier.is_empty() {
            r += 1;
            let mut next = PointSet::empty(n);
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.difference_with(&seen);
            for v in next.iter() {
                dist[v] = Some(r);
            }
            seen.union_with(&next);
            frontier = next;
        }
        dist
    }

    /// Shortest-path metric. Disconnected graphs are rejected here rather
    /// than at construction.
    pub fn shortest_path_metric(&self) -> Result<DistanceMatrix> {
        let n = self.n();
        let mut rows = Vec::with_capacity(n);
        for s in 0..n {
            let dist = self.bfs(s);
            let row: Option<Vec<u32>> = dist.iter().copied().collect();
            match row {
                Some(r) => rows.push(r),
                None => {
                    let t = dist.iter().position(Option::is_none).unwrap();
                    return Err(Error::Disconnected(s.min(t), s.max(t)));
                }
            }
        }
        DistanceMatrix::from_rows(rows)
    }

    // Named families used by fixtures and tests.

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// `K_{p,q}` with the `p`-side on `0..p`.
    pub fn complete_bipartite(p: usize, q: usize) -> Self {
        let mut g = Graph::new(p + q);
        for i in 0..p {
            for j in p..p + q {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// The `k`-dimensional hypercube; vertices adjacent iff labels differ in
    /// one bit.
    pub fn hypercube(k: u32) -> Self {
        let n = 1usize << k;
        let mut g = Graph::new(n);
        for v in 0..n {
            for b in 0..k {
                let w = v ^ (1 << b);
                if w > v {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        Graph::complete_bipartite(1, leaves)
    }

    /// Vertex-disjoint union of `self` and `other`, with `other` shifted up.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + n, v + n);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Vertices at distance exactly `r` from `v`.
pub fn neighbors_at_distance(g: &Graph, v: usize, r: u32) -> PointSet {
    PointSet::from_indices(
        g.n(),
        g.bfs(v)
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Some(r))
            .map(|(u, _)| u),
    )
}

/// Whether `x` dominates `y`: `N(y) ⊆ N(x)` with open neighborhoods.
///
/// Only pairs at distance two matter downstream, where open and closed
/// neighborhoods give the same answer.
pub fn dominates(g: &Graph, x: usize, y: usize) -> Result<bool> {
    if x == y {
        return Err(Error::Domain(format!(
            "dominates needs distinct vertices, got {x} twice"
        )));
    }
    Ok(g.neighbors(y).is_subset(g.neighbors(x)))
}
