//! Bridges, cut vertices, biconnectivity and bipartiteness.

use serde::Serialize;

use super::Graph;
use crate::metric::Pair;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub bridge_count: usize,
    pub bridges: Vec<Pair>,
    pub cut_vertices: Vec<usize>,
    /// Connected, at least three vertices, no cut vertex.
    pub is_biconnected: bool,
    /// Color class (0/1) of each vertex when the graph is bipartite.
    pub bipartition: Option<Vec<u8>>,
    /// A closed walk of odd length when the graph is not bipartite.
    pub odd_cycle: Option<Vec<usize>>,
    pub is_connected: bool,
}

impl StructureSummary {
    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

pub fn structure_summary(g: &Graph) -> StructureSummary {
    let n = g.n();
    let (bridges, cut_vertices) = low_link(g);
    let is_connected = g.is_connected();
    let (bipartition, odd_cycle) = two_color(g);
    StructureSummary {
        bridge_count: bridges.len(),
        bridges,
        is_biconnected: is_connected && n >= 3 && cut_vertices.is_empty(),
        cut_vertices,
        bipartition,
        odd_cycle,
        is_connected,
    }
}

/// Iterative Tarjan low-link over every component.
fn low_link(g: &Graph) -> (Vec<Pair>, Vec<usize>) {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut ord = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut t = 0;
    for root in 0..n {
        if ord[root] != usize::MAX {
            continue;
        }
        ord[root] = t;
        low[root] = t;
        t += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if w == parent {
                    continue;
                }
                if ord[w] == usize::MAX {
                    ord[w] = t;
                    low[w] = t;
                    t += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(ord[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > ord[parent] {
                        bridges.push(crate::metric::pair(parent, v));
                    }
                    if parent != root && low[v] >= ord[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();
    let cuts = (0..n).filter(|&v| is_cut[v]).collect();
    (bridges, cuts)
}

/// BFS 2-coloring. On conflict returns an odd closed walk through the
/// offending edge.
fn two_color(g: &Graph) -> (Option<Vec<u8>>, Option<Vec<usize>>) {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v).iter() {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    parent[w] = v;
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    return (None, Some(odd_walk(&parent, v, w)));
                }
            }
        }
    }
    (Some(color), None)
}

fn odd_walk(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let chain = |mut v: usize| {
        let mut c = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            c.push(v);
        }
        c
    };
    let ca = chain(a);
    let cb = chain(b);
    // Trim the common tail down to the lowest common ancestor.
    let mut ia = ca.len();
    let mut ib = cb.len();
    while ia > 1 && ib > 1 && ca[ia - 2] == cb[ib - 2] {
        ia -= 1;
        ib -= 1;
    }
    let mut walk: Vec<usize> = ca[..ia].to_vec();
    walk.extend(cb[..ib - 1].iter().rev());
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_bridges() {
        let s = structure_summary(&Graph::path(3));
        assert_eq!(s.bridge_count, 2);
        assert_eq!(s.cut_vertices, vec![1]);
        assert!(!s.is_biconnected);
        assert!(s.is_bipartite());
    }

    #[test]
    fn cycle_is_biconnected_bipartite() {
        let s = structure_summary(&Graph::cycle(4));
        assert_eq!(s.bridge_count, 0);
        assert!(s.is_biconnected);
        assert_eq!(s.bipartition, Some(vec![0, 1, 0, 1]));
    }

    #[test]
    fn odd_cycle_witness() {
        let g = Graph::cycle(5);
        let s = structure_summary(&g);
        let w = s.odd_cycle.unwrap();
        assert_eq!(w.len() % 2, 1);
        for i in 0..w.len() {
            assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
        }
    }

    #[test]
    fn bowtie_cut_vertex_no_bridges() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let s = structure_summary(&g);
        assert_eq!(s.bridge_count, 0);
        assert_eq!(s.cut_vertices, vec![2]);
    }

    #[test]
    fn pendant_edge_adds_a_bridge() {
        let mut g = Graph::new(7);
        for (u, v) in Graph::cycle(6).edges() {
            g.add_edge(u, v);
        }
        let before = structure_summary(&Graph::cycle(6)).bridge_count;
        g.add_edge(0, 6);
        assert_eq!(structure_summary(&g).bridge_count, before + 1);
    }
}
