//! Brute-force references, written from the definitions and sharing no code
//! with the library beyond its plain data types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use metric_lines::{DistanceMatrix, Graph};

pub const INF: u32 = u32::MAX / 4;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
        .collect()
}

/// Floyd–Warshall; `INF` marks unreachable pairs.
pub fn distances(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let a = adjacency(g);
    let mut d: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0
                    } else if a[i][j] {
                        1
                    } else {
                        INF
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn rows(d: &DistanceMatrix) -> Vec<Vec<u32>> {
    (0..d.len())
        .map(|i| (0..d.len()).map(|j| d.get(i, j)).collect())
        .collect()
}

pub fn line(d: &[Vec<u32>], x: usize, y: usize) -> Vec<usize> {
    (0..d.len())
        .filter(|&z| {
            let (a, b, c) = (d[x][y], d[x][z], d[z][y]);
            a == b + c || b == a + c || c == a + b
        })
        .collect()
}

/// Distinct lines over all pairs.
pub fn lines(d: &[Vec<u32>]) -> BTreeSet<Vec<usize>> {
    let n = d.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in x + 1..n {
            out.insert(line(d, x, y));
        }
    }
    out
}

/// Distinct lines over pairs at distance two, with the number of pairs
/// generating each.
pub fn distance2_lines(d: &[Vec<u32>]) -> std::collections::BTreeMap<Vec<usize>, usize> {
    let n = d.len();
    let mut out = std::collections::BTreeMap::new();
    for x in 0..n {
        for y in x + 1..n {
            if d[x][y] == 2 {
                *out.entry(line(d, x, y)).or_insert(0) += 1;
            }
        }
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    distances(g).iter().all(|r| r.iter().all(|&x| x < INF))
}

pub fn is_bipartite(g: &Graph) -> bool {
    // No odd closed walk: no edge inside a BFS layer of any component.
    let d = distances(g);
    let n = g.n();
    (0..n).all(|i| {
        (0..n).all(|j| !g.has_edge(i, j) || (0..n).all(|r| d[r][i] >= INF || d[r][i] != d[r][j]))
    })
}

pub fn bridges(g: &Graph) -> usize {
    let base = components(g);
    g.edges()
        .into_iter()
        .filter(|&(u, v)| {
            let mut h = g.clone();
            h.remove_edge(u, v);
            components(&h) > base
        })
        .count()
}

pub fn components(g: &Graph) -> usize {
    let d = distances(g);
    (0..g.n())
        .filter(|&i| (0..i).all(|j| d[i][j] >= INF))
        .count()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest adjacency bitmask over all relabelings; equal exactly for
/// isomorphic graphs.
pub fn brute_canonical(g: &Graph) -> u64 {
    let n = g.n();
    let edges = g.edges();
    permutations(n)
        .iter()
        .map(|p| {
            edges.iter().fold(0u64, |m, &(u, v)| {
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                m | 1 << (b * (b - 1) / 2 + a)
            })
        })
        .min()
        .unwrap_or(0)
}

pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0..1u64 << pairs.len()).map(move |m| {
        let e: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| m >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edges(n, &e).unwrap()
    })
}

/// Vertices of induced cycles of length at least six, by checking every
/// vertex subset of size >= 6 for being a chordless cycle.
pub fn long_cycle_vertices(g: &Graph) -> BTreeSet<usize> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() < 6 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let deg2 = vs
            .iter()
            .all(|&v| vs.iter().filter(|&&w| g.has_edge(v, w)).count() == 2);
        if !deg2 {
            continue;
        }
        // 2-regular and connected means a single cycle.
        let mut seen = vec![vs[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &w in &vs {
                if g.has_edge(v, w) && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        if seen.len() == vs.len() {
            out.extend(vs);
        }
    }
    out
}

pub fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}
