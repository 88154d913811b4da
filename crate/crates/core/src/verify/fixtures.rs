//! Named graphs shipped with the library.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The six graphs exempted from the line-plus-bridge bound, which all have
/// universal lines.
pub const EXEMPT_GRAPHS: [&str; 6] = ["C4", "K23", "W4prime", "W4", "K6prime", "K8prime"];

pub const FIXTURES: [&str; 13] = [
    "C4", "K23", "W4prime", "W4", "K6prime", "K8prime", "figure5", "glued_c4", "P3", "C6", "C8",
    "Q3", "figure4",
];

const LETTERS_SIX: [&str; 6] = ["v", "a", "b", "c", "d", "e"];
const LETTERS_NINE: [&str; 9] = ["A", "B", "C", "D", "E", "F", "G", "H", "I"];

fn edges(n: usize, e: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, e).expect("fixture edges are valid")
}

fn wheel4() -> Graph {
    let mut g = Graph::new(5);
    for (u, v) in Graph::cycle(4).edges() {
        g.add_edge(u, v);
    }
    for u in 0..4 {
        g.add_edge(u, 4);
    }
    g
}

fn complete_minus_matching(n: usize) -> Graph {
    let mut g = Graph::complete(n);
    for i in (0..n).step_by(2) {
        g.remove_edge(i, i + 1);
    }
    g
}

/// The fixture graph without any load-time validation.
pub fn fixture_graph(name: &str) -> Option<Graph> {
    Some(match name {
        "C4" => Graph::cycle(4),
        "K23" => Graph::complete_bipartite(2, 3),
        "W4" => wheel4(),
        "W4prime" => {
            let mut g = wheel4();
            g.remove_edge(0, 4);
            g
        }
        "K6prime" => complete_minus_matching(6),
        "K8prime" => complete_minus_matching(8),
        // v=0 a=1 b=2 c=3 d=4 e=5
        "figure5" => edges(
            6,
            &[
                (1, 4),
                (4, 2),
                (2, 5),
                (5, 3),
                (3, 0),
                (0, 1),
                (0, 2),
                (2, 3),
                (1, 3),
            ],
        ),
        "glued_c4" => edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (4, 5),
                (5, 6),
                (6, 0),
            ],
        ),
        "P3" => Graph::path(3),
        "C6" => Graph::cycle(6),
        "C8" => Graph::cycle(8),
        "Q3" => Graph::hypercube(3),
        // A..I = 0..8
        "figure4" => edges(
            9,
            &[
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 6),
                (6, 5),
                (5, 3),
                (3, 1),
                (1, 0),
                (2, 7),
                (7, 4),
                (1, 8),
                (8, 5),
            ],
        ),
        _ => return None,
    })
}

/// A fixture by name. The six exempted graphs are validated against their
/// defining property before being handed out.
pub fn fixture(name: &str) -> Result<Graph> {
    let g = fixture_graph(name).ok_or_else(|| {
        Error::Parse(format!(
            "unknown fixture {name:?}; known: {}",
            FIXTURES.join(", ")
        ))
    })?;
    if EXEMPT_GRAPHS.contains(&name) {
        let o = super::checks::check_figure1_exceptions(name)?;
        if o.status != super::Status::Pass {
            return Err(Error::Invariant {
                vertex: 0,
                detail: format!(
                    "fixture {name} fails its own exemption property: {:?}",
                    o.witness
                ),
            });
        }
    }
    Ok(g)
}

/// Display names for fixtures drawn with lettered vertices.
pub fn vertex_names(name: &str) -> Option<&'static [&'static str]> {
    match name {
        "figure5" => Some(&LETTERS_SIX),
        "figure4" => Some(&LETTERS_NINE),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_load() {
        for name in FIXTURES {
            let g = fixture(name).unwrap();
            assert!(g.is_connected(), "{name}");
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn sizes() {
        let n = |s| fixture_graph(s).unwrap().n();
        assert_eq!(n("W4prime"), 5);
        assert_eq!(n("K8prime"), 8);
        assert_eq!(fixture_graph("K6prime").unwrap().edge_count(), 12);
        assert_eq!(n("glued_c4"), 7);
    }
}
