//! The counting bounds.

use serde_json::json;

use super::{fixture_graph, is_two_metric, metrics, Outcome, EXEMPT_GRAPHS};
use crate::enumerate::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{structure_summary, Graph};
use crate::lines::{construct_g, Distance2Census, Hypotheses};
use crate::metric::{line_census, twin_pairs, DistanceMatrix};
use crate::pointset::PointSet;

/// At least `n` lines, or a universal line.
pub fn check_chen_chvatal(d: &DistanceMatrix) -> Outcome {
    let n = d.len();
    if n < 2 {
        return Outcome::unmet("fewer than two points");
    }
    let c = line_census(d).expect("n >= 2");
    let m = metrics([("n", n), ("ell", c.ell), ("up", c.up)]);
    if c.ell >= n || c.up > 0 {
        Outcome::pass(m)
    } else {
        let lines: Vec<&PointSet> = c.lines.iter().map(|l| &l.points).collect();
        Outcome::fail(json!({ "ell": c.ell, "n": n, "lines": lines }), m)
    }
}

fn same_graph(g: &Graph, form: &str) -> bool {
    canonical_form(g).is_ok_and(|f| f == form)
}

/// Distance-two lines plus bridges reach `n` on connected bipartite graphs
/// other than the 4-cycle and `K_{2,3}`.
pub fn check_br_bound(g: &Graph) -> Outcome {
    let n = g.n();
    if n < 3 {
        return Outcome::unmet("fewer than three vertices");
    }
    let Ok(d) = g.shortest_path_metric() else {
        return Outcome::unmet("disconnected");
    };
    let s = structure_summary(g);
    if !s.is_bipartite() {
        return Outcome::unmet(format!(
            "not bipartite, odd cycle {:?}",
            s.odd_cycle.unwrap_or_default()
        ));
    }
    let census = Distance2Census::build(&d);
    let m = metrics([("n", n), ("ell2", census.ell2), ("br", s.bridge_count)]);
    for (name, h) in [
        ("C4", Graph::cycle(4)),
        ("K23", Graph::complete_bipartite(2, 3)),
    ] {
        if n == h.n() && same_graph(g, &canonical_form(&h).expect("small")) {
            return Outcome::exempt(name, m);
        }
    }
    if census.ell2 + s.bridge_count < n {
        return Outcome::fail(
            json!({ "clause": "bound", "ell2": census.ell2, "br": s.bridge_count, "n": n }),
            m,
        );
    }
    if let Some(w) = twin_deletion_bridges(g, &d, s.is_biconnected) {
        return Outcome::fail(w, m);
    }
    Outcome::pass(m)
}

/// In a 2-connected bipartite graph with twins that is not complete
/// bipartite, deleting one twin `v1` of a pair leaves bridges only of the
/// form `v2 b` with `b` a leaf.
fn twin_deletion_bridges(
    g: &Graph,
    d: &DistanceMatrix,
    biconnected: bool,
) -> Option<serde_json::Value> {
    let n = g.n();
    if !biconnected || is_complete_bipartite(g) {
        return None;
    }
    for (a, b) in twin_pairs(d) {
        for (v1, v2) in [(a, b), (b, a)] {
            let keep = PointSet::from_indices(n, (0..n).filter(|&u| u != v1));
            let (h, map) = g.induced(&keep);
            for (x, y) in structure_summary(&h).bridges {
                let (x, y) = (map[x], map[y]);
                let ok = (x == v2 && h.degree(map.iter().position(|&o| o == y).unwrap()) == 1)
                    || (y == v2 && h.degree(map.iter().position(|&o| o == x).unwrap()) == 1);
                if !ok {
                    return Some(json!({
                        "clause": "twin_deletion_bridges",
                        "removed": v1, "twin": v2, "bridge": [x, y],
                    }));
                }
            }
        }
    }
    None
}

fn is_complete_bipartite(g: &Graph) -> bool {
    let s = structure_summary(g);
    let Some(color) = s.bipartition else {
        return false;
    };
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == (color[u] != color[v])))
}

/// At least `n` distance-two lines on 2-connected bipartite twin-free
/// graphs, witnessed by an explicit injection from vertices to lines.
pub fn check_notwins_bound(g: &Graph) -> Outcome {
    let n = g.n();
    let Ok(d) = g.shortest_path_metric() else {
        return Outcome::unmet("disconnected");
    };
    let h = Hypotheses::of(g, &d);
    if !h.hold() {
        return Outcome::unmet(h.unmet().join(", "));
    }
    let census = Distance2Census::build(&d);
    let mut m = metrics([("n", n), ("ell2", census.ell2)]);
    if census.ell2 < n {
        return Outcome::fail(json!({ "clause": "bound", "ell2": census.ell2, "n": n }), m);
    }
    let a = match construct_g(g) {
        Ok(a) => a,
        Err(Error::Invariant { vertex, detail }) => {
            return Outcome::fail(
                json!({ "clause": "injection", "vertex": vertex, "detail": detail }),
                m,
            );
        }
        Err(e) => {
            return Outcome::fail(json!({ "clause": "injection", "detail": e.to_string() }), m)
        }
    };
    m.insert("injected_lines".into(), a.lines.len() as i64);
    if a.lines.len() > census.ell2 {
        return Outcome::fail(
            json!({ "clause": "injection_exceeds_census", "injected": a.lines.len(), "ell2": census.ell2 }),
            m,
        );
    }
    let wide_ok = a.sets.dominators.difference(&a.sets.long_cycle);
    for u in 0..n {
        if (a.widths[u] > 1) != wide_ok.contains(u) {
            return Outcome::fail(
                json!({
                    "clause": "injection_widths",
                    "vertex": u, "partner": a.partner[u], "width": a.widths[u],
                }),
                m,
            );
        }
    }
    Outcome::pass(m)
}

/// Non-universal lines plus universal pairs reach `n` on 2-metrics.
pub fn check_up_bound(d: &DistanceMatrix) -> Outcome {
    let n = d.len();
    if n < 3 {
        return Outcome::unmet("fewer than three points");
    }
    if !is_two_metric(d) {
        return Outcome::unmet("not a 2-metric");
    }
    let c = line_census(d).expect("n >= 3");
    let m = metrics([
        ("n", n),
        ("ell", c.ell),
        ("ell_star", c.ell_star),
        ("up", c.up),
    ]);
    if c.ell_star + c.up >= n {
        Outcome::pass(m)
    } else {
        Outcome::fail(json!({ "ell_star": c.ell_star, "up": c.up, "n": n }), m)
    }
}

/// The named exempted graph has `ell + br < n` and at least two universal
/// pairs.
pub fn check_figure1_exceptions(name: &str) -> Result<Outcome> {
    if !EXEMPT_GRAPHS.contains(&name) {
        return Err(Error::Parse(format!(
            "{name:?} is not one of the exempted graphs ({})",
            EXEMPT_GRAPHS.join(", ")
        )));
    }
    let g = fixture_graph(name).expect("listed fixture exists");
    let n = g.n();
    let d = g.shortest_path_metric()?;
    let c = line_census(&d)?;
    let br = structure_summary(&g).bridge_count;
    let m = metrics([("n", n), ("ell", c.ell), ("br", br), ("up", c.up)]);
    Ok(if c.ell + br < n && c.up >= 2 {
        Outcome::pass(m)
    } else {
        Outcome::fail(json!({ "ell": c.ell, "br": br, "up": c.up, "n": n }), m)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{fixture, Status};

    #[test]
    fn chen_chvatal_examples() {
        let d = |g: Graph| g.shortest_path_metric().unwrap();
        assert_eq!(check_chen_chvatal(&d(Graph::cycle(4))).status, Status::Pass);
        let c6 = check_chen_chvatal(&d(Graph::cycle(6)));
        assert_eq!(c6.status, Status::Pass);
        assert!(c6.metrics["ell"] >= 6);
    }

    #[test]
    fn br_bound_examples() {
        assert_eq!(check_br_bound(&Graph::path(3)).status, Status::Pass);
        assert_eq!(check_br_bound(&Graph::cycle(4)).status, Status::Exempt);
        assert_eq!(
            check_br_bound(&Graph::complete_bipartite(2, 3)).status,
            Status::Exempt
        );
        let glued = check_br_bound(&fixture("glued_c4").unwrap());
        assert_eq!(glued.status, Status::Pass);
        assert_eq!(glued.metrics["ell2"], 7);
        assert_eq!(
            check_br_bound(&Graph::cycle(5)).status,
            Status::PreconditionUnmet
        );
    }

    #[test]
    fn notwins_examples() {
        assert_eq!(check_notwins_bound(&Graph::cycle(6)).status, Status::Pass);
        assert_eq!(
            check_notwins_bound(&Graph::hypercube(3)).status,
            Status::Pass
        );
        assert_eq!(
            check_notwins_bound(&Graph::cycle(4)).status,
            Status::PreconditionUnmet
        );
    }

    #[test]
    fn up_bound_examples() {
        let c4 = check_up_bound(&Graph::cycle(4).shortest_path_metric().unwrap());
        assert_eq!((c4.status, c4.metrics["up"]), (Status::Pass, 6));
        let k23 = check_up_bound(
            &Graph::complete_bipartite(2, 3)
                .shortest_path_metric()
                .unwrap(),
        );
        assert_eq!((k23.metrics["ell_star"], k23.metrics["up"]), (3, 7));
        let far = DistanceMatrix::from_fn(4, |_, _| 2);
        let o = check_up_bound(&far);
        assert_eq!((o.status, o.metrics["ell_star"]), (Status::Pass, 6));
    }

    #[test]
    fn exempt_graphs_all_pass() {
        for name in EXEMPT_GRAPHS {
            assert_eq!(
                check_figure1_exceptions(name).unwrap().status,
                Status::Pass,
                "{name}"
            );
        }
        assert!(check_figure1_exceptions("C6").is_err());
    }
}
