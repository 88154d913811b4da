mod common;

use std::collections::BTreeSet;

use metric_lines::enumerate::{
    enumerate_graphs, enumerate_two_metrics, unit_distance_graph, Family, FamilySpec,
};
use metric_lines::graph::{
    enumerate_induced_cycles, long_induced_cycle_vertices, structure_summary,
};
use metric_lines::lines::{construct_g, Distance2Census};
use metric_lines::metric::line_census;
use metric_lines::Graph;

fn iso_count(family: Family, n: usize) -> usize {
    let spec = FamilySpec::new(family, n, n);
    match family {
        Family::TwoMetric => enumerate_two_metrics(&spec).unwrap().count(),
        _ => enumerate_graphs(&spec).unwrap().count(),
    }
}

#[test]
fn iso_counts_match_brute_force_up_to_five() {
    for n in 2..=5 {
        let mut connected = BTreeSet::new();
        let mut bipartite = BTreeSet::new();
        let mut all = BTreeSet::new();
        for g in common::labeled_graphs(n) {
            let key = common::brute_canonical(&g);
            all.insert(key);
            if common::is_connected(&g) {
                connected.insert(key);
                if common::is_bipartite(&g) {
                    bipartite.insert(key);
                }
            }
        }
        assert_eq!(
            iso_count(Family::Connected, n),
            connected.len(),
            "connected n={n}"
        );
        assert_eq!(
            iso_count(Family::ConnectedBipartite, n),
            bipartite.len(),
            "bipartite n={n}"
        );
        assert_eq!(
            iso_count(Family::TwoMetric, n),
            all.len(),
            "two_metric n={n}"
        );
    }
}

#[test]
fn iso_streams_are_pairwise_non_isomorphic() {
    let gs: Vec<Graph> = enumerate_graphs(&FamilySpec::new(Family::Connected, 6, 6))
        .unwrap()
        .collect();
    let keys: BTreeSet<u64> = gs.iter().map(common::brute_canonical).collect();
    assert_eq!(keys.len(), gs.len());
    assert_eq!(gs.len(), 112);
}

#[test]
fn labeled_counts() {
    // Connected labeled graphs on 1..=5 vertices: 1, 1, 4, 38, 728.
    let spec = |n| FamilySpec::new(Family::Connected, n, n).labeled();
    let counts: Vec<usize> = (2..=5)
        .map(|n| enumerate_graphs(&spec(n)).unwrap().count())
        .collect();
    assert_eq!(counts, [1, 4, 38, 728]);
    let m = enumerate_two_metrics(&FamilySpec::new(Family::TwoMetric, 5, 5).labeled()).unwrap();
    assert_eq!(m.count(), 1 << 10);
}

#[test]
fn census_matches_definition_on_small_graphs() {
    for g in enumerate_graphs(&FamilySpec::new(Family::Connected, 2, 6)).unwrap() {
        let d = g.shortest_path_metric().unwrap();
        let dd = common::distances(&g);
        assert_eq!(common::rows(&d), dd);
        let c = line_census(&d).unwrap();
        let brute = common::lines(&dd);
        let got: BTreeSet<Vec<usize>> = c.lines.iter().map(|l| l.points.to_vec()).collect();
        assert_eq!(got, brute);
        let n = g.n();
        let universal = brute.contains(&(0..n).collect::<Vec<_>>());
        let up = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| common::line(&dd, x, y).len() == n)
            .count();
        assert_eq!(c.up, up);
        assert_eq!(c.ell_star, brute.len() - usize::from(universal));
    }
}

#[test]
fn census_widths_match_recount() {
    for g in enumerate_graphs(&FamilySpec::new(Family::Connected, 3, 7)).unwrap() {
        let d = g.shortest_path_metric().unwrap();
        let c = Distance2Census::build(&d);
        let brute = common::distance2_lines(&common::distances(&g));
        assert_eq!(c.ell2, brute.len());
        for l in &c.lines {
            assert_eq!(Some(&l.width()), brute.get(&l.points.to_vec()));
            for &(x, y) in &l.generators {
                assert_eq!(c.width(x, y), Some(l.width()));
            }
        }
    }
}

#[test]
fn long_cycle_vertices_match_enumerator_and_subsets() {
    for g in enumerate_graphs(&FamilySpec::new(Family::Connected, 6, 8))
        .unwrap()
        .step_by(7)
    {
        let fast: BTreeSet<usize> = long_induced_cycle_vertices(&g).iter().collect();
        let via_enum: BTreeSet<usize> = enumerate_induced_cycles(&g, 6)
            .unwrap()
            .into_iter()
            .flatten()
            .collect();
        assert_eq!(fast, via_enum);
        assert_eq!(fast, common::long_cycle_vertices(&g));
    }
}

#[test]
fn complete_bipartite_table() {
    for p in 2..=6 {
        for q in p..=6 {
            let c = Distance2Census::build(
                &Graph::complete_bipartite(p, q)
                    .shortest_path_metric()
                    .unwrap(),
            );
            let expect = if (p, q) == (2, 2) {
                1
            } else {
                common::binom2(p) + common::binom2(q)
            };
            assert_eq!(c.ell2, expect, "K{p},{q}");
        }
    }
}

#[test]
fn structure_matches_brute_force() {
    for g in enumerate_graphs(&FamilySpec::new(Family::Connected, 2, 7)).unwrap() {
        let s = structure_summary(&g);
        assert_eq!(s.bridge_count, common::bridges(&g));
        assert_eq!(s.is_bipartite(), common::is_bipartite(&g));
        let cuts: Vec<usize> = (0..g.n())
            .filter(|&v| {
                let keep =
                    metric_lines::PointSet::from_indices(g.n(), (0..g.n()).filter(|&u| u != v));
                common::components(&g.induced(&keep).0) > 1
            })
            .collect();
        assert_eq!(s.cut_vertices, cuts);
    }
}

#[test]
fn injection_never_exceeds_census() {
    for g in enumerate_graphs(&FamilySpec::new(Family::ConnectedBipartite, 4, 8)).unwrap() {
        if let Ok(a) = construct_g(&g) {
            let brute = common::distance2_lines(&common::distances(&g));
            let injected: BTreeSet<Vec<usize>> = a.lines.iter().map(|l| l.to_vec()).collect();
            assert_eq!(injected.len(), g.n());
            assert!(injected.iter().all(|l| brute.contains_key(l)));
            for u in 0..g.n() {
                assert_eq!(common::distances(&g)[u][a.partner[u]], 2);
            }
        }
    }
}

#[test]
fn two_metric_roundtrip_through_unit_graph() {
    for d in enumerate_two_metrics(&FamilySpec::new(Family::TwoMetric, 4, 4).labeled()).unwrap() {
        let g = unit_distance_graph(&d);
        assert_eq!(metric_lines::enumerate::two_metric_of(&g), d);
    }
}
