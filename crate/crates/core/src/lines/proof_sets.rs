use std::collections::BTreeMap;

use serde::Serialize;

use super::Distance2Census;
use crate::error::Result;
use crate::graph::{long_induced_cycle_vertices, structure_summary, Graph};
use crate::metric::{twin_pairs, DistanceMatrix};
use crate::pointset::PointSet;

/// The hypotheses under which the distance-two counting argument runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub biconnected: bool,
    pub bipartite: bool,
    pub twin_free: bool,
}

impl Hypotheses {
    pub fn of(g: &Graph, d: &DistanceMatrix) -> Self {
        let s = structure_summary(g);
        Hypotheses {
            biconnected: s.is_biconnected,
            bipartite: s.is_bipartite(),
            twin_free: twin_pairs(d).is_empty(),
        }
    }

    pub fn hold(&self) -> bool {
        self.biconnected && self.bipartite && self.twin_free
    }

    pub fn unmet(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if !self.biconnected {
            v.push("not 2-connected");
        }
        if !self.bipartite {
            v.push("not bipartite");
        }
        if !self.twin_free {
            v.push("has twins");
        }
        v
    }
}

/// Vertex classes used to build an injection from vertices to lines.
#[derive(Debug, Clone, Serialize)]
pub struct ProofSets {
    /// Vertices `x` with some `y` at distance two such that the line `xy`
    /// has width above one and `x` dominates `y`.
    pub dominators: PointSet,
    /// For each dominator `x`, the `y` at distance two whose line with `x`
    /// has width above one.
    pub partners: BTreeMap<usize, PointSet>,
    /// Union of all partner sets.
    pub all_partners: PointSet,
    /// Union of the distance-two spheres of the dominators.
    pub dominator_spheres: PointSet,
    /// Vertices on an induced cycle of length at least six.
    pub long_cycle: PointSet,
    /// Everything outside the previous three classes.
    pub remainder: PointSet,
    pub hypotheses: Hypotheses,
}

impl ProofSets {
    pub fn partners_of(&self, x: usize) -> Option<&PointSet> {
        self.partners.get(&x)
    }
}

/// Computes the proof sets of a connected graph. The hypotheses are checked
/// and reported in the result; the sets are computed regardless.
pub fn compute_proof_sets(g: &Graph) -> Result<ProofSets> {
    let d = g.shortest_path_metric()?;
    let census = Distance2Census::build(&d);
    Ok(proof_sets_with(g, &d, &census))
}

pub(crate) fn proof_sets_with(
    g: &Graph,
    d: &DistanceMatrix,
    census: &Distance2Census,
) -> ProofSets {
    let n = g.n();
    let wide = |x: usize, y: usize| census.width(x, y).is_some_and(|w| w > 1);
    let mut dominators = PointSet::empty(n);
    let mut partners = BTreeMap::new();
    for x in 0..n {
        let sphere = d.sphere(x, 2);
        if sphere
            .iter()
            .any(|y| wide(x, y) && g.neighbors(y).is_subset(g.neighbors(x)))
        {
            dominators.insert(x);
            partners.insert(
                x,
                PointSet::from_indices(n, sphere.iter().filter(|&y| wide(x, y))),
            );
        }
    }
    let mut all_partners = PointSet::empty(n);
    let mut dominator_spheres = PointSet::empty(n);
    for (&x, ys) in &partners {
        all_partners.union_with(ys);
        dominator_spheres.union_with(&d.sphere(x, 2));
    }
    let long_cycle = long_induced_cycle_vertices(g);
    let remainder = g
        .vertices()
        .difference(&dominator_spheres.union(&dominators).union(&long_cycle));
    ProofSets {
        dominators,
        partners,
        all_partners,
        dominator_spheres,
        long_cycle,
        remainder,
        hypotheses: Hypotheses::of(g, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c6_sets() {
        let p = compute_proof_sets(&Graph::cycle(6)).unwrap();
        assert!(p.hypotheses.hold());
        assert!(p.dominators.is_empty());
        assert!(p.all_partners.is_empty());
        assert_eq!(p.long_cycle.len(), 6);
        assert!(p.remainder.is_empty());
    }

    #[test]
    fn cube_has_no_dominators() {
        let p = compute_proof_sets(&Graph::hypercube(3)).unwrap();
        assert!(p.hypotheses.hold());
        assert!(p.dominators.is_empty());
    }

    #[test]
    fn c4_reports_twins() {
        let p = compute_proof_sets(&Graph::cycle(4)).unwrap();
        assert!(!p.hypotheses.hold());
        assert_eq!(p.hypotheses.unmet(), vec!["has twins"]);
    }
}
