//! An explicit injection from vertices to distance-two lines.
//!
//! Every vertex `u` is sent to a partner `g(u)` at distance two so that the
//! lines `u g(u)` are pairwise distinct. Choices the construction leaves open
//! are resolved by taking the smallest eligible index, which makes the result
//! reproducible.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::proof_sets::{proof_sets_with, ProofSets};
use super::Distance2Census;
use crate::error::{Error, Result};
use crate::graph::{for_each_induced_cycle, Graph, DEFAULT_CYCLE_MAX_N};
use crate::pointset::PointSet;

pub const CYCLE_RULE_NOTE: &str =
    "induced cycle c_0..c_(m-1): g(c_i) = c_(i+2 mod m); later cycles overwrite shared vertices";

#[derive(Debug, Clone, Serialize)]
pub struct GAssignment {
    /// `partner[u]` is at distance two from `u`.
    pub partner: Vec<usize>,
    /// `lines[u]` is the line through `u` and `partner[u]`.
    pub lines: Vec<PointSet>,
    pub widths: Vec<usize>,
    pub sets: ProofSets,
    pub notes: Vec<String>,
}

/// Builds the partner map for a 2-connected, bipartite, twin-free graph and
/// verifies that the induced line map is injective.
pub fn construct_g(g: &Graph) -> Result<GAssignment> {
    let d = g.shortest_path_metric()?;
    let census = Distance2Census::build(&d);
    let sets = proof_sets_with(g, &d, &census);
    if !sets.hypotheses.hold() {
        return Err(Error::Domain(format!(
            "partner construction needs a 2-connected bipartite twin-free graph: {}",
            sets.hypotheses.unmet().join(", ")
        )));
    }
    let n = g.n();
    let sphere: Vec<PointSet> = (0..n).map(|u| d.sphere(u, 2)).collect();
    let mut partner: Vec<Option<usize>> = vec![None; n];

    for_each_induced_cycle(g, 6, DEFAULT_CYCLE_MAX_N, |c| {
        if c.iter().any(|&v| partner[v].is_none()) {
            let m = c.len();
            for i in 0..m {
                partner[c[i]] = Some(c[(i + 2) % m]);
            }
        }
        ControlFlow::Continue(())
    })?;

    for u in sets.remainder.iter() {
        if let Some(v) = sphere[u].iter().find(|&v| partner[v] != Some(u)) {
            partner[u] = Some(v);
            continue;
        }
        let (z, z2) = meeting_pair(g, u, &sphere[u]).ok_or_else(|| Error::Invariant {
            vertex: u,
            detail: "every vertex at distance two points back and no two of them share a neighbor with it"
                .into(),
        })?;
        partner[u] = Some(z);
        partner[z] = Some(z2);
    }

    let is_partner = |x: usize, u: usize| sets.partners_of(x).is_some_and(|ys| ys.contains(u));
    let middle = sets
        .dominator_spheres
        .difference(&sets.dominators.union(&sets.long_cycle));
    let mut rest = Vec::new();
    for u in middle.iter() {
        let via_dominator = sphere[u]
            .intersection(&sets.dominators)
            .iter()
            .find(|&x| !is_partner(x, u));
        match via_dominator {
            Some(x) => partner[u] = Some(x),
            None => rest.push(u),
        }
    }
    for u in rest {
        let z = sphere[u]
            .iter()
            .find(|&z| !sets.dominators.contains(z) || !is_partner(z, u))
            .ok_or_else(|| Error::Invariant {
                vertex: u,
                detail: "every vertex at distance two dominates it with a wide line".into(),
            })?;
        partner[u] = Some(z);
    }

    for u in sets.dominators.difference(&sets.long_cycle).iter() {
        partner[u] = sets.partners_of(u).and_then(PointSet::first);
    }

    let mut out = Vec::with_capacity(n);
    for (u, p) in partner.iter().enumerate() {
        let p = p.ok_or_else(|| Error::Invariant {
            vertex: u,
            detail: "left without a partner".into(),
        })?;
        if d.get(u, p) != 2 {
            return Err(Error::Invariant {
                vertex: u,
                detail: format!("partner {p} is at distance {}", d.get(u, p)),
            });
        }
        out.push(p);
    }
    let mut lines = Vec::with_capacity(n);
    let mut widths = Vec::with_capacity(n);
    let mut seen = HashSet::new();
    for (u, &p) in out.iter().enumerate() {
        let k = census
            .line_index(u, p)
            .expect("pair at distance two has a line");
        if !seen.insert(k) {
            let v = (0..u)
                .find(|&v| census.line_index(v, out[v]) == Some(k))
                .unwrap();
            return Err(Error::Invariant {
                vertex: u,
                detail: format!("line of ({u},{p}) repeats the line of ({v},{})", out[v]),
            });
        }
        lines.push(census.lines[k].points.clone());
        widths.push(census.lines[k].width());
    }
    Ok(GAssignment {
        partner: out,
        lines,
        widths,
        sets,
        notes: vec![CYCLE_RULE_NOTE.to_string()],
    })
}

/// Lexicographically first `z != z'` in `sphere` with a common neighbor
/// shared with `u`.
fn meeting_pair(g: &Graph, u: usize, sphere: &PointSet) -> Option<(usize, usize)> {
    for z in sphere.iter() {
        let uz = g.neighbors(u).intersection(g.neighbors(z));
        if uz.is_empty() {
            continue;
        }
        if let Some(z2) = sphere
            .iter()
            .find(|&z2| z2 != z && !uz.is_disjoint(g.neighbors(z2)))
        {
            return Some((z, z2));
        }
    }
    None
}
